#include "wg/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

Impedance Impedance::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::domain_error("impedance must be strictly positive and finite");
    return Impedance(Tag::finite, value);
}

double Impedance::value() const {
    if (tag_ != Tag::finite)
        throw std::logic_error("symbolic impedance limit has no numeric value");
    return value_;
}

double StringMedium::impedance() const {
    return string_impedance(tension, linear_density).first;
}

double StringMedium::wave_speed() const {
    return string_impedance(tension, linear_density).second;
}

JunctionSpec JunctionSpec::between(Impedance left, Impedance right) {
    return JunctionSpec{left, right, reflection_coefficient(left, right)};
}

std::pair<double, double> string_impedance(double tension, double linear_density) {
    if (!(tension > 0.0) || !std::isfinite(tension))
        throw std::domain_error("string tension must be strictly positive and finite");
    if (!(linear_density > 0.0) || !std::isfinite(linear_density))
        throw std::domain_error("linear density must be strictly positive and finite");
    return {std::sqrt(tension * linear_density), std::sqrt(tension / linear_density)};
}

double tube_impedance(double area_m2, double air_density, double sound_speed) {
    if (!(area_m2 > 0.0)) throw std::domain_error("tube area must be strictly positive");
    if (!(air_density > 0.0)) throw std::domain_error("air density must be strictly positive");
    if (!(sound_speed > 0.0)) throw std::domain_error("sound speed must be strictly positive");
    return air_density * sound_speed / area_m2;
}

double reflection_coefficient(Impedance r1, Impedance r2) {
    if ((r1.is_rigid() && r2.is_rigid()) || (r1.is_free() && r2.is_free()))
        throw std::domain_error("degenerate junction: both sides share the same symbolic limit");
    if (r2.is_rigid()) return 1.0;
    if (r2.is_free()) return -1.0;
    if (r1.is_rigid()) return -1.0;
    if (r1.is_free()) return 1.0;
    const double a = r1.value();
    const double b = r2.value();
    return (b - a) / (a + b);
}

double area_reflection_coefficient(double area_m, double area_next) {
    if (!(area_m > 0.0) || !(area_next > 0.0))
        throw std::domain_error("tube areas must be strictly positive");
    return (area_m - area_next) / (area_m + area_next);
}

TwoPortScatter scatter_two_port(double r, double incident, WaveKind kind) {
    if (!(r >= -1.0 && r <= 1.0))
        throw std::domain_error("reflection coefficient must lie in [-1, 1]");
    if (kind == WaveKind::force_or_pressure)
        return {r * incident, (1.0 + r) * incident};
    return {-r * incident, (1.0 - r) * incident};
}

std::pair<double, double> wave_convert(double impedance, double v_plus, double v_minus) {
    if (!(impedance > 0.0) || !std::isfinite(impedance))
        throw std::domain_error("wave conversion needs a finite positive impedance");
    return {impedance * v_plus, -impedance * v_minus};
}

std::pair<double, double> junction_power(double r, double f_plus, double v_plus) {
    const double incident = f_plus * v_plus;
    const double f2 = (1.0 + r) * f_plus;
    const double v2 = (1.0 - r) * v_plus;
    const double f1r = r * f_plus;
    const double v1r = -r * v_plus;
    return {incident, f2 * v2 - f1r * v1r};
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 1) return values[0];
    if (n == 2) return values[0] + values[1];
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

NPortScatter scatter_nport_equal(std::span<const double> incoming) {
    const std::size_t n = incoming.size();
    if (n < 2) throw std::invalid_argument("scattering junction needs at least 2 ports");
    const double v_j = (2.0 / static_cast<double>(n)) * pairwise_sum(incoming);
    NPortScatter out;
    out.junction_velocity = v_j;
    out.outgoing.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.outgoing[i] = v_j - incoming[i];
    return out;
}

}  // namespace wg
