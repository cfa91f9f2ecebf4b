#include "wg/bowed_string.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wg {

FrictionCurve FrictionCurve::analytic(double capture_width) {
    if (!(capture_width >= 0.0))
        throw std::domain_error("capture width must be nonnegative");
    FrictionCurve c;
    c.width_ = capture_width;
    return c;
}

FrictionCurve FrictionCurve::from_table(std::vector<double> v_delta, std::vector<double> rho) {
    if (v_delta.size() != rho.size() || v_delta.size() < 2)
        throw std::invalid_argument("friction table needs >= 2 matching samples");
    if (!std::is_sorted(v_delta.begin(), v_delta.end()))
        throw std::invalid_argument("friction table abscissae must be ascending");
    for (double r : rho)
        if (!(r >= 0.0 && r <= 1.0))
            throw std::domain_error("friction table values must lie in [0, 1]");
    FrictionCurve c;
    c.table_ = true;
    c.xs_ = std::move(v_delta);
    c.ys_ = std::move(rho);
    return c;
}

double FrictionCurve::operator()(double v_delta) const {
    if (table_) {
        if (v_delta <= xs_.front()) return ys_.front();
        if (v_delta >= xs_.back()) return ys_.back();
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), v_delta);
        const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        const double t = (v_delta - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
        return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
    }
    const double av = std::abs(v_delta);
    if (av <= width_) return width_ > 0.0 ? 1.0 : 0.0;
    const double ratio = width_ / av;
    return ratio * ratio;
}

namespace {

std::size_t left_length(std::size_t length, double position) {
    if (!(position > 0.0 && position < 1.0))
        throw std::out_of_range("bow position must lie strictly inside (0, 1)");
    if (length < 4) throw std::invalid_argument("bowed string needs length >= 4");
    const double ideal = position * static_cast<double>(length);
    auto ml = static_cast<std::size_t>(std::llround(ideal));
    ml = std::clamp<std::size_t>(ml, 2, length - 2);
    return ml;
}

}  // namespace

BowedString::BowedString(std::size_t length, const BowParams& bow)
    : BowedString(length, bow,
                  FrictionCurve::analytic(
                      bow.friction_slope > 0.0 ? bow.bow_force / bow.friction_slope : 0.0)) {}

BowedString::BowedString(std::size_t length, const BowParams& bow, FrictionCurve curve)
    : bow_(bow),
      curve_(std::move(curve)),
      left_(left_length(length, bow.bow_position)),
      right_(length - left_length(length, bow.bow_position)),
      pickup_(right_.length() - 2) {}

double BowedString::tick() {
    const double from_left = left_.arriving_at_right_end();   // v+ into the bow
    const double from_right = right_.arriving_at_left_end();  // v- into the bow
    const double v_delta = bow_.bow_velocity - (from_left + from_right);
    const double rho = bow_.bow_force > 0.0 ? curve_(v_delta) : 0.0;
    const double correction = rho * v_delta;

    junction_velocity_ = from_left + from_right + correction;

    const double at_nut = left_.arriving_at_left_end();
    const double at_bridge = right_.arriving_at_right_end();
    left_.advance(-at_nut, from_right + correction);
    right_.advance(from_left + correction, -at_bridge);
    return right_.velocity_at(pickup_);
}

std::vector<double> BowedString::render(std::size_t n_samples) {
    std::vector<double> out(n_samples);
    for (auto& x : out) x = tick();
    return out;
}

}  // namespace wg
