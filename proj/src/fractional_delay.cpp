#include "wg/fractional_delay.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wg {

std::vector<double> lagrange_coefficients(int order, double delay) {
    if (order < 1 || order > 5)
        throw std::out_of_range("lagrange order must be in 1..5");
    const double lo = (order - 1) / 2.0;
    const double hi = (order + 1) / 2.0;
    if (!(delay >= lo && delay <= hi)) {
        std::ostringstream msg;
        msg << "lagrange delay " << delay << " outside valid interval [" << lo
            << ", " << hi << "] for order " << order;
        throw std::out_of_range(msg.str());
    }
    std::vector<double> h(static_cast<std::size_t>(order) + 1, 1.0);
    for (int k = 0; k <= order; ++k) {
        for (int m = 0; m <= order; ++m) {
            if (m == k) continue;
            h[static_cast<std::size_t>(k)] *= (delay - m) / (k - m);
        }
    }
    return h;
}

double allpass_coefficient(double fractional_delay) {
    if (!(fractional_delay > 0.0 && fractional_delay <= 1.0))
        throw std::out_of_range(
            "allpass fractional delay must lie in (0, 1]; absorb the integer "
            "part into the delay line");
    return (1.0 - fractional_delay) / (1.0 + fractional_delay);
}

FractionalDelay FractionalDelay::lagrange(int order, double total_delay) {
    const double half = (order - 1) / 2.0;
    if (total_delay < half)
        throw std::out_of_range("total delay too small for centered lagrange kernel");
    double base = std::floor(total_delay - half);
    double frac = total_delay - base;
    // land the fraction inside [half, half + 1]
    if (frac < half) {
        base -= 1.0;
        frac += 1.0;
    }
    FractionalDelay fd;
    fd.kind_ = Kind::lagrange;
    fd.order_ = order;
    fd.delay_ = total_delay;
    fd.base_ = static_cast<std::size_t>(base);
    fd.coefficients_ = lagrange_coefficients(order, frac);
    return fd;
}

FractionalDelay FractionalDelay::allpass(double total_delay) {
    if (total_delay <= 0.0)
        throw std::out_of_range("allpass total delay must be positive");
    double base = std::ceil(total_delay) - 1.0;
    double frac = total_delay - base;  // in (0, 1]
    FractionalDelay fd;
    fd.kind_ = Kind::allpass;
    fd.order_ = 1;
    fd.delay_ = total_delay;
    fd.base_ = static_cast<std::size_t>(base);
    fd.ap_coeff_ = allpass_coefficient(frac);
    fd.coefficients_ = {fd.ap_coeff_};
    return fd;
}

double FractionalDelay::process(std::span<const double> taps) {
    if (kind_ == Kind::lagrange) return process_fir(taps);
    // y[n] = a x[n] + x[n-1] - a y[n-1], applied to the base-tap stream
    const double x = taps[0];
    const double y = ap_coeff_ * x + ap_x1_ - ap_coeff_ * ap_y1_;
    ap_x1_ = x;
    ap_y1_ = y;
    return y;
}

double FractionalDelay::process_fir(std::span<const double> taps) const {
    if (kind_ != Kind::lagrange)
        throw std::logic_error("stateless read requires a lagrange interpolator");
    double acc = 0.0;
    for (std::size_t k = 0; k < coefficients_.size(); ++k) acc += coefficients_[k] * taps[k];
    return acc;
}

void FractionalDelay::reset_state() {
    ap_x1_ = 0.0;
    ap_y1_ = 0.0;
}

}  // namespace wg
