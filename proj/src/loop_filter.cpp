#include "wg/loop_filter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wg {

namespace {

// Schur-Cohn recursion: A(z) of degree n has all roots strictly inside the
// unit circle iff every reflection coefficient |k_m| < 1.
bool poles_inside_unit_circle(const std::vector<double>& a) {
    std::vector<double> p(a);
    while (p.size() > 1) {
        const std::size_t n = p.size() - 1;
        const double k = p[n] / p[0];
        if (!(std::abs(k) < 1.0)) return false;
        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i)
            next[i] = (p[i] - k * p[n - i]) / (1.0 - k * k);
        p = std::move(next);
    }
    return true;
}

bool stable(const std::vector<double>& a) {
    if (a.size() <= 1) return true;
    if (a.size() == 2) return std::abs(a[1]) < 1.0;
    if (a.size() == 3) {
        // triangle condition for 1 + a1 z^-1 + a2 z^-2
        const double a1 = a[1], a2 = a[2];
        return std::abs(a2) < 1.0 && std::abs(a1) < 1.0 + a2;
    }
    return poles_inside_unit_circle(a);
}

}  // namespace

LoopFilter::LoopFilter() : b_{1.0}, a_{1.0} {}

LoopFilter::LoopFilter(std::vector<double> feedforward, std::vector<double> feedback)
    : b_(std::move(feedforward)), a_(std::move(feedback)) {
    if (b_.empty()) throw std::invalid_argument("empty feedforward coefficients");
    if (a_.empty()) a_ = {1.0};
    if (a_[0] == 0.0) throw std::invalid_argument("leading feedback coefficient must be nonzero");
    if (a_[0] != 1.0) {
        for (auto& c : b_) c /= a_[0];
        for (auto& c : a_) c /= a_[0];
    }
    if (!stable(a_)) throw std::invalid_argument("unstable filter: pole on or outside the unit circle");
    state_.assign(std::max(b_.size(), a_.size()), 0.0);
}

LoopFilter LoopFilter::identity() { return LoopFilter({1.0}, {1.0}); }

LoopFilter LoopFilter::fir(std::vector<double> taps) {
    return LoopFilter(std::move(taps), {1.0});
}

LoopFilter LoopFilter::two_point_average() { return LoopFilter({0.5, 0.5}, {1.0}); }

LoopFilter LoopFilter::one_pole_lowpass(double pole, double gain) {
    if (!(pole >= 0.0 && pole < 1.0))
        throw std::invalid_argument("one-pole lowpass needs pole in [0, 1)");
    return LoopFilter({gain * (1.0 - pole)}, {1.0, -pole});
}

double LoopFilter::process(double input) {
    // direct form II transposed; the final state slot is a permanent zero
    const std::size_t n = state_.size();
    const double out = b_[0] * input + state_[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double bb = i < b_.size() ? b_[i] * input : 0.0;
        const double aa = i < a_.size() ? a_[i] * out : 0.0;
        state_[i - 1] = bb - aa + state_[i];
    }
    return out;
}

void LoopFilter::reset() { state_.assign(state_.size(), 0.0); }

bool LoopFilter::is_identity() const {
    return b_.size() == 1 && b_[0] == 1.0 && a_.size() == 1;
}

std::complex<double> LoopFilter::response(double w) const {
    const std::complex<double> j(0.0, 1.0);
    std::complex<double> num(0.0, 0.0), den(0.0, 0.0);
    for (std::size_t k = 0; k < b_.size(); ++k)
        num += b_[k] * std::exp(-j * (w * static_cast<double>(k)));
    for (std::size_t k = 0; k < a_.size(); ++k)
        den += a_[k] * std::exp(-j * (w * static_cast<double>(k)));
    return num / den;
}

double LoopFilter::magnitude(double w) const { return std::abs(response(w)); }

double filter_phase_delay(const LoopFilter& filter, double frequency_hz,
                          double sample_rate_hz) {
    if (!(frequency_hz > 0.0 && frequency_hz < sample_rate_hz / 2.0))
        throw std::out_of_range("phase delay frequency must lie in (0, Nyquist)");
    const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate_hz;

    // Unwrap the phase along a grid from DC to w; densify until every step is
    // small enough that no 2*pi ambiguity is possible.
    for (std::size_t steps = 256; steps <= (1u << 20); steps *= 4) {
        double prev = 0.0;
        double unwrapped = 0.0;
        bool ok = true;
        for (std::size_t i = 1; i <= steps; ++i) {
            const double wi = w * static_cast<double>(i) / static_cast<double>(steps);
            const double raw = std::arg(filter.response(wi));
            double d = raw - prev;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
            if (std::abs(d) > std::numbers::pi / 2.0) {
                ok = false;
                break;
            }
            unwrapped += d;
            prev = raw;
        }
        if (ok) return -unwrapped / w;
    }
    throw std::runtime_error("phase unwrapping did not converge");
}

}  // namespace wg
