#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wg {

// Lagrange FIR interpolation coefficients for a delay inside the centered
// validity window [(order-1)/2, (order+1)/2]. Coefficients sum to 1.
std::vector<double> lagrange_coefficients(int order, double delay);

// First-order allpass coefficient a = (1 - d) / (1 + d) for d in (0, 1].
// The filter (a + z^-1) / (1 + a z^-1) has unit magnitude everywhere and a
// low-frequency phase delay of about d samples.
double allpass_coefficient(double fractional_delay);

// A fractional-delay read head for a DelayLine. Configured for a fixed total
// delay; the integer part selects the base tap, the fractional part is
// realized either by a centered Lagrange FIR kernel or a first-order allpass.
class FractionalDelay {
public:
    enum class Kind { lagrange, allpass };

    // Total delay split as base + kernel fraction; requires
    // total_delay >= (order-1)/2 so the base tap is not negative.
    static FractionalDelay lagrange(int order, double total_delay);

    // Total delay split as base + d with d in (0, 1]; requires total_delay > 0.
    static FractionalDelay allpass(double total_delay);

    // Zero-delay pass-through (order-1 Lagrange at delay 0).
    static FractionalDelay identity() { return lagrange(1, 0.0); }

    Kind kind() const { return kind_; }
    int order() const { return order_; }
    double delay() const { return delay_; }

    // First integer tap; the kernel spans [base_tap, base_tap + order].
    std::size_t base_tap() const { return base_; }
    std::size_t span() const { return base_ + static_cast<std::size_t>(order_); }

    std::span<const double> coefficients() const { return coefficients_; }

    // Applies the kernel to taps[k] = x[n - (base_tap + k)]. The allpass kind
    // uses taps[0] only and keeps one sample of filter state.
    double process(std::span<const double> taps);

    // Stateless FIR evaluation; valid for the lagrange kind only.
    double process_fir(std::span<const double> taps) const;

    void reset_state();

private:
    FractionalDelay() = default;

    Kind kind_ = Kind::lagrange;
    int order_ = 1;
    double delay_ = 0.0;
    std::size_t base_ = 0;
    std::vector<double> coefficients_;
    double ap_coeff_ = 0.0;
    double ap_x1_ = 0.0;
    double ap_y1_ = 0.0;
};

}  // namespace wg
