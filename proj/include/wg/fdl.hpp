#pragma once

#include <vector>

#include "wg/delay_line.hpp"
#include "wg/fractional_delay.hpp"
#include "wg/loop_filter.hpp"
#include "wg/string_models.hpp"

namespace wg {

// In-loop fractional-delay stage with its own one-sample-per-tick history.
class FractionalStage {
public:
    FractionalStage(FractionalDelay::Kind kind, int order, double fraction);

    double process(double input);
    double nominal_delay() const { return fraction_; }
    void reset();

private:
    FractionalDelay::Kind kind_;
    double fraction_;
    std::vector<double> coeffs_;
    std::vector<double> history_;
    double ap_coeff_ = 0.0;
    double ap_x1_ = 0.0;
    double ap_y1_ = 0.0;
};

struct FdlTuning {
    std::size_t integer_delay;
    double fractional_delay;  // inside the interpolator's valid window

    double total() const { return static_cast<double>(integer_delay) + fractional_delay; }
};

// Splits fs/f0 - phase_delay(loss at f0) into an integer delay plus a
// fraction the chosen interpolator can realize.
FdlTuning fdl_tune(double sample_rate, double f0, const LoopFilter& loss_filter,
                   FractionalDelay::Kind interp_kind = FractionalDelay::Kind::lagrange,
                   int interp_order = 3);

// Filtered delay loop: delay -> loss filter -> gain -> fractional delay ->
// feedback, excitation summed at the loop input. The output tap is the loop
// input signal.
struct FdlParams {
    double sample_rate = 44100.0;
    double f0 = 220.0;
    LoopFilter loss_filter = LoopFilter::two_point_average();
    double loop_gain = 0.995;
    FractionalDelay::Kind interp_kind = FractionalDelay::Kind::lagrange;
    int interp_order = 3;
    bool compensate_fraction = true;  // integer-rounded tuning when false
    Excitation excitation{Excitation::Kind::noise_burst, 0 /* 0 -> loop length */, 1, 1.0, {}};
    double duration = 1.0;
};

class FdlSynth {
public:
    explicit FdlSynth(const FdlParams& params);

    double tick(double excitation_sample);
    std::vector<double> render();

    const FdlTuning& tuning() const { return tuning_; }

private:
    FdlParams params_;
    FdlTuning tuning_;
    DelayLine delay_;
    LoopFilter loss_;
    FractionalStage interp_;
};

std::vector<double> fdl_render(const FdlParams& params);

std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

enum class CommutedOrder { e_string_body, ebody_string };

// Pluck -> string -> body as a cascade of convolutions; the two orderings are
// interchangeable because every element is linear and time-invariant.
std::vector<double> commuted_render(std::span<const double> excitation,
                                    const FdlParams& string_params,
                                    std::span<const double> body_ir,
                                    CommutedOrder order);

}  // namespace wg
