#include "wg/fdl.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

FractionalStage::FractionalStage(FractionalDelay::Kind kind, int order, double fraction)
    : kind_(kind), fraction_(fraction) {
    if (kind == FractionalDelay::Kind::lagrange) {
        coeffs_ = lagrange_coefficients(order, fraction);
        history_.assign(coeffs_.size(), 0.0);
    } else {
        ap_coeff_ = allpass_coefficient(fraction);
    }
}

double FractionalStage::process(double input) {
    if (kind_ == FractionalDelay::Kind::lagrange) {
        for (std::size_t k = history_.size() - 1; k > 0; --k) history_[k] = history_[k - 1];
        history_[0] = input;
        double acc = 0.0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) acc += coeffs_[k] * history_[k];
        return acc;
    }
    const double y = ap_coeff_ * input + ap_x1_ - ap_coeff_ * ap_y1_;
    ap_x1_ = input;
    ap_y1_ = y;
    return y;
}

void FractionalStage::reset() {
    history_.assign(history_.size(), 0.0);
    ap_x1_ = ap_y1_ = 0.0;
}

FdlTuning fdl_tune(double sample_rate, double f0, const LoopFilter& loss_filter,
                   FractionalDelay::Kind interp_kind, int interp_order) {
    if (!(f0 > 0.0 && f0 < sample_rate / 2.0))
        throw std::out_of_range("f0 must lie in (0, Nyquist)");
    const double phase = filter_phase_delay(loss_filter, f0, sample_rate);
    const double total = sample_rate / f0 - phase;
    if (total < 2.0)
        throw std::out_of_range("loop unrealizable: fs/f0 minus filter phase delay below 2 samples");

    double half = 0.0;
    if (interp_kind == FractionalDelay::Kind::lagrange)
        half = (interp_order - 1) / 2.0;

    double integer = std::floor(total - half);
    double fraction = total - integer;
    if (interp_kind == FractionalDelay::Kind::allpass && fraction <= 0.0) {
        integer -= 1.0;
        fraction += 1.0;
    }
    if (integer < 1.0)
        throw std::out_of_range("loop unrealizable: interpolator leaves no room for the delay line");
    return {static_cast<std::size_t>(integer), fraction};
}

namespace {

FdlTuning tune_for(const FdlParams& p) {
    FdlTuning t = fdl_tune(p.sample_rate, p.f0, p.loss_filter, p.interp_kind, p.interp_order);
    if (!p.compensate_fraction) {
        // round to the nearest whole loop and drop the fractional stage
        const double rounded = std::round(t.total());
        return {static_cast<std::size_t>(rounded), 0.0};
    }
    return t;
}

}  // namespace

FdlSynth::FdlSynth(const FdlParams& params)
    : params_(params),
      tuning_(tune_for(params)),
      delay_(std::max<std::size_t>(tuning_.integer_delay, 1)),
      loss_(params.loss_filter),
      interp_(params.compensate_fraction ? params.interp_kind
                                         : FractionalDelay::Kind::lagrange,
              params.compensate_fraction ? params.interp_order : 1,
              tuning_.fractional_delay) {
    loss_.reset();
}

double FdlSynth::tick(double excitation_sample) {
    const double delayed = delay_.read(tuning_.integer_delay - 1);
    const double filtered = loss_.process(delayed);
    const double feedback = interp_.process(params_.loop_gain * filtered);
    const double x = excitation_sample + feedback;
    delay_.push(x);
    return x;
}

std::vector<double> FdlSynth::render() {
    Excitation exc = params_.excitation;
    if (exc.kind == Excitation::Kind::noise_burst) {
        // noise support never exceeds the loop length (the wavetable fill)
        if (exc.length == 0 || exc.length > tuning_.integer_delay)
            exc.length = tuning_.integer_delay;
    }
    const std::vector<double> e = exc.render();
    const std::size_t n_samples =
        static_cast<std::size_t>(std::llround(params_.duration * params_.sample_rate));
    std::vector<double> out(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n)
        out[n] = tick(n < e.size() ? e[n] : 0.0);
    return out;
}

std::vector<double> fdl_render(const FdlParams& params) {
    FdlSynth synth(params);
    return synth.render();
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("convolution of an empty array");
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> commuted_render(std::span<const double> excitation,
                                    const FdlParams& string_params,
                                    std::span<const double> body_ir,
                                    CommutedOrder order) {
    if (excitation.empty() || body_ir.empty())
        throw std::invalid_argument("commuted render requires non-empty excitation and body");
    const std::size_t n_samples = static_cast<std::size_t>(
        std::llround(string_params.duration * string_params.sample_rate));

    FdlParams p = string_params;
    p.excitation.kind = Excitation::Kind::samples;

    if (order == CommutedOrder::e_string_body) {
        p.excitation.payload.assign(excitation.begin(), excitation.end());
        const std::vector<double> s = fdl_render(p);
        std::vector<double> y = convolve(s, body_ir);
        y.resize(n_samples);
        return y;
    }
    const std::vector<double> pluck_response = convolve(excitation, body_ir);
    p.excitation.payload = pluck_response;
    std::vector<double> y = fdl_render(p);
    y.resize(n_samples);
    return y;
}

}  // namespace wg
