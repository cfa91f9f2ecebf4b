#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wg {

// General IIR/FIR section in direct form II transposed. Feedback coefficients
// are normalized so the leading coefficient is 1; stability (all poles inside
// the unit circle) is checked at construction.
class LoopFilter {
public:
    LoopFilter();  // identity

    LoopFilter(std::vector<double> feedforward, std::vector<double> feedback);

    static LoopFilter identity();
    static LoopFilter fir(std::vector<double> taps);

    // (1 + z^-1) / 2, the classic string-loop attenuation filter.
    static LoopFilter two_point_average();

    // H(z) = gain * (1 - pole) / (1 - pole z^-1); unit DC gain before `gain`.
    static LoopFilter one_pole_lowpass(double pole, double gain = 1.0);

    double process(double input);
    void reset();

    const std::vector<double>& feedforward() const { return b_; }
    const std::vector<double>& feedback() const { return a_; }
    bool is_identity() const;

    std::complex<double> response(double radians_per_sample) const;
    double magnitude(double radians_per_sample) const;

private:
    std::vector<double> b_;
    std::vector<double> a_;
    std::vector<double> state_;
};

// Phase delay -angle(H(e^jw)) / w in samples at `frequency_hz`, with the
// phase unwrapped from DC so the value is continuous near the evaluation
// frequency. Requires 0 < frequency_hz < sample_rate_hz / 2.
double filter_phase_delay(const LoopFilter& filter, double frequency_hz,
                          double sample_rate_hz);

}  // namespace wg
