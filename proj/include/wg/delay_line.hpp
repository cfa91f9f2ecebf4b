#pragma once

#include <cstddef>
#include <vector>

namespace wg {

class FractionalDelay;

// Single-writer circular delay line. Reading at delay d returns the sample
// written d ticks ago; d = 0 is the sample written this tick. The internal
// buffer is rounded up to a power of two, the semantic capacity is exact.
class DelayLine {
public:
    explicit DelayLine(std::size_t capacity);

    std::size_t capacity() const { return capacity_; }

    // Writes one sample and advances the line by one tick.
    void push(double input);

    // Sample written `delay` ticks ago, relative to the most recent push.
    double read(std::size_t delay) const;

    // Interpolated read at the interpolator's configured delay.
    double read(const FractionalDelay& interp) const;

    void clear();

private:
    std::vector<double> buffer_;
    std::size_t mask_;
    std::size_t capacity_;
    std::size_t write_index_ = 0;
};

// Writes `input`, returns the sample at the integer delay, advances one tick.
double delay_line_tick(DelayLine& line, double input, std::size_t read_delay);

// Writes `input`, returns the interpolated sample at the interpolator's total
// delay, advances one tick. Allpass interpolators carry filter state and are
// mutated by the call.
double delay_line_tick(DelayLine& line, double input, FractionalDelay& interp);

}  // namespace wg
