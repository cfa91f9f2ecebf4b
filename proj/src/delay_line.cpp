#include "wg/delay_line.hpp"

#include <array>
#include <stdexcept>

#include "wg/fractional_delay.hpp"

namespace wg {

namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

DelayLine::DelayLine(std::size_t capacity) : capacity_(capacity) {
    if (capacity < 1) throw std::invalid_argument("DelayLine capacity must be >= 1");
    buffer_.assign(next_pow2(capacity), 0.0);
    mask_ = buffer_.size() - 1;
}

void DelayLine::push(double input) {
    write_index_ = (write_index_ + 1) & mask_;
    buffer_[write_index_] = input;
}

double DelayLine::read(std::size_t delay) const {
    if (delay >= capacity_)
        throw std::out_of_range("DelayLine read delay exceeds capacity");
    return buffer_[(write_index_ - delay) & mask_];
}

double DelayLine::read(const FractionalDelay& interp) const {
    if (interp.span() >= capacity_)
        throw std::out_of_range("interpolator span exceeds delay line capacity");
    std::array<double, 8> taps{};
    const std::size_t n = static_cast<std::size_t>(interp.order()) + 1;
    for (std::size_t k = 0; k < n; ++k)
        taps[k] = buffer_[(write_index_ - interp.base_tap() - k) & mask_];
    return interp.process_fir({taps.data(), n});
}

void DelayLine::clear() {
    buffer_.assign(buffer_.size(), 0.0);
    write_index_ = 0;
}

double delay_line_tick(DelayLine& line, double input, std::size_t read_delay) {
    line.push(input);
    return line.read(read_delay);
}

double delay_line_tick(DelayLine& line, double input, FractionalDelay& interp) {
    if (interp.span() >= line.capacity())
        throw std::out_of_range("interpolator span exceeds delay line capacity");
    line.push(input);
    std::array<double, 8> taps{};
    const std::size_t n = static_cast<std::size_t>(interp.order()) + 1;
    for (std::size_t k = 0; k < n; ++k)
        taps[k] = line.read(interp.base_tap() + k);
    return interp.process({taps.data(), n});
}

}  // namespace wg
