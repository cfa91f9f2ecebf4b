#include "wg/traveling_wave.hpp"

#include <stdexcept>

namespace wg {

TravelingWaveLine::TravelingWaveLine(std::size_t length, StringMedium medium,
                                     double sample_rate)
    : length_(length), medium_(medium), sample_rate_(sample_rate) {
    if (length < 2) throw std::invalid_argument("traveling-wave line needs length >= 2");
    if (!(sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");
    right_.assign(length, 0.0);
    left_.assign(length, 0.0);
}

TravelingWaveLine::TravelingWaveLine(std::size_t length)
    : TravelingWaveLine(length, StringMedium{1.0, 1.0}, 44100.0) {}

std::size_t TravelingWaveLine::index_right(std::size_t position) const {
    if (position >= length_) throw std::out_of_range("string position out of range");
    return (r0_ + position) % length_;
}

std::size_t TravelingWaveLine::index_left(std::size_t position) const {
    if (position >= length_) throw std::out_of_range("string position out of range");
    return (l0_ + position) % length_;
}

double TravelingWaveLine::right(std::size_t position) const {
    return right_[index_right(position)];
}

double TravelingWaveLine::left(std::size_t position) const {
    return left_[index_left(position)];
}

double TravelingWaveLine::velocity_at(std::size_t position) const {
    return right(position) + left(position);
}

void TravelingWaveLine::inject(std::size_t position, double amplitude) {
    right_[index_right(position)] += 0.5 * amplitude;
    left_[index_left(position)] += 0.5 * amplitude;
}

void TravelingWaveLine::inject_rail(Rail rail, std::size_t position, double amplitude) {
    if (rail == Rail::right_going)
        right_[index_right(position)] += amplitude;
    else
        left_[index_left(position)] += amplitude;
}

void TravelingWaveLine::advance(double enter_right_going, double enter_left_going) {
    // v+ rail shifts toward higher positions: new sample enters at position 0
    r0_ = (r0_ + length_ - 1) % length_;
    right_[r0_] = enter_right_going;
    // v- rail shifts toward lower positions: new sample enters at position M-1
    l0_ = (l0_ + 1) % length_;
    left_[(l0_ + length_ - 1) % length_] = enter_left_going;
}

void TravelingWaveLine::clear() {
    right_.assign(length_, 0.0);
    left_.assign(length_, 0.0);
    r0_ = l0_ = 0;
}

}  // namespace wg
