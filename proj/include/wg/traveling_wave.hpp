#pragma once

#include <cstddef>
#include <vector>

#include "wg/scattering.hpp"

namespace wg {

enum class Rail { right_going, left_going };

// Bidirectional pair of sample rails holding the v+ / v- traveling-wave
// components over M spatial samples. The physical variable at position m is
// right(m) + left(m). advance() moves every sample one spatial step and feeds
// the two rail entry points, so a full round trip is exactly 2M ticks.
class TravelingWaveLine {
public:
    TravelingWaveLine(std::size_t length, StringMedium medium, double sample_rate);
    explicit TravelingWaveLine(std::size_t length);  // unit medium, fs = 44100

    std::size_t length() const { return length_; }
    const StringMedium& medium() const { return medium_; }
    double temporal_step() const { return 1.0 / sample_rate_; }
    double spatial_step() const { return medium_.wave_speed() / sample_rate_; }

    double right(std::size_t position) const;  // v+ at position
    double left(std::size_t position) const;   // v- at position
    double velocity_at(std::size_t position) const;

    // Superimposes amplitude/2 onto each rail at the position.
    void inject(std::size_t position, double amplitude);
    void inject_rail(Rail rail, std::size_t position, double amplitude);

    // Samples about to leave the line at each end this tick.
    double arriving_at_right_end() const { return right(length_ - 1); }
    double arriving_at_left_end() const { return left(0); }

    // Shifts both rails one step and feeds the entry points: enter_right_going
    // appears at position 0 of the v+ rail, enter_left_going at position M-1
    // of the v- rail.
    void advance(double enter_right_going, double enter_left_going);

    void clear();

private:
    std::size_t index_right(std::size_t position) const;
    std::size_t index_left(std::size_t position) const;

    std::size_t length_;
    StringMedium medium_;
    double sample_rate_;
    std::vector<double> right_;
    std::vector<double> left_;
    std::size_t r0_ = 0;
    std::size_t l0_ = 0;
};

}  // namespace wg
