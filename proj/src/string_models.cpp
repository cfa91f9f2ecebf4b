#include "wg/string_models.hpp"

#include <stdexcept>

#include "wg/noise.hpp"

namespace wg {

double IdealString::tick(std::optional<Injection> inject, std::size_t pickup) {
    if (inject) line_.inject(inject->position, inject->amplitude);
    const double out = line_.velocity_at(pickup);
    const double to_bridge = line_.arriving_at_right_end();
    const double to_nut = line_.arriving_at_left_end();
    line_.advance(-to_nut, -to_bridge);
    return out;
}

double ideal_string_tick(IdealString& string, std::optional<Injection> inject,
                         std::size_t pickup) {
    return string.tick(inject, pickup);
}

std::vector<double> Excitation::render() const {
    switch (kind) {
        case Kind::impulse:
            return {amplitude};
        case Kind::noise_burst: {
            std::vector<double> out = noise_vector(seed, length);
            for (auto& x : out) x *= amplitude;
            return out;
        }
        case Kind::pluck_ramp: {
            // triangular pluck: linear rise to the midpoint, linear release
            if (length < 2) return {amplitude};
            std::vector<double> out(length);
            const std::size_t mid = length / 2;
            for (std::size_t n = 0; n < length; ++n) {
                const double up = static_cast<double>(n) / static_cast<double>(mid);
                const double down = static_cast<double>(length - n) /
                                    static_cast<double>(length - mid);
                out[n] = amplitude * (n < mid ? up : down);
            }
            return out;
        }
        case Kind::samples:
            return payload;
    }
    return {};
}

TerminatedString::TerminatedString(std::size_t length, TerminationFilter bridge,
                                   TerminationFilter nut)
    : line_(length), bridge_(std::move(bridge)), nut_(std::move(nut)) {}

TerminatedString::TerminatedString(std::size_t length, StringMedium medium,
                                   double sample_rate, TerminationFilter bridge,
                                   TerminationFilter nut)
    : line_(length, medium, sample_rate),
      bridge_(std::move(bridge)),
      nut_(std::move(nut)) {}

void TerminatedString::advance_reflect() {
    const double to_bridge = line_.arriving_at_right_end();
    const double to_nut = line_.arriving_at_left_end();
    line_.advance(nut_.reflect(to_nut), bridge_.reflect(to_bridge));
}

double TerminatedString::tick(double excitation, std::size_t position, std::size_t pickup) {
    if (excitation != 0.0) line_.inject(position, excitation);
    const double out = line_.velocity_at(pickup);
    advance_reflect();
    return out;
}

double TerminatedString::tick_rail(double excitation, std::size_t position,
                                   std::size_t pickup) {
    if (excitation != 0.0) line_.inject_rail(Rail::right_going, position, excitation);
    const double out = line_.right(pickup);
    advance_reflect();
    return out;
}

std::vector<double> terminated_string_render(TerminatedString& string,
                                             const Excitation& excitation,
                                             std::size_t inject_position,
                                             std::size_t pickup,
                                             std::size_t n_samples) {
    const std::vector<double> exc = excitation.render();
    std::vector<double> out(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const double e = n < exc.size() ? exc[n] : 0.0;
        out[n] = string.tick(e, inject_position, pickup);
    }
    return out;
}

}  // namespace wg
