#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wg/loop_filter.hpp"
#include "wg/traveling_wave.hpp"

namespace wg {

enum class Polarity { inverting, non_inverting };

// Reflection at a string end: filter plus sign. An inverting identity is the
// rigid-termination -1 for velocity waves.
struct TerminationFilter {
    LoopFilter filter;
    Polarity polarity = Polarity::inverting;

    static TerminationFilter rigid() { return {LoopFilter::identity(), Polarity::inverting}; }

    double reflect(double incoming) {
        const double y = filter.process(incoming);
        return polarity == Polarity::inverting ? -y : y;
    }
};

struct Injection {
    std::size_t position;
    double amplitude;
};

// Lossless string with rigid (-1) terminations at both ends.
class IdealString {
public:
    explicit IdealString(std::size_t length) : line_(length) {}
    IdealString(std::size_t length, StringMedium medium, double sample_rate)
        : line_(length, medium, sample_rate) {}

    TravelingWaveLine& line() { return line_; }
    const TravelingWaveLine& line() const { return line_; }

    // Injects (optionally), reads the velocity at the pickup, then advances
    // one tick with rigid end reflections.
    double tick(std::optional<Injection> inject, std::size_t pickup);

private:
    TravelingWaveLine line_;
};

double ideal_string_tick(IdealString& string, std::optional<Injection> inject,
                         std::size_t pickup);

// Finite-support excitations shared by the string and loop models.
struct Excitation {
    enum class Kind { noise_burst, pluck_ramp, impulse, samples };

    Kind kind = Kind::impulse;
    std::size_t length = 1;
    std::uint32_t seed = 0;
    double amplitude = 1.0;
    std::vector<double> payload;  // kind == samples

    // Expanded sample sequence (zero past its finite support).
    std::vector<double> render() const;
};

// String with filtered terminations at the nut (left) and bridge (right).
class TerminatedString {
public:
    TerminatedString(std::size_t length, TerminationFilter bridge, TerminationFilter nut);
    TerminatedString(std::size_t length, StringMedium medium, double sample_rate,
                     TerminationFilter bridge, TerminationFilter nut);

    TravelingWaveLine& line() { return line_; }

    // Injects one excitation sample at `position`, reads the pickup, advances.
    double tick(double excitation, std::size_t position, std::size_t pickup);

    // Rail-only drive of the v+ rail; pickup reads the v+ rail only. Exposes
    // the loop structure directly (the commuted/filtered-delay-loop view).
    double tick_rail(double excitation, std::size_t position, std::size_t pickup);

private:
    void advance_reflect();

    TravelingWaveLine line_;
    TerminationFilter bridge_;
    TerminationFilter nut_;
};

// Renders n_samples with the excitation injected at `inject_position`.
std::vector<double> terminated_string_render(TerminatedString& string,
                                             const Excitation& excitation,
                                             std::size_t inject_position,
                                             std::size_t pickup,
                                             std::size_t n_samples);

}  // namespace wg
