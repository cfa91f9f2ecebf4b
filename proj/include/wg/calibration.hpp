#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wg/fdl.hpp"
#include "wg/loop_filter.hpp"

namespace wg {

// Fundamental frequency by autocorrelation over the 50..2000 Hz lag range:
// integer peak, parabolic interpolation, then a windowed-sinc local refine of
// the correlation maximum. Throws unvoiced_error when the normalized peak
// falls below 0.3.
double estimate_f0(std::span<const double> signal, double sample_rate);

// One exponentially damped sinusoid: amplitude * exp(-damping t) *
// cos(2 pi frequency t + phase).
struct ModalComponent {
    double amplitude = 0.0;    // A_n >= 0
    double frequency_hz = 0.0; // f_n
    double damping = 0.0;      // alpha_n, 1/s
    double phase = 0.0;        // phi_n, rad
};

std::vector<double> synthesize_modes(std::span<const ModalComponent> modes,
                                     double sample_rate, std::size_t n_samples);

// Spectral peak picking (Hann 4096, 75% overlap, x2 zero padding, quadratic
// bin interpolation) with per-partial log-amplitude decay tracking.
// Returns up to max_modes components, strongest first; empty when nothing
// rises above the noise floor.
std::vector<ModalComponent> modal_fit(std::span<const double> signal, double sample_rate,
                                      std::size_t max_modes);

struct PartialDecay {
    double frequency_hz;
    double alpha_per_s;  // >= 0
};

struct LossFilterFit {
    LoopFilter filter;   // one-pole lowpass (identity when pole = 0)
    double gain;         // per-pass scalar
    double pole;
    double residual;     // rms log-magnitude error over the partials
};

// Per-pass target gains g_k = exp(-alpha_k N / fs) fitted by least squares in
// the log-magnitude domain over the {one-pole lowpass x gain} family.
LossFilterFit loss_filter_fit(std::span<const PartialDecay> partial_decays,
                              double loop_length_samples, double sample_rate);

struct ParamBounds {
    double lo, hi;
};

struct GaConfig {
    std::size_t population = 64;
    std::size_t generations = 60;
    ParamBounds f0_bounds{100.0, 1000.0};
    ParamBounds gain_bounds{0.9, 1.0};
    ParamBounds pole_bounds{0.0, 0.9};
    double mutation_rate = 0.3;
    double crossover_rate = 0.7;
    std::size_t harmonic_count = 12;
    enum class Weighting { flat, db_domain } weighting = Weighting::db_domain;
    std::uint32_t seed = 1;
};

struct GaResult {
    double f0;
    double loop_gain;
    double pole;
    double best_fitness;
    std::vector<double> fitness_trace;  // per-generation best, non-increasing
};

// Harmonic magnitudes at k * f0 of `signal`, measured with the shared STFT
// front end; the GA fitness compares target and candidate over these.
std::vector<double> harmonic_magnitudes(std::span<const double> signal,
                                        double sample_rate, double f0,
                                        std::size_t harmonic_count);

double spectral_fitness(std::span<const double> target_mags,
                        std::span<const double> candidate_mags,
                        GaConfig::Weighting weighting);

// Generational GA (tournament of 3, uniform crossover, Gaussian mutation with
// sigma = 10% of each bound width, elitism of 1) matching a filtered delay
// loop to the target's harmonic spectrum. Deterministic for a fixed seed.
GaResult ga_optimize(std::span<const double> target, double sample_rate,
                     const GaConfig& config, const FdlParams& render_template);

}  // namespace wg
