#include "wg/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wg/errors.hpp"
#include "wg/spectral.hpp"

namespace wg {

namespace {

constexpr double kMinPitchHz = 50.0;
constexpr double kMaxPitchHz = 2000.0;
constexpr double kVoicingThreshold = 0.3;

// biased autocorrelation r[tau] = sum x[n] x[n+tau] / N
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
    std::vector<double> r(max_lag + 1, 0.0);
    const std::size_t n = x.size();
    for (std::size_t tau = 0; tau <= max_lag; ++tau) {
        double acc = 0.0;
        for (std::size_t i = 0; i + tau < n; ++i) acc += x[i] * x[i + tau];
        r[tau] = acc / static_cast<double>(n);
    }
    return r;
}

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

// windowed-sinc interpolation of the tabulated autocorrelation
double acf_at(const std::vector<double>& r, double tau) {
    constexpr int kHalf = 8;
    const auto center = static_cast<long>(std::lround(tau));
    double acc = 0.0;
    for (long k = center - kHalf; k <= center + kHalf; ++k) {
        if (k < 0 || k >= static_cast<long>(r.size())) continue;
        const double d = tau - static_cast<double>(k);
        const double w = 0.5 + 0.5 * std::cos(std::numbers::pi * d / (kHalf + 1));
        acc += r[static_cast<std::size_t>(k)] * sinc(d) * w;
    }
    return acc;
}

double golden_max(const std::vector<double>& r, double lo, double hi) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = acf_at(r, c), fd = acf_at(r, d);
    while (b - a > 1e-4) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = acf_at(r, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = acf_at(r, d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double estimate_f0(std::span<const double> signal, double sample_rate) {
    const auto min_lag = static_cast<std::size_t>(std::floor(sample_rate / kMaxPitchHz));
    const auto max_lag = static_cast<std::size_t>(std::ceil(sample_rate / kMinPitchHz));
    if (signal.size() < 4 * max_lag)
        throw std::invalid_argument("signal shorter than four periods of the lowest pitch");

    const std::vector<double> r = autocorrelation(signal, max_lag + 1);
    if (!(r[0] > 0.0)) throw unvoiced_error("signal is silent");

    std::size_t best = 0;
    for (std::size_t tau = std::max<std::size_t>(min_lag, 2); tau <= max_lag; ++tau) {
        if (r[tau] > r[tau - 1] && r[tau] >= r[tau + 1]) {  // local maximum
            if (best == 0 || r[tau] > r[best]) best = tau;
        }
    }
    if (best == 0 || r[best] / r[0] < kVoicingThreshold)
        throw unvoiced_error("no autocorrelation peak above the voicing threshold");

    // parabolic interpolation of the peak lag
    const double y0 = r[best - 1], y1 = r[best], y2 = r[best + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    double lag = static_cast<double>(best);
    if (denom != 0.0) lag += 0.5 * (y0 - y2) / denom;

    // local refine of the band-limited correlation around the parabolic guess
    lag = golden_max(r, lag - 1.0, lag + 1.0);
    return sample_rate / lag;
}

std::vector<double> synthesize_modes(std::span<const ModalComponent> modes,
                                     double sample_rate, std::size_t n_samples) {
    std::vector<double> out(n_samples, 0.0);
    for (const ModalComponent& m : modes) {
        const double w = 2.0 * std::numbers::pi * m.frequency_hz;
        for (std::size_t n = 0; n < n_samples; ++n) {
            const double t = static_cast<double>(n) / sample_rate;
            out[n] += m.amplitude * std::exp(-m.damping * t) * std::cos(w * t + m.phase);
        }
    }
    return out;
}

std::vector<ModalComponent> modal_fit(std::span<const double> signal, double sample_rate,
                                      std::size_t max_modes) {
    if (static_cast<double>(signal.size()) < 0.25 * sample_rate)
        throw std::invalid_argument("modal fit needs at least 0.25 s of signal");

    const StftConfig cfg{};
    const Stft stft = stft_magnitudes(signal, sample_rate, cfg);
    if (stft.magnitudes.empty()) return {};
    const std::vector<double>& first = stft.magnitudes.front();

    // noise floor from the median magnitude of the first frame
    std::vector<double> sorted(first.begin(), first.end());
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double floor_mag = sorted[sorted.size() / 2];
    const double threshold = std::max(10.0 * floor_mag, 1e-9);

    struct Peak {
        std::size_t bin;
        double mag;
    };
    std::vector<Peak> peaks;
    const std::size_t guard = 2;
    for (std::size_t k = guard; k + guard < first.size(); ++k) {
        if (first[k] < threshold) continue;
        bool is_max = true;
        for (std::size_t j = k - guard; j <= k + guard; ++j)
            if (first[j] > first[k]) is_max = false;
        if (is_max) peaks.push_back({k, first[k]});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.mag > b.mag; });

    // keep the strongest peaks separated by >= 3 analysis bins
    const double analysis_bin = sample_rate / static_cast<double>(cfg.window);
    const double min_separation_hz = 3.0 * analysis_bin;
    std::vector<ModalComponent> modes;
    const double bin_hz = stft.bin_hz();
    const double frame_dt = static_cast<double>(cfg.hop) / sample_rate;

    for (const Peak& p : peaks) {
        if (modes.size() >= max_modes) break;
        const auto [delta, peak_mag] = quadratic_peak(first, p.bin);
        const double freq = (static_cast<double>(p.bin) + delta) * bin_hz;
        if (freq < kMinPitchHz / 2.0 || freq > sample_rate / 2.0 - 2.0 * min_separation_hz)
            continue;
        bool clash = false;
        for (const ModalComponent& m : modes)
            if (std::abs(m.frequency_hz - freq) < min_separation_hz) clash = true;
        if (clash) continue;

        // per-frame amplitude track at this partial -> log-domain slope
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        std::size_t count = 0;
        for (std::size_t f = 0; f < stft.magnitudes.size(); ++f) {
            const auto& frame = stft.magnitudes[f];
            const auto center = static_cast<std::size_t>(
                std::lround(freq / bin_hz));
            if (center < 2 || center + 2 >= frame.size()) break;
            std::size_t local = center;
            for (std::size_t j = center - 2; j <= center + 2; ++j)
                if (frame[j] > frame[local]) local = j;
            const auto [d2, m2] = quadratic_peak(frame, local);
            if (!(m2 > 0.0)) break;
            if (m2 < 1e-7 * peak_mag) break;  // below measurable decay
            const double t = static_cast<double>(f) * frame_dt;
            const double lm = std::log(m2);
            sx += t;
            sy += lm;
            sxx += t * t;
            sxy += t * lm;
            ++count;
        }
        double alpha = 0.0;
        if (count >= 2) {
            const double nr = static_cast<double>(count);
            alpha = -(nr * sxy - sx * sy) / (nr * sxx - sx * sx);
        }
        alpha = std::max(alpha, 0.0);

        // amplitude from the first frame, corrected for window gain and the
        // decay across the analysis window
        const auto window = hann_window(cfg.window);
        double wsum = 0.0;
        for (std::size_t i = 0; i < window.size(); ++i)
            wsum += window[i] * std::exp(-alpha * static_cast<double>(i) / sample_rate);
        const double amplitude = 2.0 * peak_mag / wsum;

        ModalComponent mode;
        mode.frequency_hz = freq;
        mode.damping = alpha;
        mode.amplitude = amplitude;
        mode.phase = 0.0;
        modes.push_back(mode);
    }
    return modes;
}

LossFilterFit loss_filter_fit(std::span<const PartialDecay> partial_decays,
                              double loop_length_samples, double sample_rate) {
    if (partial_decays.empty())
        throw std::invalid_argument("loss filter fit needs at least one partial");
    std::vector<double> w(partial_decays.size());
    std::vector<double> target_log(partial_decays.size());
    for (std::size_t i = 0; i < partial_decays.size(); ++i) {
        const PartialDecay& p = partial_decays[i];
        if (p.alpha_per_s < 0.0)
            throw std::domain_error("partial decay rates must be nonnegative");
        const double g = std::exp(-p.alpha_per_s * loop_length_samples / sample_rate);
        if (g > 1.0) throw std::domain_error("target per-pass gain above 1 (growth)");
        w[i] = 2.0 * std::numbers::pi * p.frequency_hz / sample_rate;
        target_log[i] = std::log(g);
    }

    // grid-plus-refine over the pole; optimal log-gain is the mean residual
    auto objective = [&](double pole) {
        LoopFilter h = LoopFilter::one_pole_lowpass(pole);
        double mean = 0.0;
        std::vector<double> hlog(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            hlog[i] = std::log(std::max(h.magnitude(w[i]), 1e-300));
            mean += target_log[i] - hlog[i];
        }
        mean /= static_cast<double>(w.size());
        double err = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double e = target_log[i] - hlog[i] - mean;
            err += e * e;
        }
        return std::pair{err, mean};
    };

    double best_pole = 0.0;
    double best_err = objective(0.0).first;
    for (int i = 1; i <= 200; ++i) {
        const double pole = 0.995 * static_cast<double>(i) / 200.0;
        const double err = objective(pole).first;
        if (err < best_err) {
            best_err = err;
            best_pole = pole;
        }
    }
    double lo = std::max(0.0, best_pole - 0.005);
    double hi = std::min(0.995, best_pole + 0.005);
    for (int iter = 0; iter < 40; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (objective(m1).first < objective(m2).first)
            hi = m2;
        else
            lo = m1;
    }
    best_pole = 0.5 * (lo + hi);
    if (objective(0.0).first <= objective(best_pole).first) best_pole = 0.0;

    const auto [err, log_gain] = objective(best_pole);
    LossFilterFit fit;
    fit.pole = best_pole;
    fit.filter = LoopFilter::one_pole_lowpass(best_pole);
    fit.gain = std::exp(log_gain);
    fit.residual = std::sqrt(err / static_cast<double>(w.size()));
    return fit;
}

std::vector<double> harmonic_magnitudes(std::span<const double> signal,
                                        double sample_rate, double f0,
                                        std::size_t harmonic_count) {
    const StftConfig cfg{};
    const Stft stft = stft_magnitudes(signal, sample_rate, cfg);
    if (stft.magnitudes.empty())
        throw std::invalid_argument("signal shorter than one analysis window");

    // average magnitude spectrum over frames
    std::vector<double> avg(stft.magnitudes.front().size(), 0.0);
    for (const auto& frame : stft.magnitudes)
        for (std::size_t k = 0; k < avg.size(); ++k) avg[k] += frame[k];
    for (auto& v : avg) v /= static_cast<double>(stft.magnitudes.size());

    const double bin_hz = stft.bin_hz();
    std::vector<double> mags(harmonic_count, 0.0);
    for (std::size_t k = 1; k <= harmonic_count; ++k) {
        const double f = f0 * static_cast<double>(k);
        if (f >= sample_rate / 2.0) break;
        const auto bin = static_cast<std::size_t>(std::lround(f / bin_hz));
        if (bin >= avg.size()) break;
        mags[k - 1] = avg[bin];
    }
    return mags;
}

double spectral_fitness(std::span<const double> target_mags,
                        std::span<const double> candidate_mags,
                        GaConfig::Weighting weighting) {
    if (target_mags.size() != candidate_mags.size())
        throw std::invalid_argument("harmonic magnitude vectors differ in length");
    double acc = 0.0;
    for (std::size_t k = 0; k < target_mags.size(); ++k) {
        double t = target_mags[k];
        double c = candidate_mags[k];
        if (weighting == GaConfig::Weighting::db_domain) {
            t = 20.0 * std::log10(std::max(t, 1e-12));
            c = 20.0 * std::log10(std::max(c, 1e-12));
        }
        const double d = t - c;
        acc += d * d;
    }
    return acc;
}

GaResult ga_optimize(std::span<const double> target, double sample_rate,
                     const GaConfig& config, const FdlParams& render_template) {
    if (config.population < 2 || config.generations < 1)
        throw std::invalid_argument("GA needs population >= 2 and generations >= 1");
    if (!(config.f0_bounds.hi > config.f0_bounds.lo) ||
        !(config.gain_bounds.hi > config.gain_bounds.lo) ||
        !(config.pole_bounds.hi > config.pole_bounds.lo))
        throw std::invalid_argument("GA parameter bounds are degenerate");
    if (!(config.mutation_rate >= 0.0 && config.mutation_rate <= 1.0) ||
        !(config.crossover_rate >= 0.0 && config.crossover_rate <= 1.0))
        throw std::invalid_argument("GA rates must lie in [0, 1]");

    const double target_f0 = estimate_f0(target, sample_rate);  // throws unvoiced_error
    const std::vector<double> target_mags =
        harmonic_magnitudes(target, sample_rate, target_f0, config.harmonic_count);

    struct Genome {
        std::array<double, 3> genes;  // f0, gain, pole
        double fitness = 0.0;
    };
    const std::array<ParamBounds, 3> bounds = {config.f0_bounds, config.gain_bounds,
                                               config.pole_bounds};

    std::mt19937 rng(config.seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng()) * (1.0 / 4294967296.0));
    };
    auto gaussian = [&](double sigma) {
        // Box-Muller on the pinned generator
        const double u1 = std::max(1e-12, static_cast<double>(rng()) * (1.0 / 4294967296.0));
        const double u2 = static_cast<double>(rng()) * (1.0 / 4294967296.0);
        return sigma * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    };

    auto evaluate = [&](Genome& g) {
        FdlParams p = render_template;
        p.sample_rate = sample_rate;
        p.f0 = g.genes[0];
        p.loop_gain = g.genes[1];
        p.loss_filter = LoopFilter::one_pole_lowpass(g.genes[2]);
        const std::vector<double> audio = fdl_render(p);
        const std::vector<double> mags =
            harmonic_magnitudes(audio, sample_rate, target_f0, config.harmonic_count);
        g.fitness = spectral_fitness(target_mags, mags, config.weighting);
    };

    std::vector<Genome> population(config.population);
    for (Genome& g : population) {
        for (std::size_t i = 0; i < 3; ++i) g.genes[i] = uniform(bounds[i].lo, bounds[i].hi);
        evaluate(g);
    }

    auto best_of = [](const std::vector<Genome>& pop) {
        std::size_t b = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (pop[i].fitness < pop[b].fitness) b = i;
        return b;
    };

    auto tournament = [&](const std::vector<Genome>& pop) -> const Genome& {
        std::size_t pick = rng() % pop.size();
        for (int t = 1; t < 3; ++t) {
            const std::size_t c = rng() % pop.size();
            if (pop[c].fitness < pop[pick].fitness) pick = c;
        }
        return pop[pick];
    };

    GaResult result{};
    result.fitness_trace.reserve(config.generations);

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        std::vector<Genome> next;
        next.reserve(config.population);
        next.push_back(population[best_of(population)]);  // elitism of 1

        while (next.size() < config.population) {
            Genome child = tournament(population);
            if (uniform(0.0, 1.0) < config.crossover_rate) {
                const Genome& other = tournament(population);
                for (std::size_t i = 0; i < 3; ++i)
                    if (uniform(0.0, 1.0) < 0.5) child.genes[i] = other.genes[i];
            }
            for (std::size_t i = 0; i < 3; ++i) {
                if (uniform(0.0, 1.0) < config.mutation_rate) {
                    const double sigma = 0.1 * (bounds[i].hi - bounds[i].lo);
                    child.genes[i] =
                        std::clamp(child.genes[i] + gaussian(sigma), bounds[i].lo, bounds[i].hi);
                }
            }
            evaluate(child);
            next.push_back(std::move(child));
        }
        population = std::move(next);
        result.fitness_trace.push_back(population[best_of(population)].fitness);
    }

    const Genome& winner = population[best_of(population)];
    result.f0 = winner.genes[0];
    result.loop_gain = winner.genes[1];
    result.pole = winner.genes[2];
    result.best_fitness = winner.fitness;
    return result;
}

}  // namespace wg
