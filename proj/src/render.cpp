#include "wg/render.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wg/bowed_string.hpp"
#include "wg/calibration.hpp"
#include "wg/errors.hpp"
#include "wg/fdl.hpp"
#include "wg/mesh2d.hpp"
#include "wg/noise.hpp"
#include "wg/sdn.hpp"
#include "wg/string_models.hpp"
#include "wg/tube_models.hpp"
#include "wg/wav.hpp"

namespace wg {

namespace {

std::size_t frame_count(const RenderJob& job) {
    return static_cast<std::size_t>(std::llround(job.duration * job.sample_rate));
}

Excitation job_excitation(const RenderJob& job, std::size_t default_length) {
    Excitation e;
    const std::string& kind = job.str("excitation");
    e.kind = kind == "noise"    ? Excitation::Kind::noise_burst
             : kind == "pluck" ? Excitation::Kind::pluck_ramp
                               : Excitation::Kind::impulse;
    auto len = static_cast<std::size_t>(job.num("excitation_length"));
    if (len == 0) len = default_length;
    e.length = std::max<std::size_t>(len, 1);
    e.seed = job.seed;
    e.amplitude = job.num("amplitude");
    return e;
}

LoopFilter named_filter(const std::string& kind, double pole, double gain) {
    if (kind == "averager") return LoopFilter::fir({0.5 * gain, 0.5 * gain});
    if (kind == "one_pole") return LoopFilter::one_pole_lowpass(pole, gain);
    return LoopFilter::fir({gain});
}

FdlParams fdl_params_from(const RenderJob& job) {
    FdlParams p;
    p.sample_rate = job.sample_rate;
    p.f0 = job.num("f0");
    p.loop_gain = job.num("loop_gain");
    p.loss_filter = named_filter(job.str("loss"), job.num("pole"), 1.0);
    const std::string& interp = job.str("interp");
    if (interp == "allpass") {
        p.interp_kind = FractionalDelay::Kind::allpass;
    } else {
        p.interp_kind = FractionalDelay::Kind::lagrange;
        p.interp_order = static_cast<int>(job.num("interp_order"));
    }
    p.compensate_fraction = interp != "none";
    p.excitation = job_excitation(job, 0);
    p.duration = job.duration;
    return p;
}

std::vector<double> render_fdl(const RenderJob& job) { return fdl_render(fdl_params_from(job)); }

std::vector<double> render_commuted(const RenderJob& job) {
    FdlParams p = fdl_params_from(job);
    const Excitation exc = job_excitation(job, 64);
    std::vector<double> e = exc.render();
    if (e.empty()) e.assign(1, 1.0);

    std::vector<double> body;
    if (job.str("body") == "impulse") {
        body.assign(1, 1.0);
    } else {
        const auto len = static_cast<std::size_t>(job.num("body_length"));
        body = noise_vector(static_cast<std::uint32_t>(job.num("body_seed")), len);
        const double decay = job.num("body_decay");
        for (std::size_t n = 0; n < len; ++n)
            body[n] *= std::exp(-decay * static_cast<double>(n) / job.sample_rate);
    }
    const CommutedOrder order = job.str("order") == "e_string_body"
                                    ? CommutedOrder::e_string_body
                                    : CommutedOrder::ebody_string;
    return commuted_render(e, p, body, order);
}

std::vector<double> render_ideal_string(const RenderJob& job) {
    IdealString string(static_cast<std::size_t>(job.num("length")));
    const auto inject = static_cast<std::size_t>(job.num("inject"));
    const auto pickup = static_cast<std::size_t>(job.num("pickup"));
    const std::vector<double> exc = job_excitation(job, 1).render();
    std::vector<double> out(frame_count(job));
    for (std::size_t n = 0; n < out.size(); ++n) {
        std::optional<Injection> in;
        if (n < exc.size() && exc[n] != 0.0) in = Injection{inject, exc[n]};
        out[n] = string.tick(in, pickup);
    }
    return out;
}

std::vector<double> render_terminated_string(const RenderJob& job) {
    const auto length = static_cast<std::size_t>(job.num("length"));
    TerminationFilter bridge{named_filter(job.str("bridge"), job.num("bridge_pole"),
                                          job.num("bridge_gain")),
                             Polarity::inverting};
    TerminationFilter nut{named_filter(job.str("nut"), job.num("nut_pole"),
                                       job.num("nut_gain")),
                          Polarity::inverting};
    TerminatedString string(length, bridge, nut);
    const Excitation exc = job_excitation(job, length / 2);
    return terminated_string_render(string, exc,
                                    static_cast<std::size_t>(job.num("inject")),
                                    static_cast<std::size_t>(job.num("pickup")),
                                    frame_count(job));
}

std::vector<double> render_bowed(const RenderJob& job) {
    BowParams bow;
    bow.bow_velocity = job.num("bow_velocity");
    bow.bow_force = job.num("bow_force");
    bow.bow_position = job.num("bow_position");
    bow.friction_slope = job.num("friction_slope");
    BowedString string(static_cast<std::size_t>(job.num("length")), bow);
    return string.render(frame_count(job));
}

std::vector<double> render_kelly_lochbaum(const RenderJob& job) {
    KellyLochbaumTract tract(job.list("areas"), job.num("glottal_reflection"),
                             job.num("lip_reflection"));
    const std::size_t frames = frame_count(job);
    Excitation exc = job_excitation(job, frames);
    std::vector<double> drive = exc.render();
    drive.resize(frames, 0.0);
    return tract.render(drive);
}

std::vector<double> render_clarinet(const RenderJob& job) {
    const auto bore = static_cast<std::size_t>(job.num("bore_delay"));
    ReedTable reed = job.str("reed_table").empty()
                         ? ReedTable::analytic(job.num("embouchure"), 256,
                                               job.num("reed_slope"))
                         : ReedTable::from_file(job.str("reed_table"));
    Clarinet clarinet(bore, std::move(reed),
                      LoopFilter::one_pole_lowpass(job.num("bell_pole")),
                      job.num("bell_gain"));
    const std::size_t frames = frame_count(job);
    const double target = job.num("mouth_pressure");
    const auto attack = static_cast<std::size_t>(job.num("attack") * job.sample_rate);
    std::vector<double> envelope(frames);
    for (std::size_t n = 0; n < frames; ++n)
        envelope[n] = attack == 0 ? target
                                  : target * std::min(1.0, static_cast<double>(n) /
                                                               static_cast<double>(attack));
    return clarinet.render(envelope, frames);
}

std::vector<double> render_mesh(const RenderJob& job) {
    MeshGrid grid(static_cast<std::size_t>(job.num("width")),
                  static_cast<std::size_t>(job.num("height")),
                  job.num("boundary_reflection"));
    const auto ex = static_cast<std::size_t>(job.num("excite_x"));
    const auto ey = static_cast<std::size_t>(job.num("excite_y"));
    const auto rx = static_cast<std::size_t>(job.num("read_x"));
    const auto ry = static_cast<std::size_t>(job.num("read_y"));
    grid.excite(ex, ey, job.num("amplitude"));

    const std::string dump_path = job.str("dump_field");
    const auto dump_every = static_cast<std::size_t>(job.num("dump_every"));
    std::ofstream dump;
    if (!dump_path.empty() && dump_every > 0) {
        dump.open(dump_path, std::ios::binary);
        if (!dump) throw std::runtime_error("cannot open dump file: " + dump_path);
    }

    std::vector<double> out(frame_count(job));
    for (std::size_t n = 0; n < out.size(); ++n) {
        grid.step();
        out[n] = grid.read(rx, ry);
        if (dump.is_open() && n % dump_every == 0) grid.dump_field(dump);
    }
    return out;
}

std::vector<double> render_sdn(const RenderJob& job) {
    const auto& room = job.list("room");
    const auto& src = job.list("source");
    const auto& rcv = job.list("receiver");
    auto vec = [](const std::vector<double>& v) {
        return Vec3{v[0], v[1], v.size() > 2 ? v[2] : 0.0};
    };
    SdnRoom sdn(vec(room), vec(src), vec(rcv), job.list("wall_gains"), job.sample_rate,
                job.num("sound_speed"));
    return sdn.render_ir(job.duration);
}

std::vector<double> render_modal(const RenderJob& job) {
    std::vector<ModalComponent> modes;
    std::stringstream ss(job.str("modes"));
    std::string item;
    while (std::getline(ss, item, ',')) {
        ModalComponent m;
        if (std::sscanf(item.c_str(), " %lf : %lf : %lf : %lf", &m.amplitude,
                        &m.frequency_hz, &m.damping, &m.phase) != 4)
            throw config_error("modal job: modes entries must be A:f:alpha:phi");
        modes.push_back(m);
    }
    if (modes.empty()) throw config_error("modal job: no modes given");
    return synthesize_modes(modes, job.sample_rate, frame_count(job));
}

}  // namespace

std::vector<double> render_job(const RenderJob& job) {
    if (job.model == "fdl") return render_fdl(job);
    if (job.model == "commuted") return render_commuted(job);
    if (job.model == "ideal_string") return render_ideal_string(job);
    if (job.model == "terminated_string") return render_terminated_string(job);
    if (job.model == "bowed_string") return render_bowed(job);
    if (job.model == "kelly_lochbaum") return render_kelly_lochbaum(job);
    if (job.model == "clarinet") return render_clarinet(job);
    if (job.model == "mesh2d") return render_mesh(job);
    if (job.model == "sdn") return render_sdn(job);
    if (job.model == "modal") return render_modal(job);
    throw config_error("unknown model: " + job.model);
}

RenderReport run_render(const RenderJob& job) {
    const std::vector<double> samples = render_job(job);
    RenderReport report;
    report.output_path = job.output;
    report.frames = samples.size();
    report.clipped = write_wav(job.output, samples,
                               static_cast<unsigned>(job.sample_rate));
    return report;
}

std::string run_analyze(const std::string& wav_path,
                        const std::vector<std::string>& metrics) {
    const WavData wav = read_wav(wav_path);
    std::ostringstream out;
    out.precision(10);

    for (const std::string& metric : metrics) {
        if (metric == "f0") {
            try {
                out << "f0=" << estimate_f0(wav.samples, wav.sample_rate) << " hz\n";
            } catch (const unvoiced_error&) {
                out << "f0=unvoiced\n";
            } catch (const std::exception& e) {
                out << "f0=error:" << e.what() << "\n";
            }
        } else if (metric == "rt60") {
            try {
                out << "rt60=" << sdn_rt60(wav.samples, wav.sample_rate) << " s\n";
            } catch (const std::exception& e) {
                out << "rt60=error:" << e.what() << "\n";
            }
        } else if (metric == "partial_decay") {
            try {
                const auto modes = modal_fit(wav.samples, wav.sample_rate, 8);
                if (modes.empty()) {
                    out << "partial_decay=error:no partials above the noise floor\n";
                } else {
                    out << "partial_decay=";
                    for (std::size_t i = 0; i < modes.size(); ++i)
                        out << (i ? "," : "") << modes[i].frequency_hz << ":"
                            << modes[i].damping;
                    out << " hz:alpha\n";
                }
            } catch (const std::exception& e) {
                out << "partial_decay=error:" << e.what() << "\n";
            }
        } else if (metric == "spectrum") {
            try {
                const auto modes = modal_fit(wav.samples, wav.sample_rate, 10);
                out << "spectrum=";
                for (std::size_t i = 0; i < modes.size(); ++i)
                    out << (i ? "," : "") << modes[i].frequency_hz << ":"
                        << 20.0 * std::log10(std::max(modes[i].amplitude, 1e-12));
                out << " hz:db\n";
            } catch (const std::exception& e) {
                out << "spectrum=error:" << e.what() << "\n";
            }
        } else {
            throw config_error("unknown metric: " + metric +
                               " (known: f0, partial_decay, rt60, spectrum)");
        }
    }
    return out.str();
}

CalibrateReport run_calibrate(const std::string& target_wav, const std::string& model,
                              const std::string& method, std::uint32_t seed) {
    const WavData wav = read_wav(target_wav);
    const auto start = std::chrono::steady_clock::now();
    CalibrateReport report;
    report.method = method;

    if (model == "fdl" && method == "ga") {
        GaConfig cfg;
        cfg.seed = seed == 0 ? 1 : seed;
        const double f0 = estimate_f0(wav.samples, wav.sample_rate);
        cfg.f0_bounds = {f0 * std::pow(2.0, -1.0 / 12.0), f0 * std::pow(2.0, 1.0 / 12.0)};
        cfg.gain_bounds = {0.9, 1.0};
        cfg.pole_bounds = {0.0, 0.9};

        FdlParams tmpl;
        tmpl.sample_rate = wav.sample_rate;
        tmpl.duration = std::min(0.5, static_cast<double>(wav.samples.size()) /
                                          wav.sample_rate);
        tmpl.excitation = {Excitation::Kind::noise_burst, 0, cfg.seed, 0.5, {}};

        const GaResult ga = ga_optimize(wav.samples, wav.sample_rate, cfg, tmpl);
        report.fitness_or_residual = ga.best_fitness;

        RenderJob job;
        job.model = "fdl";
        job.sample_rate = wav.sample_rate;
        job.duration = tmpl.duration;
        job.seed = cfg.seed;
        job.numbers["f0"] = ga.f0;
        job.numbers["loop_gain"] = ga.loop_gain;
        job.numbers["pole"] = ga.pole;
        job.numbers["interp_order"] = 3;
        job.numbers["excitation_length"] = 0;
        job.numbers["amplitude"] = 0.5;
        job.strings["loss"] = "one_pole";
        job.strings["interp"] = "lagrange";
        job.strings["excitation"] = "noise";
        report.jobs.push_back(std::move(job));
    } else if (method == "modal") {
        const auto modes = modal_fit(wav.samples, wav.sample_rate, 8);
        if (modes.empty()) throw measurement_error("no modes above the noise floor");
        const std::vector<double> resynth =
            synthesize_modes(modes, wav.sample_rate, wav.samples.size());
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < resynth.size(); ++i) {
            const double d = resynth[i] - wav.samples[i];
            err += d * d;
            ref += wav.samples[i] * wav.samples[i];
        }
        report.fitness_or_residual = ref > 0.0 ? std::sqrt(err / ref) : 0.0;

        RenderJob job;
        job.model = "modal";
        job.sample_rate = wav.sample_rate;
        job.duration = static_cast<double>(wav.samples.size()) / wav.sample_rate;
        std::ostringstream spec;
        spec.precision(17);
        for (std::size_t i = 0; i < modes.size(); ++i)
            spec << (i ? ", " : "") << modes[i].amplitude << ":" << modes[i].frequency_hz
                 << ":" << modes[i].damping << ":" << modes[i].phase;
        job.strings["modes"] = spec.str();
        report.jobs.push_back(std::move(job));
    } else {
        throw config_error("unsupported (model, method) pair: (" + model + ", " + method +
                           "); supported: (fdl, ga), (<any>, modal)");
    }

    const auto end = std::chrono::steady_clock::now();
    report.elapsed_s = std::chrono::duration<double>(end - start).count();
    return report;
}

}  // namespace wg
