// Batch renderer, analyzer, and calibrator for the waveguide models.
// Exit codes: 0 success, 1 validation error, 2 runtime error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wg/config.hpp"
#include "wg/errors.hpp"
#include "wg/render.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_render(const std::string& config_path, int seed_override, int rate_override) {
    std::vector<wg::RenderJob> jobs;
    try {
        jobs = wg::parse_config(config_path);
        for (auto& job : jobs) {
            if (seed_override >= 0) job.seed = static_cast<std::uint32_t>(seed_override);
            if (rate_override > 0) job.sample_rate = rate_override;
            if (job.output.empty())
                throw wg::config_error(config_path + ": job '" + job.model +
                                       "' is missing required field 'output'");
        }
    } catch (const wg::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    // per-job buffered reports, flushed in declaration order
    std::vector<std::string> reports(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        try {
            const wg::RenderReport r = wg::run_render(jobs[i]);
            std::ostringstream line;
            line << "job " << (i + 1) << " (" << jobs[i].model << ") -> " << r.output_path
                 << " (" << r.frames << " frames";
            if (r.clipped > 0) line << ", clipped " << r.clipped;
            line << ")";
            reports[i] = line.str();
        } catch (const std::exception& e) {
            for (std::size_t j = 0; j < i; ++j) std::cout << reports[j] << "\n";
            std::cerr << "error: job " << (i + 1) << " (" << jobs[i].model
                      << "): " << e.what() << "\n";
            return kExitRuntime;
        }
    }
    for (const std::string& r : reports) std::cout << r << "\n";
    return kExitOk;
}

int cmd_analyze(const std::string& wav_path, const std::string& metrics_csv) {
    const std::vector<std::string> metrics = split_csv(metrics_csv);
    if (metrics.empty()) {
        std::cerr << "error: --metrics needs at least one of f0,partial_decay,rt60,spectrum\n";
        return kExitValidation;
    }
    try {
        std::cout << wg::run_analyze(wav_path, metrics);
        return kExitOk;
    } catch (const wg::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_calibrate(const std::string& wav_path, const std::string& model,
                  const std::string& method, const std::string& out_path, int seed) {
    try {
        const wg::CalibrateReport report = wg::run_calibrate(
            wav_path, model, method, seed >= 0 ? static_cast<std::uint32_t>(seed) : 0);

        std::vector<wg::RenderJob> jobs = report.jobs;
        for (auto& job : jobs)
            if (job.output.empty()) job.output = "calibrated.wav";

        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitRuntime;
        }
        out << "# calibrated from " << wav_path << " via " << method << "\n"
            << wg::format_config(jobs);

        std::ofstream side(out_path + ".report.txt");
        side << "method=" << report.method << "\n"
             << "fitness=" << report.fitness_or_residual << "\n"
             << "elapsed_s=" << report.elapsed_s << "\n";

        std::cout << "calibrated " << model << " via " << method << " -> " << out_path
                  << " (fitness " << report.fitness_or_residual << ", "
                  << report.elapsed_s << " s)\n";
        return kExitOk;
    } catch (const wg::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital waveguide batch renderer"};
    app.require_subcommand(1);

    int seed_override = -1;
    int rate_override = -1;
    app.add_option("--seed", seed_override, "override the seed of every job");
    app.add_option("--sample-rate", rate_override, "override the sample rate of every job");

    std::string config_path;
    auto* render = app.add_subcommand("render", "render every job in a config file");
    render->add_option("config", config_path, "job file")->required();

    std::string wav_path, metrics = "f0";
    auto* analyze = app.add_subcommand("analyze", "measure metrics of a WAV file");
    analyze->add_option("wav", wav_path, "input WAV")->required();
    analyze->add_option("--metrics", metrics, "comma list: f0,partial_decay,rt60,spectrum");

    std::string cal_wav, cal_model = "fdl", cal_method = "ga", cal_out = "calibrated.cfg";
    auto* calibrate = app.add_subcommand("calibrate", "fit model parameters to a target WAV");
    calibrate->add_option("wav", cal_wav, "target WAV")->required();
    calibrate->add_option("--model", cal_model, "model to fit");
    calibrate->add_option("--method", cal_method, "ga or modal");
    calibrate->add_option("--out", cal_out, "output config path");

    auto* list = app.add_subcommand("list-models", "list renderable models");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    if (render->parsed()) return cmd_render(config_path, seed_override, rate_override);
    if (analyze->parsed()) return cmd_analyze(wav_path, metrics);
    if (calibrate->parsed())
        return cmd_calibrate(cal_wav, cal_model, cal_method, cal_out, seed_override);
    if (list->parsed()) {
        for (const std::string& name : wg::known_models()) std::cout << name << "\n";
        return kExitOk;
    }
    return kExitValidation;
}
