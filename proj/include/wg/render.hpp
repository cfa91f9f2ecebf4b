#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wg/config.hpp"

namespace wg {

// Renders one validated job to samples (deterministic in job + seed).
std::vector<double> render_job(const RenderJob& job);

struct RenderReport {
    std::string output_path;
    std::size_t frames = 0;
    std::size_t clipped = 0;
};

// Renders and writes the WAV declared by the job.
RenderReport run_render(const RenderJob& job);

// One `metric=value unit` line per requested metric; estimator failures are
// reported inline as `metric=unvoiced` or `metric=error:<reason>`.
std::string run_analyze(const std::string& wav_path,
                        const std::vector<std::string>& metrics);

struct CalibrateReport {
    std::string method;
    double fitness_or_residual = 0.0;
    double elapsed_s = 0.0;
    std::vector<RenderJob> jobs;  // renderable result
};

// Fits model parameters to the target and returns a renderable config.
// Supported pairs: (fdl, ga) and (modal, modal).
CalibrateReport run_calibrate(const std::string& target_wav, const std::string& model,
                              const std::string& method, std::uint32_t seed);

}  // namespace wg
