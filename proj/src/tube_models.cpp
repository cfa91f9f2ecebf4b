#include "wg/tube_models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wg/scattering.hpp"

namespace wg {

KellyLochbaumTract::KellyLochbaumTract(std::vector<double> areas,
                                       double glottal_reflection, double lip_reflection)
    : areas_(std::move(areas)), glottal_r_(glottal_reflection), lip_r_(lip_reflection) {
    if (areas_.empty()) throw std::domain_error("tract needs at least one section");
    for (double a : areas_)
        if (!(a > 0.0)) throw std::domain_error("tract areas must be strictly positive");
    if (std::abs(glottal_r_) > 1.0 || std::abs(lip_r_) > 1.0)
        throw std::domain_error("end reflections must lie in [-1, 1]");
    junction_r_.resize(areas_.size() - 1);
    for (std::size_t m = 0; m + 1 < areas_.size(); ++m)
        junction_r_[m] = area_reflection_coefficient(areas_[m], areas_[m + 1]);
    p_plus_.assign(areas_.size(), 0.0);
    p_minus_.assign(areas_.size(), 0.0);
    next_plus_.assign(areas_.size(), 0.0);
    next_minus_.assign(areas_.size(), 0.0);
}

double KellyLochbaumTract::tick(double glottal_input) {
    const std::size_t last = areas_.size() - 1;

    const double out = (1.0 + lip_r_) * p_plus_[last];

    // every junction output is a function of the pre-tick state
    next_plus_[0] = glottal_input + glottal_r_ * p_minus_[0];
    next_minus_[last] = lip_r_ * p_plus_[last];
    for (std::size_t m = 0; m < last; ++m) {
        const double r = junction_r_[m];
        const double a = p_plus_[m];       // incident from the left
        const double b = p_minus_[m + 1];  // incident from the right
        next_plus_[m + 1] = (1.0 + r) * a - r * b;
        next_minus_[m] = r * a + (1.0 - r) * b;
    }
    p_plus_.swap(next_plus_);
    p_minus_.swap(next_minus_);
    return out;
}

std::vector<double> KellyLochbaumTract::render(std::span<const double> glottal_input) {
    std::vector<double> out(glottal_input.size());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = tick(glottal_input[n]);
    return out;
}

void KellyLochbaumTract::clear() {
    std::fill(p_plus_.begin(), p_plus_.end(), 0.0);
    std::fill(p_minus_.begin(), p_minus_.end(), 0.0);
}

KellyLochbaumTract kl_build(std::vector<double> areas, double glottal_reflection,
                            double lip_reflection) {
    return KellyLochbaumTract(std::move(areas), glottal_reflection, lip_reflection);
}

ReedTable::ReedTable(std::vector<double> grid, double h_min, double h_max)
    : grid_(std::move(grid)), h_min_(h_min), h_max_(h_max) {
    if (grid_.size() < 16) throw std::invalid_argument("reed table needs >= 16 grid points");
    if (!(h_max_ > h_min_)) throw std::invalid_argument("reed table range is empty");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (!(grid_[i] >= 0.0 && grid_[i] <= 1.0))
            throw std::domain_error("reed reflection values must lie in [0, 1]");
        if (i > 0 && grid_[i] < grid_[i - 1] - 1e-12)
            throw std::domain_error("reed reflection must be non-decreasing toward closure");
    }
}

ReedTable ReedTable::analytic(double embouchure, std::size_t grid_size, double slope,
                              double h_min, double h_max) {
    if (grid_size < 16) throw std::invalid_argument("reed table needs >= 16 grid points");
    std::vector<double> grid(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double h = h_min + (h_max - h_min) * static_cast<double>(i) /
                                     static_cast<double>(grid_size - 1);
        const double rho = 1.0 - slope * std::max(0.0, embouchure - h);
        grid[i] = std::clamp(rho, 0.0, 1.0);
    }
    return ReedTable(std::move(grid), h_min, h_max);
}

ReedTable ReedTable::from_stream(std::istream& in, std::size_t grid_size) {
    std::vector<std::pair<double, double>> points;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double h, rho;
        if (fields >> h >> rho) points.emplace_back(h, rho);
    }
    if (points.size() < 2)
        throw std::invalid_argument("reed table file needs at least 2 data rows");
    std::sort(points.begin(), points.end());
    const double lo = points.front().first;
    const double hi = points.back().first;
    if (!(hi > lo)) throw std::invalid_argument("reed table file has a degenerate h range");

    std::vector<double> grid(grid_size);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double h = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(grid_size - 1);
        while (seg + 2 < points.size() && points[seg + 1].first < h) ++seg;
        const auto& [x0, y0] = points[seg];
        const auto& [x1, y1] = points[seg + 1];
        const double t = x1 > x0 ? std::clamp((h - x0) / (x1 - x0), 0.0, 1.0) : 0.0;
        grid[i] = y0 + t * (y1 - y0);
    }
    return ReedTable(std::move(grid), lo, hi);
}

ReedTable ReedTable::from_file(const std::string& path, std::size_t grid_size) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reed table file: " + path);
    return from_stream(in, grid_size);
}

double ReedTable::operator()(double h_delta) const {
    if (h_delta <= h_min_) return grid_.front();
    if (h_delta >= h_max_) return grid_.back();
    const double pos = (h_delta - h_min_) / (h_max_ - h_min_) *
                       static_cast<double>(grid_.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= grid_.size()) return grid_.back();
    const double t = pos - static_cast<double>(i);
    return grid_[i] + t * (grid_[i + 1] - grid_[i]);
}

ReedTable reed_table_build(double embouchure, std::size_t grid_size) {
    return ReedTable::analytic(embouchure, grid_size);
}

Clarinet::Clarinet(std::size_t bore_delay, ReedTable reed, LoopFilter bell_lowpass,
                   double bell_gain)
    : reed_(std::move(reed)),
      bell_filter_(std::move(bell_lowpass)),
      bell_gain_(bell_gain),
      bore_(bore_delay, 0.0),
      back_(bore_delay, 0.0) {
    if (bore_delay < 2) throw std::invalid_argument("bore delay must be >= 2 samples");
    if (!(bell_gain >= 0.0 && bell_gain <= 1.0))
        throw std::domain_error("bell reflection gain must lie in [0, 1]");
}

double Clarinet::tick(double mouth_pressure) {
    const std::size_t m = bore_.size();
    const std::size_t tail = (head_ + m - 1) % m;

    const double at_bell = bore_[tail];  // wave reaching the open end
    const double at_reed = back_[tail];  // wave returning to the mouthpiece

    // bell: inverting lowpass reflection, remainder radiates
    const double reflected = -bell_gain_ * bell_filter_.process(at_bell);
    const double radiated = at_bell + reflected;

    // reed: half-pressure drive, nonlinear reflection of the difference wave
    const double h_mouth = 0.5 * mouth_pressure;
    const double h_delta = h_mouth - at_reed;
    const double rho = reed_(h_delta);
    const double into_bore = h_mouth - rho * h_delta;

    head_ = tail;
    bore_[head_] = into_bore;
    back_[head_] = reflected;
    return radiated;
}

std::vector<double> Clarinet::render(std::span<const double> envelope,
                                     std::size_t n_samples) {
    if (envelope.size() < n_samples)
        throw std::invalid_argument("mouth pressure envelope shorter than the render");
    std::vector<double> out(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) out[n] = tick(envelope[n]);
    return out;
}

std::vector<double> clarinet_render(Clarinet& state,
                                    std::span<const double> envelope,
                                    std::size_t n_samples) {
    return state.render(envelope, n_samples);
}

}  // namespace wg
