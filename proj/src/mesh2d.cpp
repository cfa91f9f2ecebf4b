#include "wg/mesh2d.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

#include "wg/errors.hpp"

namespace wg {

MeshGrid::MeshGrid(std::size_t width, std::size_t height, double boundary_reflection)
    : width_(width), height_(height), boundary_(boundary_reflection) {
    if (width < 2 || height < 2) throw std::invalid_argument("mesh needs width, height >= 2");
    if (!(boundary_reflection >= -1.0 && boundary_reflection <= 1.0))
        throw std::domain_error("boundary reflection must lie in [-1, 1]");
    for (auto& v : in_) v.assign(width * height, 0.0);
    for (auto& v : out_) v.assign(width * height, 0.0);
}

void MeshGrid::check(std::size_t x, std::size_t y) const {
    if (x >= width_ || y >= height_) throw std::out_of_range("mesh junction out of range");
}

void MeshGrid::step() {
    const std::size_t n = width_ * height_;

    // scatter: v_J = ((N + S) + (E + W)) / 2, outgoing = v_J - incoming.
    // The pairwise grouping matches scatter_nport_equal bit for bit.
    for (std::size_t j = 0; j < n; ++j) {
        const double vj =
            ((in_[kNorth][j] + in_[kSouth][j]) + (in_[kEast][j] + in_[kWest][j])) * 0.5;
        out_[kNorth][j] = vj - in_[kNorth][j];
        out_[kSouth][j] = vj - in_[kSouth][j];
        out_[kEast][j] = vj - in_[kEast][j];
        out_[kWest][j] = vj - in_[kWest][j];
    }

    // propagate: each port receives the facing neighbor's opposite-port output;
    // edge ports reflect their own output with the boundary coefficient.
    for (std::size_t y = 0; y < height_; ++y) {
        for (std::size_t x = 0; x < width_; ++x) {
            const std::size_t j = idx(x, y);
            in_[kSouth][j] = y + 1 < height_ ? out_[kNorth][idx(x, y + 1)]
                                             : boundary_ * out_[kSouth][j];
            in_[kNorth][j] = y > 0 ? out_[kSouth][idx(x, y - 1)]
                                   : boundary_ * out_[kNorth][j];
            in_[kEast][j] = x + 1 < width_ ? out_[kWest][idx(x + 1, y)]
                                           : boundary_ * out_[kEast][j];
            in_[kWest][j] = x > 0 ? out_[kEast][idx(x - 1, y)]
                                  : boundary_ * out_[kWest][j];
        }
    }
}

void MeshGrid::excite(std::size_t x, std::size_t y, double amplitude) {
    check(x, y);
    const std::size_t j = idx(x, y);
    const double q = 0.25 * amplitude;
    in_[kNorth][j] += q;
    in_[kSouth][j] += q;
    in_[kEast][j] += q;
    in_[kWest][j] += q;
}

double MeshGrid::read(std::size_t x, std::size_t y) const {
    check(x, y);
    const std::size_t j = idx(x, y);
    return ((in_[kNorth][j] + in_[kSouth][j]) + (in_[kEast][j] + in_[kWest][j])) * 0.5;
}

double MeshGrid::energy() const {
    double acc = 0.0;
    for (const auto& rail : in_)
        for (double v : rail) acc += v * v;
    return acc;
}

void MeshGrid::dump_field(std::ostream& out) const {
    const auto w = static_cast<std::int32_t>(width_);
    const auto h = static_cast<std::int32_t>(height_);
    out.write(reinterpret_cast<const char*>(&w), sizeof w);
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    for (std::size_t y = 0; y < height_; ++y) {
        for (std::size_t x = 0; x < width_; ++x) {
            const double v = read(x, y);
            out.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
    }
}

void MeshGrid::clear() {
    for (auto& v : in_) v.assign(width_ * height_, 0.0);
    for (auto& v : out_) v.assign(width_ * height_, 0.0);
}

void mesh_step(MeshGrid& grid) { grid.step(); }

void mesh_excite(MeshGrid& grid, std::size_t x, std::size_t y, double amplitude) {
    grid.excite(x, y, amplitude);
}

double mesh_read(const MeshGrid& grid, std::size_t x, std::size_t y) {
    return grid.read(x, y);
}

namespace {

std::size_t l1(std::size_t ax, std::size_t ay, std::size_t bx, std::size_t by) {
    const auto d = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
    return d(ax, bx) + d(ay, by);
}

// Influence spreads one Manhattan step per tick, so the probe reading stays
// boundary-free until the shortest center -> wall -> probe path completes.
std::size_t contamination_tick(std::size_t grid, std::size_t cx, std::size_t cy,
                               std::size_t px, std::size_t py) {
    std::size_t best = static_cast<std::size_t>(-1);
    const std::size_t last = grid - 1;
    for (std::size_t t = 0; t < grid; ++t) {
        const std::size_t walls[4][2] = {{t, 0}, {t, last}, {0, t}, {last, t}};
        for (const auto& w : walls) {
            const std::size_t total = l1(cx, cy, w[0], w[1]) + l1(w[0], w[1], px, py);
            best = std::min(best, total);
        }
    }
    return best;
}

}  // namespace

DispersionMeasurement mesh_measure_dispersion(std::size_t grid_size,
                                              MeshDirection direction, double pulse) {
    constexpr std::size_t kProbeJunctions = 20;
    if (grid_size < 2 * kProbeJunctions + 8)
        throw std::invalid_argument("dispersion grid too small for the probe distance");

    MeshGrid grid(grid_size, grid_size, 1.0);
    const std::size_t cx = grid_size / 2;
    const std::size_t cy = grid_size / 2;
    grid.excite(cx, cy, pulse);

    const std::size_t px = cx + kProbeJunctions;
    const std::size_t py = direction == MeshDirection::diagonal ? cy + kProbeJunctions : cy;
    const double distance =
        direction == MeshDirection::diagonal
            ? std::sqrt(2.0) * static_cast<double>(kProbeJunctions)
            : static_cast<double>(kProbeJunctions);

    const std::size_t steps = contamination_tick(grid_size, cx, cy, px, py) - 1;
    if (steps <= 2 * kProbeJunctions)
        throw measurement_error("pulse reaches a boundary before the probe measurement completes");
    std::vector<double> series(steps);
    double peak = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
        grid.step();
        series[t] = std::abs(grid.read(px, py));
        peak = std::max(peak, series[t]);
    }
    if (peak <= 0.0)
        throw measurement_error("no energy reached the dispersion probe");

    std::size_t first = 0, peak_at = 0, above_half = 0;
    bool seen_first = false;
    for (std::size_t t = 0; t < steps; ++t) {
        if (!seen_first && series[t] >= 0.1 * peak) {
            first = t + 1;
            seen_first = true;
        }
        if (series[t] == peak) peak_at = t + 1;
        if (series[t] >= 0.5 * peak) ++above_half;
    }
    DispersionMeasurement m;
    m.first_arrival = first;
    m.peak_arrival = peak_at;
    m.spread = above_half;
    m.speed = distance / static_cast<double>(peak_at);
    return m;
}

}  // namespace wg
