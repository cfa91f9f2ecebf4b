#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace wg {

enum class MeshDirection { axial, diagonal };

struct DispersionMeasurement {
    double speed;           // euclidean junction spacings per tick, peak arrival
    std::size_t first_arrival;
    std::size_t peak_arrival;
    std::size_t spread;     // ticks spent above half of the peak magnitude
};

// Rectilinear grid of 4-port equal-impedance scattering junctions joined by
// one-sample bidirectional delays, with scalar reflection at the edges.
// step() runs scatter-then-propagate as two phases, so junction updates are
// simultaneous and order-independent.
class MeshGrid {
public:
    MeshGrid(std::size_t width, std::size_t height, double boundary_reflection);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }

    void step();

    // Adds amplitude/4 onto each of the four incoming ports at (x, y).
    void excite(std::size_t x, std::size_t y, double amplitude);

    // Junction velocity v_J = sum(incoming) / 2 at (x, y), state untouched.
    double read(std::size_t x, std::size_t y) const;

    // Sum of squared port variables over the whole grid.
    double energy() const;

    // Binary dump: width and height as 32-bit integers, then row-major
    // 64-bit junction velocities.
    void dump_field(std::ostream& out) const;

    void clear();

private:
    // port order: north, south, east, west
    static constexpr std::size_t kNorth = 0, kSouth = 1, kEast = 2, kWest = 3;

    std::size_t idx(std::size_t x, std::size_t y) const { return y * width_ + x; }
    void check(std::size_t x, std::size_t y) const;

    std::size_t width_;
    std::size_t height_;
    double boundary_;
    // incoming[d][j] and the post-scatter outgoing waves per junction
    std::array<std::vector<double>, 4> in_;
    std::array<std::vector<double>, 4> out_;
};

void mesh_step(MeshGrid& grid);
void mesh_excite(MeshGrid& grid, std::size_t x, std::size_t y, double amplitude);
double mesh_read(const MeshGrid& grid, std::size_t x, std::size_t y);

// Launches `pulse` at the grid center and measures the effective wave speed
// toward an axial or diagonal probe 20 junctions away. The grid must be large
// enough that nothing reaches a boundary during the measurement.
DispersionMeasurement mesh_measure_dispersion(std::size_t grid_size,
                                              MeshDirection direction, double pulse);

}  // namespace wg
