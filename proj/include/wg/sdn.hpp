#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "wg/delay_line.hpp"
#include "wg/fractional_delay.hpp"

namespace wg {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

// Scattering-delay-network room: one scattering node per wall placed at the
// first-order specular reflection point for the (source, receiver) pair, every
// node pair joined by a bidirectional delay line, unidirectional source and
// receiver taps plus the free-field direct path. 2D rooms use 4 wall nodes
// and 6 lines; 3D shoeboxes use 6 nodes and 15 lines.
class SdnRoom {
public:
    // 2D: dims = {Lx, Ly, 0}; 3D: all three positive.
    SdnRoom(Vec3 room_dims, Vec3 source, Vec3 receiver,
            std::vector<double> wall_gains, double sample_rate,
            double sound_speed = 343.0);

    std::size_t wall_count() const { return nodes_.size(); }
    std::size_t line_count() const { return lines_.size(); }
    const std::vector<Vec3>& node_positions() const { return nodes_; }
    double direct_delay_samples() const { return direct_delay_; }

    // delay (samples) and distance of source -> node k -> receiver
    double first_order_delay_samples(std::size_t k) const;

    std::vector<double> render_ir(double duration_s);

private:
    struct Tap {
        DelayLine line;
        FractionalDelay read;
        double gain;
    };

    // bidirectional node<->node connection: one delay line per direction
    struct Line {
        std::size_t a, b;
        DelayLine ab, ba;
        FractionalDelay read_ab, read_ba;
    };

    double tick(double input);

    Vec3 dims_;
    Vec3 source_, receiver_;
    std::vector<double> wall_gains_;
    double fs_, c_;
    std::vector<Vec3> nodes_;
    double direct_delay_ = 0.0;

    Tap direct_;
    std::vector<Tap> source_taps_;    // source -> node
    std::vector<Tap> receiver_taps_;  // node -> receiver
    std::vector<Line> lines_;
    // per node: incoming port values gathered each tick (degree = walls - 1)
    std::vector<std::vector<double>> incoming_;
    std::vector<std::vector<double>> outgoing_;
};

SdnRoom sdn_build(Vec3 room_dims, Vec3 source, Vec3 receiver,
                  std::vector<double> wall_gains, double sample_rate,
                  double sound_speed = 343.0);

std::vector<double> sdn_render_ir(SdnRoom& room, double duration_s);

// T60 from the -5 .. -35 dB span of the Schroeder backward-integrated energy
// decay curve, extrapolated to the full 60 dB.
double sdn_rt60(std::span<const double> ir, double sample_rate);

}  // namespace wg
