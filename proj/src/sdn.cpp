#include "wg/sdn.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wg/errors.hpp"
#include "wg/scattering.hpp"

namespace wg {

double distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace {

constexpr int kInterpOrder = 3;

struct Wall {
    int axis;      // 0 = x, 1 = y, 2 = z
    double plane;  // coordinate of the wall plane
};

Vec3 mirror(const Vec3& p, const Wall& w) {
    Vec3 m = p;
    if (w.axis == 0) m.x = 2.0 * w.plane - p.x;
    if (w.axis == 1) m.y = 2.0 * w.plane - p.y;
    if (w.axis == 2) m.z = 2.0 * w.plane - p.z;
    return m;
}

// Specular first-order reflection point: intersection of the image-source to
// receiver segment with the wall plane.
Vec3 reflection_point(const Vec3& source, const Vec3& receiver, const Wall& w) {
    const Vec3 img = mirror(source, w);
    const double a = w.axis == 0 ? img.x : w.axis == 1 ? img.y : img.z;
    const double b = w.axis == 0 ? receiver.x : w.axis == 1 ? receiver.y : receiver.z;
    const double t = (w.plane - a) / (b - a);
    return {img.x + t * (receiver.x - img.x), img.y + t * (receiver.y - img.y),
            img.z + t * (receiver.z - img.z)};
}

std::size_t line_capacity(double delay) {
    return static_cast<std::size_t>(std::ceil(delay)) + kInterpOrder + 2;
}

}  // namespace

SdnRoom::SdnRoom(Vec3 room_dims, Vec3 source, Vec3 receiver,
                 std::vector<double> wall_gains, double sample_rate, double sound_speed)
    : dims_(room_dims),
      source_(source),
      receiver_(receiver),
      wall_gains_(std::move(wall_gains)),
      fs_(sample_rate),
      c_(sound_speed),
      direct_{DelayLine(1), FractionalDelay::identity(), 1.0} {
    const bool three_d = dims_.z > 0.0;
    if (!(dims_.x > 0.0 && dims_.y > 0.0) || (three_d && !(dims_.z > 0.0)))
        throw geometry_error("room dimensions must be positive");

    auto inside = [&](const Vec3& p) {
        const bool xy = p.x > 0.0 && p.x < dims_.x && p.y > 0.0 && p.y < dims_.y;
        if (!three_d) return xy && p.z == 0.0;
        return xy && p.z > 0.0 && p.z < dims_.z;
    };
    if (!inside(source_)) throw geometry_error("source must lie strictly inside the room");
    if (!inside(receiver_)) throw geometry_error("receiver must lie strictly inside the room");
    if (distance(source_, receiver_) <= 0.0)
        throw geometry_error("source and receiver must be distinct");

    std::vector<Wall> walls = {{0, 0.0}, {0, dims_.x}, {1, 0.0}, {1, dims_.y}};
    if (three_d) {
        walls.push_back({2, 0.0});
        walls.push_back({2, dims_.z});
    }
    const std::size_t n_walls = walls.size();

    if (wall_gains_.size() == 1) wall_gains_.assign(n_walls, wall_gains_[0]);
    if (wall_gains_.size() != n_walls)
        throw geometry_error("need one wall gain per wall (or a single uniform value)");
    for (double g : wall_gains_)
        if (!(g >= 0.0 && g <= 1.0)) throw geometry_error("wall gains must lie in [0, 1]");

    for (const Wall& w : walls) nodes_.push_back(reflection_point(source_, receiver_, w));

    const double direct_dist = distance(source_, receiver_);
    direct_delay_ = direct_dist / c_ * fs_;
    direct_ = Tap{DelayLine(line_capacity(direct_delay_)),
                  FractionalDelay::lagrange(kInterpOrder, direct_delay_),
                  1.0 / direct_dist};

    for (std::size_t k = 0; k < n_walls; ++k) {
        const double d_sk = distance(source_, nodes_[k]);
        const double d_kr = distance(nodes_[k], receiver_);
        const double in_delay = d_sk / c_ * fs_;
        const double out_delay = d_kr / c_ * fs_;
        source_taps_.push_back(Tap{DelayLine(line_capacity(in_delay)),
                                   FractionalDelay::lagrange(kInterpOrder, in_delay),
                                   1.0 / d_sk});
        // spherical spreading over the total first-order path
        receiver_taps_.push_back(Tap{DelayLine(line_capacity(out_delay)),
                                     FractionalDelay::lagrange(kInterpOrder, out_delay),
                                     d_sk / (d_sk + d_kr)});
    }

    for (std::size_t a = 0; a < n_walls; ++a) {
        for (std::size_t b = a + 1; b < n_walls; ++b) {
            const double d = distance(nodes_[a], nodes_[b]) / c_ * fs_;
            if (d < 3.0)
                throw geometry_error("wall nodes closer than the interpolation kernel allows");
            // line values are pushed at the end of a tick and read at the
            // start of the next one, hence the one-sample head start
            lines_.push_back(Line{a, b, DelayLine(line_capacity(d)),
                                  DelayLine(line_capacity(d)),
                                  FractionalDelay::lagrange(kInterpOrder, d - 1.0),
                                  FractionalDelay::lagrange(kInterpOrder, d - 1.0)});
        }
    }

    incoming_.assign(n_walls, std::vector<double>(n_walls - 1, 0.0));
    outgoing_.assign(n_walls, std::vector<double>(n_walls - 1, 0.0));
}

double SdnRoom::first_order_delay_samples(std::size_t k) const {
    return (distance(source_, nodes_[k]) + distance(nodes_[k], receiver_)) / c_ * fs_;
}

double SdnRoom::tick(double input) {
    const std::size_t n = nodes_.size();
    const std::size_t degree = n - 1;

    // read every delayed value against the pre-tick line states
    direct_.line.push(input);
    double out = direct_.gain * direct_.line.read(direct_.read);

    std::vector<double> source_arrivals(n);
    for (std::size_t k = 0; k < n; ++k) {
        source_taps_[k].line.push(input);
        source_arrivals[k] = source_taps_[k].gain * source_taps_[k].line.read(source_taps_[k].read);
    }

    // gather node inputs: port p of node k carries the line from its p-th peer
    for (auto& ports : incoming_)
        std::fill(ports.begin(), ports.end(), 0.0);
    for (const Line& line : lines_) {
        const std::size_t pa = line.b > line.a ? line.b - 1 : line.b;
        const std::size_t pb = line.a > line.b ? line.a - 1 : line.a;
        incoming_[line.a][pa] = line.ba.read(line.read_ba);
        incoming_[line.b][pb] = line.ab.read(line.read_ab);
    }

    // scatter: S = (2/K) J - I with the half-amplitude source injection
    for (std::size_t k = 0; k < n; ++k) {
        auto& in = incoming_[k];
        auto& og = outgoing_[k];
        double sum = 0.0;
        for (std::size_t p = 0; p < degree; ++p) {
            in[p] += 0.5 * source_arrivals[k];
            sum += in[p];
        }
        const double mix = 2.0 / static_cast<double>(degree) * sum;
        const double g = wall_gains_[k];
        double node_out_sum = 0.0;
        for (std::size_t p = 0; p < degree; ++p) {
            og[p] = g * (mix - in[p]);
            node_out_sum += og[p];
        }
        receiver_taps_[k].line.push(2.0 / static_cast<double>(degree) * node_out_sum);
        out += receiver_taps_[k].gain * receiver_taps_[k].line.read(receiver_taps_[k].read);
    }

    // propagate scattered waves into the inter-node lines
    for (Line& line : lines_) {
        const std::size_t pa = line.b > line.a ? line.b - 1 : line.b;
        const std::size_t pb = line.a > line.b ? line.a - 1 : line.a;
        line.ab.push(outgoing_[line.a][pa]);
        line.ba.push(outgoing_[line.b][pb]);
    }
    return out;
}

std::vector<double> SdnRoom::render_ir(double duration_s) {
    if (!(duration_s > 0.0)) throw std::invalid_argument("IR duration must be positive");
    const auto n = static_cast<std::size_t>(std::llround(duration_s * fs_));
    std::vector<double> ir(n);
    for (std::size_t i = 0; i < n; ++i) ir[i] = tick(i == 0 ? 1.0 : 0.0);
    return ir;
}

SdnRoom sdn_build(Vec3 room_dims, Vec3 source, Vec3 receiver,
                  std::vector<double> wall_gains, double sample_rate, double sound_speed) {
    return SdnRoom(room_dims, source, receiver, std::move(wall_gains), sample_rate,
                   sound_speed);
}

std::vector<double> sdn_render_ir(SdnRoom& room, double duration_s) {
    return room.render_ir(duration_s);
}

double sdn_rt60(std::span<const double> ir, double sample_rate) {
    double total = 0.0;
    for (double x : ir) total += x * x;
    if (!(total > 0.0)) throw measurement_error("impulse response is silent");

    // Schroeder backward integration in dB relative to the full energy
    std::vector<double> edc(ir.size());
    double acc = 0.0;
    for (std::size_t i = ir.size(); i-- > 0;) {
        acc += ir[i] * ir[i];
        edc[i] = 10.0 * std::log10(acc / total);
    }

    std::size_t t5 = edc.size(), t35 = edc.size();
    for (std::size_t i = 0; i < edc.size(); ++i) {
        if (t5 == edc.size() && edc[i] <= -5.0) t5 = i;
        if (edc[i] <= -35.0) {
            t35 = i;
            break;
        }
    }
    if (t5 >= edc.size() || t35 >= edc.size() || t35 <= t5)
        throw measurement_error("decay never spans the -5 .. -35 dB range");

    // least-squares line over the span, slope in dB per sample
    const std::size_t count = t35 - t5 + 1;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = t5; i <= t35; ++i) {
        const double x = static_cast<double>(i - t5);
        sx += x;
        sy += edc[i];
        sxx += x * x;
        sxy += x * edc[i];
    }
    const double nr = static_cast<double>(count);
    const double slope = (nr * sxy - sx * sy) / (nr * sxx - sx * sx);
    if (!(slope < 0.0)) throw measurement_error("energy decay curve has no negative slope");
    return -60.0 / slope / sample_rate;
}

}  // namespace wg
