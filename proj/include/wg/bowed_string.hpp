#pragma once

#include <vector>

#include "wg/traveling_wave.hpp"

namespace wg {

struct BowParams {
    double bow_velocity = 0.2;   // m/s
    double bow_force = 1.0;      // N
    double bow_position = 0.25;  // fraction of string length in (0, 1)
    double friction_slope = 5.0; // capture width = bow_force / friction_slope
};

// Reflection function rho(v_delta) in [0, 1]: 1 inside the capture region
// (stick), decaying slip branch outside. Either the built-in analytic family
// or a user-supplied sampled curve with linear interpolation.
class FrictionCurve {
public:
    // |v| <= w: 1; otherwise (w/|v|)^2. Zero force gives a transparent bow.
    static FrictionCurve analytic(double capture_width);
    static FrictionCurve from_table(std::vector<double> v_delta, std::vector<double> rho);

    double operator()(double v_delta) const;

private:
    FrictionCurve() = default;
    bool table_ = false;
    double width_ = 0.0;
    std::vector<double> xs_, ys_;
};

// Two string segments joined by a nonlinear two-port at the bow. The bow adds
// a common correction rho * (v_bow - incoming sum) to both transmitted waves:
// transparent at rho = 0, velocity-captured at rho = 1.
class BowedString {
public:
    BowedString(std::size_t length, const BowParams& bow);
    BowedString(std::size_t length, const BowParams& bow, FrictionCurve curve);

    double tick();
    std::vector<double> render(std::size_t n_samples);

    // Physical string velocity at the bow after the current tick's scattering.
    double junction_velocity() const { return junction_velocity_; }

    std::size_t length() const { return left_.length() + right_.length(); }
    void set_bow_velocity(double v) { bow_.bow_velocity = v; }

private:
    BowParams bow_;
    FrictionCurve curve_;
    TravelingWaveLine left_;
    TravelingWaveLine right_;
    std::size_t pickup_;
    double junction_velocity_ = 0.0;
};

}  // namespace wg
