// Independent reference implementations used only by tests. These stay
// separate from the library code paths they check.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

// O(n^2) DFT for validating the fft.
inline std::vector<std::complex<double>> naive_dft(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) *
                               static_cast<double>(i) / static_cast<double>(n);
            acc += x[i] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

// Direct solve of the junction constraints (velocity continuity plus force
// balance through the junction) for two incident velocity waves.
struct JunctionSolve {
    double v1_out;  // reflected into side 1
    double v2_out;  // transmitted into side 2
    double v_junction;
};

inline JunctionSolve solve_series_junction(double r1, double r2, double v1_in,
                                           double v2_in) {
    // unknowns: v1_out (left-going on side 1), v2_out (right-going on side 2)
    //   v1_in + v1_out = v2_out + v2_in          (common junction velocity)
    //   r1 (v1_in - v1_out) = r2 (v2_out - v2_in) (force continuity, f = R v+ - R v-)
    const double v_j = (2.0 * r1 * v1_in + 2.0 * r2 * v2_in) / (r1 + r2);
    return {v_j - v1_in, v_j - v2_in, v_j};
}

// Step-by-step Kelly-Lochbaum simulator built from per-junction two-port
// scattering of both incident waves; one sample of delay per section and
// direction, matching the model's timing convention.
class KlReference {
public:
    KlReference(std::vector<double> areas, double glottal_r, double lip_r)
        : r_glottis_(glottal_r), r_lip_(lip_r) {
        const std::size_t m = areas.size();
        r_.resize(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i)
            r_[i] = (areas[i] - areas[i + 1]) / (areas[i] + areas[i + 1]);
        plus_.assign(m, 0.0);
        minus_.assign(m, 0.0);
    }

    double tick(double input) {
        const std::size_t m = plus_.size();
        const double out = (1.0 + r_lip_) * plus_[m - 1];
        std::vector<double> np(m, 0.0), nm(m, 0.0);
        np[0] = input + r_glottis_ * minus_[0];
        nm[m - 1] = r_lip_ * plus_[m - 1];
        for (std::size_t j = 0; j + 1 < m; ++j) {
            // pressure-wave scattering of both incident waves, superposed
            const double a = plus_[j];
            const double b = minus_[j + 1];
            const double reflected_a = r_[j] * a;
            const double transmitted_a = (1.0 + r_[j]) * a;
            const double reflected_b = -r_[j] * b;
            const double transmitted_b = (1.0 - r_[j]) * b;
            np[j + 1] = transmitted_a + reflected_b;
            nm[j] = reflected_a + transmitted_b;
        }
        plus_ = np;
        minus_ = nm;
        return out;
    }

private:
    std::vector<double> r_;
    double r_glottis_, r_lip_;
    std::vector<double> plus_, minus_;
};

// Image-source geometry for a 2D shoebox: first-order path length via the
// mirrored source.
inline double first_order_path(double lx, double ly, double sx, double sy, double rx,
                               double ry, int wall) {
    double mx = sx, my = sy;
    if (wall == 0) mx = -sx;               // x = 0
    if (wall == 1) mx = 2.0 * lx - sx;     // x = Lx
    if (wall == 2) my = -sy;               // y = 0
    if (wall == 3) my = 2.0 * ly - sy;     // y = Ly
    const double dx = mx - rx, dy = my - ry;
    return std::sqrt(dx * dx + dy * dy);
}

inline double cents(double measured, double reference) {
    return 1200.0 * std::log2(measured / reference);
}

}  // namespace oracle
