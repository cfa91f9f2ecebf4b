#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "wg/loop_filter.hpp"

namespace wg {

// Piecewise-cylindrical tube as a ladder of pressure-wave scattering
// junctions. One sample of one-way delay per section, so a tract of M
// sections delays glottis-to-lips by exactly M samples.
class KellyLochbaumTract {
public:
    KellyLochbaumTract(std::vector<double> areas, double glottal_reflection,
                       double lip_reflection);

    std::size_t sections() const { return areas_.size(); }
    const std::vector<double>& areas() const { return areas_; }
    const std::vector<double>& junction_reflections() const { return junction_r_; }
    double glottal_reflection() const { return glottal_r_; }
    double lip_reflection() const { return lip_r_; }

    // Advances one sample; returns the pressure transmitted past the lips.
    double tick(double glottal_input);

    std::vector<double> render(std::span<const double> glottal_input);

    void clear();

private:
    std::vector<double> areas_;
    std::vector<double> junction_r_;
    double glottal_r_;
    double lip_r_;
    std::vector<double> p_plus_;
    std::vector<double> p_minus_;
    std::vector<double> next_plus_;
    std::vector<double> next_minus_;
};

KellyLochbaumTract kl_build(std::vector<double> areas, double glottal_reflection,
                            double lip_reflection);

// Reed reflection coefficient over the pressure-difference axis, sampled on a
// uniform grid with linear interpolation between points. rho = 1 at and past
// the closure pressure; monotone non-increasing toward maximum opening.
class ReedTable {
public:
    ReedTable(std::vector<double> grid, double h_min, double h_max);

    // clamp(1 - slope * (closure - h), 0, 1) sampled over [h_min, h_max];
    // `embouchure` shifts the closure point.
    static ReedTable analytic(double embouchure, std::size_t grid_size,
                              double slope = 4.0, double h_min = -1.0,
                              double h_max = 1.0);

    // Plain-text import: one "h rho" pair per line, '#' comments allowed.
    // Arbitrary ascending h values are resampled onto a uniform grid.
    static ReedTable from_stream(std::istream& in, std::size_t grid_size = 256);
    static ReedTable from_file(const std::string& path, std::size_t grid_size = 256);

    double operator()(double h_delta) const;

    std::size_t size() const { return grid_.size(); }
    double h_min() const { return h_min_; }
    double h_max() const { return h_max_; }
    const std::vector<double>& grid() const { return grid_; }

private:
    std::vector<double> grid_;
    double h_min_;
    double h_max_;
};

ReedTable reed_table_build(double embouchure, std::size_t grid_size);

// Single-reed instrument: pressure-wave bore, reed junction at the mouthpiece
// driven by half the mouth pressure, inverting lowpass reflection at the bell.
class Clarinet {
public:
    Clarinet(std::size_t bore_delay, ReedTable reed, LoopFilter bell_lowpass,
             double bell_gain = 0.98);

    double tick(double mouth_pressure);
    std::vector<double> render(std::span<const double> mouth_pressure_envelope,
                               std::size_t n_samples);

    std::size_t bore_delay() const { return bore_.size(); }

private:
    ReedTable reed_;
    LoopFilter bell_filter_;
    double bell_gain_;
    std::vector<double> bore_;    // toward the bell
    std::vector<double> back_;    // toward the mouthpiece
    std::size_t head_ = 0;
};

std::vector<double> clarinet_render(Clarinet& state,
                                    std::span<const double> mouth_pressure_envelope,
                                    std::size_t n_samples);

}  // namespace wg
