#pragma once

#include <span>
#include <utility>
#include <vector>

namespace wg {

// Wave impedance of a 1D medium. The rigid (infinite) and free (zero) limits
// are tagged variants so the termination cases stay exact instead of pushing
// IEEE infinities through the reflection formula.
class Impedance {
public:
    static Impedance finite(double value);
    static Impedance rigid() { return Impedance(Tag::rigid, 0.0); }
    static Impedance free() { return Impedance(Tag::free, 0.0); }

    bool is_rigid() const { return tag_ == Tag::rigid; }
    bool is_free() const { return tag_ == Tag::free; }
    bool is_finite() const { return tag_ == Tag::finite; }
    double value() const;  // finite variants only

private:
    enum class Tag { finite, rigid, free };
    Impedance(Tag tag, double value) : tag_(tag), value_(value) {}
    Tag tag_;
    double value_;
};

// Ideal string described by tension and linear mass density.
// Impedance R = sqrt(K*mu), wave speed c = sqrt(K/mu), so R*c = K and R/c = mu.
struct StringMedium {
    double tension;         // N
    double linear_density;  // kg/m

    double impedance() const;
    double wave_speed() const;
};

enum class WaveKind { force_or_pressure, velocity };

// Two-port interface between impedances with its derived reflection coefficient.
struct JunctionSpec {
    Impedance left;
    Impedance right;
    double reflection;  // (R2 - R1) / (R1 + R2)

    static JunctionSpec between(Impedance left, Impedance right);
};

// (impedance, wave speed) of an ideal string.
std::pair<double, double> string_impedance(double tension, double linear_density);

// rho * c / area: pressure over volume velocity in a cylindrical section.
double tube_impedance(double area_m2, double air_density, double sound_speed);

// (R2 - R1) / (R1 + R2); +1 for a rigid right side, -1 for a free right side.
double reflection_coefficient(Impedance r1, Impedance r2);

// (A_m - A_next) / (A_m + A_next): reflection seen going from section m to m+1.
double area_reflection_coefficient(double area_m, double area_next);

struct TwoPortScatter {
    double reflected;
    double transmitted;
};

// Scattering of a single incident wave at a series junction with reflection
// coefficient r. Force/pressure waves: (r f+, (1+r) f+). Velocity waves:
// (-r v+, (1-r) v+). |r| = 1 is accepted so termination limits evaluate exactly.
TwoPortScatter scatter_two_port(double r, double incident, WaveKind kind);

// f+ = R v+, f- = -R v-.
std::pair<double, double> wave_convert(double impedance, double v_plus, double v_minus);

// Both sides of the power balance at a junction: incident power f+ v+ and the
// outgoing power f2+ v2+ - f1- v1- assembled from the scattering equations.
// Analytically equal; exposed for conservation checks.
std::pair<double, double> junction_power(double r, double f_plus, double v_plus);

struct NPortScatter {
    double junction_velocity;
    std::vector<double> outgoing;
};

// Lossless N-port junction of equal impedances: v_J = (2/N) * sum(incoming),
// outgoing[i] = v_J - incoming[i]. The incoming sum uses pairwise grouping so
// specialized unrolled updates can reproduce it bit for bit.
NPortScatter scatter_nport_equal(std::span<const double> incoming);

// Pairwise-grouped sum shared with the mesh junction update.
double pairwise_sum(std::span<const double> values);

}  // namespace wg
