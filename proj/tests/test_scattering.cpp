#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wg/scattering.hpp"

using namespace wg;

TEST_CASE("string impedance and wave speed") {
    auto [r, c] = string_impedance(100.0, 0.01);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c == doctest::Approx(100.0).epsilon(1e-14));

    std::tie(r, c) = string_impedance(1.0, 1.0);
    CHECK(r == doctest::Approx(1.0));
    CHECK(c == doctest::Approx(1.0));

    std::tie(r, c) = string_impedance(4.0, 1.0);
    CHECK(r == doctest::Approx(2.0));
    CHECK(c == doctest::Approx(2.0));

    CHECK_THROWS_AS(string_impedance(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(string_impedance(1.0, -2.0), std::domain_error);
}

TEST_CASE("string medium identities R*c = K and R/c = mu") {
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        const double k = std::exp((static_cast<double>(rng()) / 4294967296.0 - 0.5) * 10.0);
        const double mu = std::exp((static_cast<double>(rng()) / 4294967296.0 - 0.5) * 10.0);
        StringMedium m{k, mu};
        CHECK(m.impedance() * m.wave_speed() == doctest::Approx(k).epsilon(1e-12));
        CHECK(m.impedance() / m.wave_speed() == doctest::Approx(mu).epsilon(1e-12));
    }
}

TEST_CASE("tube impedance rho c / A") {
    CHECK(tube_impedance(0.001, 1.2, 343.0) == doctest::Approx(411600.0).epsilon(1e-12));
    CHECK(tube_impedance(0.002, 1.2, 343.0) == doctest::Approx(205800.0).epsilon(1e-12));
    CHECK(tube_impedance(1.2 * 343.0, 1.2, 343.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(tube_impedance(0.0, 1.2, 343.0), std::domain_error);
}

TEST_CASE("reflection coefficient and symbolic limits") {
    CHECK(reflection_coefficient(Impedance::finite(1.0), Impedance::finite(3.0)) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(reflection_coefficient(Impedance::finite(2.5), Impedance::finite(2.5)) == 0.0);
    CHECK(reflection_coefficient(Impedance::finite(1.0), Impedance::rigid()) == 1.0);
    CHECK(reflection_coefficient(Impedance::finite(1.0), Impedance::free()) == -1.0);
    CHECK(reflection_coefficient(Impedance::rigid(), Impedance::finite(1.0)) == -1.0);
    CHECK(reflection_coefficient(Impedance::free(), Impedance::finite(1.0)) == 1.0);
    CHECK_THROWS_AS(reflection_coefficient(Impedance::rigid(), Impedance::rigid()),
                    std::domain_error);
    CHECK_THROWS_AS(reflection_coefficient(Impedance::free(), Impedance::free()),
                    std::domain_error);
}

TEST_CASE("reflection antisymmetry") {
    std::mt19937 rng(9);
    for (int i = 0; i < 200; ++i) {
        const double a = std::exp((static_cast<double>(rng()) / 4294967296.0 - 0.5) * 12.0);
        const double b = std::exp((static_cast<double>(rng()) / 4294967296.0 - 0.5) * 12.0);
        const double r12 = reflection_coefficient(Impedance::finite(a), Impedance::finite(b));
        const double r21 = reflection_coefficient(Impedance::finite(b), Impedance::finite(a));
        CHECK(r12 == doctest::Approx(-r21).epsilon(1e-15));
        CHECK(std::abs(r12) < 1.0);
    }
}

TEST_CASE("area reflection coefficient") {
    CHECK(area_reflection_coefficient(2.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(area_reflection_coefficient(5.0, 5.0) == 0.0);
    CHECK(area_reflection_coefficient(1.0, 3.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(area_reflection_coefficient(-1.0, 1.0), std::domain_error);
}

TEST_CASE("two-port scattering equations") {
    auto s = scatter_two_port(0.5, 1.0, WaveKind::force_or_pressure);
    CHECK(s.reflected == doctest::Approx(0.5));
    CHECK(s.transmitted == doctest::Approx(1.5));

    s = scatter_two_port(0.5, 1.0, WaveKind::velocity);
    CHECK(s.reflected == doctest::Approx(-0.5));
    CHECK(s.transmitted == doctest::Approx(0.5));

    s = scatter_two_port(0.0, 0.77, WaveKind::force_or_pressure);
    CHECK(s.reflected == 0.0);
    CHECK(s.transmitted == 0.77);
    s = scatter_two_port(0.0, 0.77, WaveKind::velocity);
    CHECK(s.reflected == doctest::Approx(0.0));
    CHECK(s.transmitted == 0.77);
}

TEST_CASE("termination limits are exact") {
    // rigid: r -> +1, velocity reflects inverted with no transmission
    auto s = scatter_two_port(1.0, 0.8, WaveKind::velocity);
    CHECK(s.reflected == -0.8);
    CHECK(s.transmitted == 0.0);
    // free end: r -> -1, non-inverting reflection, doubled transmission
    s = scatter_two_port(-1.0, 0.8, WaveKind::velocity);
    CHECK(s.reflected == 0.8);
    CHECK(s.transmitted == doctest::Approx(1.6).epsilon(1e-15));
    CHECK_THROWS_AS(scatter_two_port(1.5, 1.0, WaveKind::velocity), std::domain_error);
}

TEST_CASE("wave conversion to force waves") {
    auto [fp, fm] = wave_convert(2.0, 3.0, 1.0);
    CHECK(fp == 6.0);
    CHECK(fm == -2.0);
    std::tie(fp, fm) = wave_convert(1.0, 0.0, 0.0);
    CHECK(fp == 0.0);
    CHECK(fm == 0.0);
    std::tie(fp, fm) = wave_convert(1.0, 1.0, 1.0);
    CHECK(fp == 1.0);
    CHECK(fm == -1.0);
}

TEST_CASE("junction power: both sides of the balance") {
    auto [in, out] = junction_power(0.5, 1.0, 0.5);
    CHECK(in == doctest::Approx(0.5));
    CHECK(out == doctest::Approx(0.5));

    std::tie(in, out) = junction_power(0.0, 1.7, -2.3);
    CHECK(in == doctest::Approx(1.7 * -2.3));
    CHECK(out == doctest::Approx(1.7 * -2.3));

    std::tie(in, out) = junction_power(-0.9, 2.0, 1.0);
    CHECK(in == doctest::Approx(2.0));
    CHECK(out == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("losslessness over 1e5 random junctions") {
    std::mt19937 rng(1234);
    auto log_uniform = [&] {
        const double u = static_cast<double>(rng()) / 4294967296.0;
        return std::pow(10.0, -3.0 + 6.0 * u);
    };
    for (int i = 0; i < 100000; ++i) {
        const double r1 = log_uniform();
        const double r2 = log_uniform();
        const double v_plus = (static_cast<double>(rng()) / 4294967296.0 - 0.5) * 4.0;
        const double f_plus = r1 * v_plus;
        const double r = reflection_coefficient(Impedance::finite(r1), Impedance::finite(r2));
        const auto [incident, outgoing] = junction_power(r, f_plus, v_plus);
        CHECK(std::abs(incident - outgoing) <= 1e-12 * std::max(1.0, std::abs(incident)));
    }
}

TEST_CASE("n-port equal-impedance junction") {
    const double in4[] = {1.0, 0.0, 0.0, 0.0};
    auto s = scatter_nport_equal(in4);
    CHECK(s.junction_velocity == doctest::Approx(0.5));
    CHECK(s.outgoing[0] == doctest::Approx(-0.5));
    CHECK(s.outgoing[1] == doctest::Approx(0.5));
    CHECK(s.outgoing[2] == doctest::Approx(0.5));
    CHECK(s.outgoing[3] == doctest::Approx(0.5));

    const double same[] = {0.3, 0.3, 0.3, 0.3};
    s = scatter_nport_equal(same);
    CHECK(s.junction_velocity == doctest::Approx(0.6));
    for (double o : s.outgoing) CHECK(o == doctest::Approx(0.3));

    const double two[] = {1.0, -1.0};
    s = scatter_nport_equal(two);
    CHECK(s.junction_velocity == 0.0);
    CHECK(s.outgoing[0] == doctest::Approx(-1.0));
    CHECK(s.outgoing[1] == doctest::Approx(1.0));

    const double one[] = {1.0};
    CHECK_THROWS_AS(scatter_nport_equal({one, 1}), std::invalid_argument);
}

TEST_CASE("n-port preserves sum and energy") {
    std::mt19937 rng(77);
    for (int n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> in(static_cast<std::size_t>(n));
            for (auto& x : in) x = (static_cast<double>(rng()) / 4294967296.0 - 0.5) * 2.0;
            const auto s = scatter_nport_equal(in);
            double sum_in = 0.0, sum_out = 0.0, e_in = 0.0, e_out = 0.0;
            for (int i = 0; i < n; ++i) {
                sum_in += in[static_cast<std::size_t>(i)];
                sum_out += s.outgoing[static_cast<std::size_t>(i)];
                e_in += in[static_cast<std::size_t>(i)] * in[static_cast<std::size_t>(i)];
                e_out += s.outgoing[static_cast<std::size_t>(i)] *
                         s.outgoing[static_cast<std::size_t>(i)];
            }
            CHECK(std::abs(sum_in - sum_out) <= 1e-12 * std::max(1.0, std::abs(sum_in)));
            CHECK(std::abs(e_in - e_out) <= 1e-12 * std::max(1.0, e_in));
        }
    }
}

TEST_CASE("two-port matches the direct junction solve") {
    // single incident wave: library scattering vs brute-force constraint solve
    std::mt19937 rng(41);
    for (int i = 0; i < 1000; ++i) {
        const double r1 = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(rng()) / 4294967296.0);
        const double r2 = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(rng()) / 4294967296.0);
        const double v_in = (static_cast<double>(rng()) / 4294967296.0 - 0.5) * 2.0;

        const double r = reflection_coefficient(Impedance::finite(r1), Impedance::finite(r2));
        const auto lib = scatter_two_port(r, v_in, WaveKind::velocity);
        const auto ref = oracle::solve_series_junction(r1, r2, v_in, 0.0);
        CHECK(lib.reflected == doctest::Approx(ref.v1_out).epsilon(1e-12));
        CHECK(lib.transmitted == doctest::Approx(ref.v2_out).epsilon(1e-12));
    }
}

TEST_CASE("n-port with n = 2 agrees with the junction solve at equal impedance") {
    std::mt19937 rng(43);
    for (int i = 0; i < 1000; ++i) {
        const double a = (static_cast<double>(rng()) / 4294967296.0 - 0.5) * 2.0;
        const double b = (static_cast<double>(rng()) / 4294967296.0 - 0.5) * 2.0;
        const double in2[] = {a, b};
        const auto s = scatter_nport_equal(in2);
        const auto ref = oracle::solve_series_junction(1.0, 1.0, a, b);
        CHECK(s.junction_velocity == doctest::Approx(ref.v_junction).epsilon(1e-12));
        CHECK(s.outgoing[0] == doctest::Approx(ref.v1_out).epsilon(1e-12));
        CHECK(s.outgoing[1] == doctest::Approx(ref.v2_out).epsilon(1e-12));
    }
}
