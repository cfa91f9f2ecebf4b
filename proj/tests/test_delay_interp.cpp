#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wg/delay_line.hpp"
#include "wg/fractional_delay.hpp"
#include "wg/loop_filter.hpp"

using namespace wg;

TEST_CASE("lagrange coefficients match the product formula") {
    // order 1, delay 0.5: h_k = prod (d - m)/(k - m)
    auto h = lagrange_coefficients(1, 0.5);
    CHECK(h[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(h[1] == doctest::Approx(0.5).epsilon(1e-14));

    h = lagrange_coefficients(1, 0.0);
    CHECK(h[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h[1] == doctest::Approx(0.0).epsilon(1e-14));

    h = lagrange_coefficients(3, 1.5);
    CHECK(h[0] == doctest::Approx(-0.0625).epsilon(1e-13));
    CHECK(h[1] == doctest::Approx(0.5625).epsilon(1e-13));
    CHECK(h[2] == doctest::Approx(0.5625).epsilon(1e-13));
    CHECK(h[3] == doctest::Approx(-0.0625).epsilon(1e-13));
}

TEST_CASE("lagrange coefficients sum to one across the window") {
    std::mt19937 rng(11);
    for (int order = 1; order <= 5; ++order) {
        const double lo = (order - 1) / 2.0;
        for (int i = 0; i < 50; ++i) {
            const double d = lo + static_cast<double>(rng()) / 4294967296.0;
            const auto h = lagrange_coefficients(order, d);
            double sum = 0.0;
            for (double c : h) sum += c;
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("lagrange delay window is enforced") {
    CHECK_THROWS_AS(lagrange_coefficients(1, 1.5), std::out_of_range);
    CHECK_THROWS_AS(lagrange_coefficients(3, 0.5), std::out_of_range);
    CHECK_THROWS_AS(lagrange_coefficients(0, 0.0), std::out_of_range);
}

TEST_CASE("order-3 lagrange reproduces sampled cubics exactly") {
    std::mt19937 rng(5);
    auto coeff = [&] { return (static_cast<double>(rng()) / 4294967296.0 - 0.5) * 4.0; };
    for (int trial = 0; trial < 40; ++trial) {
        const double c0 = coeff(), c1 = coeff(), c2 = coeff(), c3 = coeff();
        auto poly = [&](double t) { return c0 + c1 * t + c2 * t * t + c3 * t * t * t; };
        const double d = 1.0 + static_cast<double>(rng()) / 4294967296.0;  // in [1, 2]
        const auto h = lagrange_coefficients(3, d);
        // interpolate p(d) from samples p(0..3); taps k map to time k
        double acc = 0.0;
        for (int k = 0; k <= 3; ++k) acc += h[static_cast<std::size_t>(k)] * poly(k);
        CHECK(std::abs(acc - poly(d)) < 1e-10);
    }
}

TEST_CASE("allpass coefficient formula and range errors") {
    CHECK(allpass_coefficient(1.0) == doctest::Approx(0.0));
    CHECK(allpass_coefficient(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(allpass_coefficient(0.2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(allpass_coefficient(0.0), std::out_of_range);
    CHECK_THROWS_AS(allpass_coefficient(-0.1), std::out_of_range);
    CHECK_THROWS_AS(allpass_coefficient(1.2), std::out_of_range);
}

TEST_CASE("allpass interpolator magnitude is 1 on a 1024-point grid") {
    for (double d : {0.1, 0.25, 0.5, 0.75, 0.99, 1.0}) {
        const double a = allpass_coefficient(d);
        for (int i = 1; i < 1024; ++i) {
            const double w = std::numbers::pi * i / 1024.0;
            const std::complex<double> z = std::exp(std::complex<double>(0.0, -w));
            const std::complex<double> h = (a + z) / (1.0 + a * z);
            CHECK(std::abs(std::abs(h) - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("delay line reproduces integer delays exactly") {
    DelayLine line(8);
    std::mt19937 rng(17);
    std::vector<double> history;
    for (int n = 0; n < 200; ++n) {
        const double x = static_cast<double>(rng()) / 4294967296.0 - 0.5;
        history.push_back(x);
        line.push(x);
        for (std::size_t d = 0; d < 8 && d <= static_cast<std::size_t>(n); ++d)
            CHECK(line.read(d) == history[history.size() - 1 - d]);
    }
    CHECK_THROWS_AS(line.read(8), std::out_of_range);
}

TEST_CASE("delay line tick: pure integer delay") {
    DelayLine line(4);
    // inputs 1,0,0 at read_delay 2 -> outputs 0,0,1
    CHECK(delay_line_tick(line, 1.0, 2) == 0.0);
    CHECK(delay_line_tick(line, 0.0, 2) == 0.0);
    CHECK(delay_line_tick(line, 0.0, 2) == 1.0);
}

TEST_CASE("delay line tick: half-sample lagrange impulse response") {
    DelayLine line(8);
    auto interp = FractionalDelay::lagrange(1, 1.5);
    CHECK(delay_line_tick(line, 1.0, interp) == doctest::Approx(0.0));
    CHECK(delay_line_tick(line, 0.0, interp) == doctest::Approx(0.5));
    CHECK(delay_line_tick(line, 0.0, interp) == doctest::Approx(0.5));
    CHECK(delay_line_tick(line, 0.0, interp) == doctest::Approx(0.0));
}

TEST_CASE("delay line tick: zero delay identity") {
    DelayLine line(4);
    auto interp = FractionalDelay::identity();
    for (double x : {0.3, -1.2, 0.0, 5.0})
        CHECK(delay_line_tick(line, x, interp) == x);
}

TEST_CASE("fractional delay splits the integer part") {
    const auto fd = FractionalDelay::lagrange(3, 10.25);
    CHECK(fd.base_tap() == 9);
    CHECK(fd.delay() == doctest::Approx(10.25));
    const auto ap = FractionalDelay::allpass(10.25);
    CHECK(ap.base_tap() == 10);
    const auto ap_whole = FractionalDelay::allpass(10.0);
    CHECK(ap_whole.base_tap() == 9);  // d = 1.0 -> coefficient 0
}

TEST_CASE("allpass read head converges to the delayed signal") {
    DelayLine line(32);
    auto interp = FractionalDelay::allpass(5.5);
    // sine delayed by 5.5 samples, after the transient dies down
    const double w = 0.05;
    double max_err = 0.0;
    for (int n = 0; n < 400; ++n) {
        const double x = std::sin(w * n);
        const double y = delay_line_tick(line, x, interp);
        if (n > 100) max_err = std::max(max_err, std::abs(y - std::sin(w * (n - 5.5))));
    }
    CHECK(max_err < 1e-3);
}

TEST_CASE("loop filter: identity, averager, delay responses") {
    LoopFilter identity = LoopFilter::identity();
    CHECK(identity.process(1.0) == 1.0);
    CHECK(identity.process(0.25) == 0.25);

    LoopFilter avg = LoopFilter::two_point_average();
    CHECK(avg.process(1.0) == 0.5);
    CHECK(avg.process(0.0) == 0.5);
    CHECK(avg.process(0.0) == 0.0);

    // phase delays at assorted frequencies
    for (double f : {100.0, 441.0, 1000.0, 5000.0, 15000.0}) {
        CHECK(filter_phase_delay(LoopFilter::two_point_average(), f, 44100.0) ==
              doctest::Approx(0.5).epsilon(1e-9));
        CHECK(filter_phase_delay(LoopFilter::identity(), f, 44100.0) ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK(filter_phase_delay(LoopFilter::fir({0.0, 1.0}), f, 44100.0) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(filter_phase_delay(identity, 22050.0, 44100.0), std::out_of_range);
    CHECK_THROWS_AS(filter_phase_delay(identity, -1.0, 44100.0), std::out_of_range);
}

TEST_CASE("loop filter rejects unstable poles") {
    CHECK_THROWS_AS(LoopFilter({1.0}, {1.0, -1.0}), std::invalid_argument);       // pole at 1
    CHECK_THROWS_AS(LoopFilter({1.0}, {1.0, -1.5}), std::invalid_argument);       // outside
    CHECK_THROWS_AS(LoopFilter({1.0}, {1.0, 0.0, 1.0}), std::invalid_argument);   // |poles| = 1
    CHECK_NOTHROW(LoopFilter({1.0}, {1.0, -0.99}));
    CHECK_NOTHROW(LoopFilter({1.0}, {1.0, -0.3, 0.2}));
    // order-4 with all poles at radius 0.9 (stable) and 1.1 (not)
    auto expand = [](double radius) {
        // (1 - r z^-1)^4 expanded
        const double r = radius;
        return std::vector<double>{1.0, -4.0 * r, 6.0 * r * r, -4.0 * r * r * r,
                                   r * r * r * r};
    };
    CHECK_NOTHROW(LoopFilter({1.0}, expand(0.9)));
    CHECK_THROWS_AS(LoopFilter({1.0}, expand(1.1)), std::invalid_argument);
}

TEST_CASE("one-pole lowpass has unit DC gain and the requested pole") {
    LoopFilter lp = LoopFilter::one_pole_lowpass(0.7);
    CHECK(lp.magnitude(1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    // magnitude at Nyquist: (1-p)/(1+p)
    CHECK(lp.magnitude(std::numbers::pi) == doctest::Approx(0.3 / 1.7).epsilon(1e-9));
    // impulse response is (1-p) p^n
    LoopFilter imp = LoopFilter::one_pole_lowpass(0.7);
    double expected = 0.3;
    double x = 1.0;
    for (int n = 0; n < 10; ++n) {
        CHECK(imp.process(x) == doctest::Approx(expected).epsilon(1e-12));
        x = 0.0;
        expected *= 0.7;
    }
}

TEST_CASE("phase delay of a heavy one-pole is continuous and positive") {
    LoopFilter lp = LoopFilter::one_pole_lowpass(0.995);
    const double pd_low = filter_phase_delay(lp, 20.0, 44100.0);
    const double pd_mid = filter_phase_delay(lp, 200.0, 44100.0);
    CHECK(pd_low > pd_mid);
    CHECK(pd_mid > 0.0);
}
