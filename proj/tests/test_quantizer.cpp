#include <doctest.h>

#include <cmath>

#include "ascan/link_sim.hpp"
#include "ascan/quantizer.hpp"
#include "ascan/rng.hpp"

using namespace ascan;

TEST_CASE("codebook points are fixed points") {
    const AdcModel adc{4, 1.0};
    const double step = quantizer_step(adc, 1.0);
    CVec v;
    for (int k = -8; k < 8; ++k) v.push_back({(k + 0.5) * step, (-k - 0.5) * step});
    const CVec q = quantize(v, adc);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(q[i] == v[i]);
}

TEST_CASE("monotone, bounded error, exact half-step at decision boundaries") {
    const AdcModel adc{6, 2.0};
    const double step = quantizer_step(adc, 2.0);
    RngStream rng(71, 0);
    double prev_q = -1e300;
    for (int i = 0; i <= 1000; ++i) {
        const double x = -2.0 + 4.0 * i / 1000.0;
        const double q = quantize_component(x, step, 32.0);
        CHECK(q >= prev_q);
        prev_q = q;
        if (std::abs(x) < 2.0 - step) CHECK(std::abs(q - x) <= step / 2.0 + 1e-15);
    }
    // Decision boundary: error is exactly step/2.
    const double boundary = 3.0 * step;
    CHECK(std::abs(quantize_component(boundary, step, 32.0) - boundary) ==
          doctest::Approx(step / 2.0).epsilon(1e-12));
}

TEST_CASE("full-scale sinusoid lands on the classical SQNR line") {
    // Full-scale tone on each axis (random phase); mid-rise has no zero code,
    // so an idle axis would instead sit at a constant step/2 error.
    RngStream rng(72, 0);
    const int bits = 10;
    const std::size_t n = 200000;
    CVec v(n);
    for (std::size_t s = 0; s < n; ++s) v[s] = std::polar(1.0, 2.0 * M_PI * rng.uniform());
    const CVec q = quantize(v, AdcModel{bits, 0.0});
    double sig = 0, err = 0;
    for (std::size_t s = 0; s < n; ++s) {
        sig += std::norm(v[s]);
        err += std::norm(q[s] - v[s]);
    }
    const double sqnr_db = 10.0 * std::log10(sig / err);
    CHECK(sqnr_db == doctest::Approx(6.02 * bits + 1.76).epsilon(0.005));  // +-0.3 dB
}

TEST_CASE("two-tone with a 90 dB gap buries the weak tone at about -30 dB") {
    RngStream rng(73, 0);
    const std::size_t n = 100000;
    const double strong_amp = std::sqrt(1e9);  // 90 dB above the unit-power weak tone
    CVec v(n);
    double weak_power = 0;
    for (std::size_t s = 0; s < n; ++s) {
        const cxd strong = std::polar(strong_amp, 2.0 * M_PI * rng.uniform());
        const cxd weak = std::polar(1.0, 2.0 * M_PI * rng.uniform());
        weak_power += std::norm(weak);
        v[s] = strong + weak;
    }
    const CVec q = quantize(v, AdcModel{10, 0.0});
    double err = 0;
    for (std::size_t s = 0; s < n; ++s) err += std::norm(q[s] - v[s]);
    const double weak_sqnr_db = 10.0 * std::log10(weak_power / err);
    CHECK(weak_sqnr_db > -32.0);
    CHECK(weak_sqnr_db < -28.0);
}

TEST_CASE("analytic SQNR model") {
    CHECK(sqnr_estimate_db(10, 0.0, 90.0) == doctest::Approx(-29.8));
    CHECK(sqnr_estimate_db(10, 0.0, 0.0) == doctest::Approx(60.2));
    CHECK(sqnr_estimate_db(16, 0.0, 70.0) == doctest::Approx(26.32));
    CHECK_THROWS_AS(sqnr_estimate_db(0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("measured weak-signal SQNR tracks the model within 2 dB") {
    RngStream rng(74, 0);
    for (int bits : {6, 10, 14}) {
        for (double ratio : {40.0, 70.0, 90.0}) {
            const double measured = measure_weak_sqnr_db(bits, ratio, 100000, rng);
            const double model = sqnr_estimate_db(bits, 0.0, ratio);
            CAPTURE(bits);
            CAPTURE(ratio);
            CHECK(std::abs(measured - model) < 2.0);
        }
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(quantize(CVec{cxd{std::nan(""), 0}}, AdcModel{6, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(quantizer_step(AdcModel{0, 0.0}, 1.0), std::invalid_argument);
}
