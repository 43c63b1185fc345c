#include <doctest.h>

#include <cmath>

#include "ascan/factorization.hpp"
#include "ascan/kron_canceller.hpp"
#include "ascan/steering.hpp"

using namespace ascan;

TEST_CASE("steering vector basics") {
    const CVec u = steering_vector({0.0, 4});
    for (const cxd& z : u) CHECK(std::abs(z - cxd{1.0, 0.0}) < 1e-15);

    const CVec v2 = steering_vector({M_PI, 2});
    CHECK(std::abs(v2[0] - cxd{1, 0}) < 1e-15);
    CHECK(std::abs(v2[1] - cxd{-1, 0}) < 1e-12);

    const CVec v3 = steering_vector({2.0 * M_PI / 3.0, 3});
    CHECK(std::abs(v3[1] - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-15);
    CHECK(std::abs(v3[2] - std::polar(1.0, 4.0 * M_PI / 3.0)) < 1e-15);

    CHECK_THROWS_AS(steering_vector({0.0, 1}), std::invalid_argument);
}

TEST_CASE("every steering entry is unit modulus") {
    RngStream rng(31, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const CVec v = steering_vector({20.0 * (rng.uniform() - 0.5), static_cast<std::size_t>(2 + trial % 30)});
        for (const cxd& z : v) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    }
}

TEST_CASE("geometry map") {
    CHECK(theta_from_geometry(M_PI / 2.0, 0.123, 0.456) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(theta_from_geometry(0.0, 0.5, 1.0) == doctest::Approx(M_PI));
    CHECK(theta_from_geometry(M_PI / 3.0, 0.5, 1.0) == doctest::Approx(M_PI / 2.0));
    CHECK_THROWS_AS(theta_from_geometry(0.1, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("steering vector equals its Kronecker components for every plan") {
    RngStream rng(32, 0);
    for (std::size_t n_r : {6u, 12u, 16u, 24u, 36u, 60u, 64u}) {
        for (std::size_t k = 1; k <= k_max(n_r); ++k) {
            for (const FactorizationPlan& plan : enumerate_plans(n_r, k)) {
                const double theta = 2.0 * M_PI * rng.uniform();
                const SteeringParams p{theta, n_r};
                const std::vector<CVec> comps = kron_decompose(p, plan);
                CVec chain{cxd{1.0, 0.0}};
                for (const CVec& c : comps) chain = kron_left(chain, c);
                const CVec v = steering_vector(p);
                for (std::size_t i = 0; i < v.size(); ++i)
                    CHECK(std::abs(chain[i] - v[i]) < 1e-10);
            }
        }
    }
}

TEST_CASE("it channel sampling is reproducible with correct statistics") {
    RngStream a(77, 3), b(77, 3);
    const ItChannel ga = sample_it_channel(4, 4, a);
    const ItChannel gb = sample_it_channel(4, 4, b);
    for (std::size_t i = 0; i < ga.matrix.size(); ++i)
        CHECK(ga.matrix.data()[i] == gb.matrix.data()[i]);

    RngStream rng(78, 0);
    const std::size_t trials = 12500;  // 12500 * 8 entries = 1e5 draws
    double power = 0.0;
    cxd mean = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const ItChannel g = sample_it_channel(2, 4, rng);
        for (std::size_t i = 0; i < g.matrix.size(); ++i) {
            power += std::norm(g.matrix.data()[i]);
            mean += g.matrix.data()[i];
        }
    }
    const double n = static_cast<double>(trials * 8);
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(mean.real() / n) < 3.0 / std::sqrt(2.0 * n));
    CHECK(std::abs(mean.imag() / n) < 3.0 / std::sqrt(2.0 * n));
}

TEST_CASE("compose_received special cases") {
    RngStream rng(79, 0);
    const ItChannel g = sample_it_channel(4, 2, rng);
    CVec x = {cxd{0.3, -0.2}, cxd{1.0, 0.5}};

    SUBCASE("no interference, zero noise: exactly Gx") {
        const CVec y = compose_received(g, x, {}, {}, 0.0, rng);
        const CVec gx = matvec(g.matrix, x);
        for (std::size_t i = 0; i < 4; ++i) CHECK(y[i] == gx[i]);
    }
    SUBCASE("zero signal, one interferer, zero noise") {
        const SwiptChannel sw{cxd{2.0, 1.0}, {0.9, 4}};
        const cxd s1{0.7, 0.7};
        const CVec y = compose_received(g, CVec{cxd{0, 0}, cxd{0, 0}}, {sw}, {s1}, 0.0, rng);
        const CVec v = steering_vector({0.9, 4});
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(y[i] - cxd{2.0, 1.0} * v[i] * s1) < 1e-14);
    }
    SUBCASE("dimension mismatches throw") {
        CHECK_THROWS_AS(compose_received(g, x, {SwiptChannel{1.0, {0.9, 3}}}, {cxd{1, 0}}, 0.0, rng),
                        std::invalid_argument);
        CHECK_THROWS_AS(compose_received(g, x, {}, {cxd{1, 0}}, 0.0, rng), std::invalid_argument);
    }
}

TEST_CASE("interference-to-signal power ratio lands on its target") {
    RngStream rng(80, 0);
    // |a|^2 chosen for a 60 dB ratio against unit-power symbols through an
    // i.i.d. unit-variance channel: per-antenna powers P and |a|^2 P.
    const double p_it = 4.0;
    const double ratio = 1e6;
    const double a_amp = std::sqrt(p_it * ratio);
    const SwiptChannel sw{a_amp, {1.3, 4}};

    double pow_it = 0.0, pow_sw = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        const ItChannel g = sample_it_channel(4, 2, rng);
        // Unit-energy random-phase symbols, total power p_it split over streams.
        CVec x = {std::polar(std::sqrt(p_it / 2.0), 2 * M_PI * rng.uniform()),
                  std::polar(std::sqrt(p_it / 2.0), 2 * M_PI * rng.uniform())};
        const cxd s1 = std::polar(1.0, 2 * M_PI * rng.uniform());
        const CVec y_it = compose_received(g, x, {}, {}, 0.0, rng);
        const CVec y_sw = compose_received(g, CVec{cxd{0, 0}, cxd{0, 0}}, {sw}, {s1}, 0.0, rng);
        for (std::size_t i = 0; i < 4; ++i) {
            pow_it += std::norm(y_it[i]);
            pow_sw += std::norm(y_sw[i]);
        }
    }
    const double measured_db = 10.0 * std::log10(pow_sw / pow_it);
    CHECK(measured_db == doctest::Approx(60.0).epsilon(0.01));  // 60 +- 0.5 dB
}

TEST_CASE("distinct-angle validation") {
    CHECK_NOTHROW(require_distinct_thetas({0.7, 2.1}));
    CHECK_THROWS_AS(require_distinct_thetas({0.7, 0.7 + 5e-10}), std::invalid_argument);
    // Coincidence across the 2*pi wrap is caught too.
    CHECK_THROWS_AS(require_distinct_thetas({0.0, 2.0 * M_PI - 1e-12}), std::invalid_argument);
}

TEST_CASE("compose_received is linear in the signal and in each interference symbol") {
    RngStream rng(81, 0);
    const ItChannel g = sample_it_channel(4, 3, rng);
    const std::vector<SwiptChannel> sw = {{cxd{1.5, -0.5}, {0.8, 4}}, {cxd{0.2, 2.0}, {2.3, 4}}};

    auto rx = [&](const CVec& x, cxd s1, cxd s2) {
        RngStream quiet(0, 0);
        return compose_received(g, x, sw, {s1, s2}, 0.0, quiet);
    };

    const CVec x1 = {cxd{0.3, 1.0}, cxd{-0.4, 0.2}, cxd{1.1, -0.7}};
    const CVec x2 = {cxd{-0.9, 0.1}, cxd{0.6, 0.6}, cxd{0.0, -1.2}};
    const cxd a{0.7, -1.3}, b{2.0, 0.4};

    CVec xab(3);
    for (int i = 0; i < 3; ++i) xab[i] = a * x1[i] + b * x2[i];
    const CVec lhs = rx(xab, a * cxd{0.5, 0.5} + b * cxd{1, 0}, a * cxd{0, 1} + b * cxd{-1, 1});
    const CVec r1 = rx(x1, {0.5, 0.5}, {0, 1});
    const CVec r2 = rx(x2, {1, 0}, {-1, 1});
    for (int i = 0; i < 4; ++i) CHECK(std::abs(lhs[i] - (a * r1[i] + b * r2[i])) < 1e-12);
}
