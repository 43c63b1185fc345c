#include <doctest.h>

#include <cmath>

#include "ascan/rng.hpp"
#include "ascan/single_canceller.hpp"
#include "ascan/spectral.hpp"

using namespace ascan;

TEST_CASE("singular values match an external oracle") {
    // Expected values were computed independently (LAPACK dgesdd via numpy)
    // for these exact literals and frozen here.
    CMat a(4, 3);
    a(0, 0) = {1, 2};    a(0, 1) = {0.5, -1};  a(0, 2) = {-0.3, 0.7};
    a(1, 0) = {2, -0.5}; a(1, 1) = {1, 1};     a(1, 2) = {0, 0.25};
    a(2, 0) = {-1, 0.1}; a(2, 1) = {0.4, 2};   a(2, 2) = {1.5, -0.2};
    a(3, 0) = {0.3, 0.3}; a(3, 1) = {-0.8, 0.6}; a(3, 2) = {2, 1};

    const std::vector<double> sv = singular_values(a);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0] == doctest::Approx(3.72649462458934).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(3.1480062090962679).epsilon(1e-12));
    CHECK(sv[2] == doctest::Approx(1.7279452307287109).epsilon(1e-12));

    // Wide orientation gives the same spectrum.
    const std::vector<double> svh = singular_values(hermitian(a));
    for (std::size_t i = 0; i < 3; ++i) CHECK(svh[i] == doctest::Approx(sv[i]).epsilon(1e-12));

    CMat b(3, 2);
    b(0, 0) = {2, 1}; b(0, 1) = {1, -1};
    b(1, 0) = {0, 0.5}; b(1, 1) = {3, -2};
    b(2, 0) = {1, 0}; b(2, 1) = {-1, 4};
    const std::vector<double> svb = singular_values(b);
    CHECK(svb[0] == doctest::Approx(5.6611352676455562).epsilon(1e-12));
    CHECK(svb[1] == doctest::Approx(2.4902906419572153).epsilon(1e-12));
}

TEST_CASE("identity metrics") {
    const SpectralMetrics m = spectral_metrics(CMat::identity(3));
    CHECK(m.numeric_rank == 3);
    CHECK(m.condition_number == doctest::Approx(1.0));
    CHECK(m.sigma_max == doctest::Approx(1.0));
}

TEST_CASE("scaled para-unitary matrices have condition number one") {
    RngStream rng(21, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const double theta = 2.0 * M_PI * rng.uniform();
        const std::size_t n = static_cast<std::size_t>(3 + trial % 10);
        const PhaseMatrix s = fourier_canceller({theta, n});
        const SpectralMetrics m = spectral_metrics(s.matrix);
        CHECK(m.numeric_rank == n - 1);
        CHECK(std::abs(m.condition_number - 1.0) < 1e-9);
        CHECK(m.sigma_max == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-12));
    }
}

TEST_CASE("duplicated row collapses sigma_min") {
    RngStream rng(22, 0);
    CMat m(3, 4);
    for (std::size_t c = 0; c < 4; ++c) {
        m(0, c) = rng.gaussian_c(1.0);
        m(1, c) = rng.gaussian_c(1.0);
        m(2, c) = m(0, c);
    }
    const SpectralMetrics met = spectral_metrics(m);
    CHECK(met.sigma_min < 1e-12 * met.sigma_max);
    CHECK(met.numeric_rank == 2);
}

TEST_CASE("metrics validate inputs") {
    CMat bad(2, 2);
    bad(0, 0) = {std::nan(""), 0.0};
    CHECK_THROWS_AS(spectral_metrics(bad), std::invalid_argument);
    CHECK_THROWS_AS(spectral_metrics(CMat::identity(2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(spectral_metrics(CMat::identity(2), 1.0), std::invalid_argument);
}

TEST_CASE("gram-based metrics agree with the SVD path") {
    RngStream rng(23, 0);
    for (int trial = 0; trial < 20; ++trial) {
        CMat m(4, 7);
        for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.gaussian_c(1.0);
        const SpectralMetrics svd = spectral_metrics(m);
        const SpectralMetrics gram = metrics_from_row_gram(row_gram(m));
        CHECK(gram.sigma_max == doctest::Approx(svd.sigma_max).epsilon(1e-9));
        CHECK(gram.sigma_min == doctest::Approx(svd.sigma_min).epsilon(1e-7));
        CHECK(gram.numeric_rank == svd.numeric_rank);
    }
}

TEST_CASE("zf pseudo-inverse is a left inverse of tall full-rank matrices") {
    RngStream rng(24, 0);
    for (int trial = 0; trial < 20; ++trial) {
        CMat h(5, 3);
        for (std::size_t i = 0; i < h.size(); ++i) h.data()[i] = rng.gaussian_c(1.0);
        const CMat w = zf_pseudo_inverse(h);
        const CMat wi = matmul(w, h);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                CHECK(std::abs(wi(r, c) - (r == c ? 1.0 : 0.0)) < 1e-9);
    }
}

TEST_CASE("complement projector annihilates its columns and fixes the rest") {
    RngStream rng(25, 0);
    CMat cols(6, 2);
    for (std::size_t i = 0; i < cols.size(); ++i) cols.data()[i] = rng.gaussian_c(1.0);
    const CMat p = complement_projector(cols);

    for (std::size_t j = 0; j < 2; ++j) {
        CVec v(6);
        for (std::size_t r = 0; r < 6; ++r) v[r] = cols(r, j);
        CHECK(max_abs(matvec(p, v)) < 1e-10);
    }
    // Idempotent and Hermitian.
    const CMat pp = matmul(p, p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(std::abs(pp.data()[i] - p.data()[i]) < 1e-10);
    }
    const CMat ph = hermitian(p);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(std::abs(ph.data()[i] - p.data()[i]) < 1e-10);
    // Rank 4 = 6 - 2.
    CHECK(spectral_metrics(p).numeric_rank == 4);
}
