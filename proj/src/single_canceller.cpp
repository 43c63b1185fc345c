#include "ascan/single_canceller.hpp"

#include <cmath>
#include <stdexcept>

#include "ascan/hadamard.hpp"

namespace ascan {

CMat phase_compensation(const SteeringParams& p) {
    if (p.n_antennas < 2) throw std::invalid_argument("phase_compensation: need at least 2 antennas");
    CMat r(p.n_antennas, p.n_antennas);
    for (std::size_t k = 0; k < p.n_antennas; ++k)
        r(k, k) = std::polar(1.0, -static_cast<double>(k) * p.theta);
    return r;
}

CMat truncated_fourier(std::size_t n) {
    if (n < 2) throw std::invalid_argument("truncated_fourier: order must be >= 2");
    CMat f(n - 1, n);
    const double w = -2.0 * M_PI / static_cast<double>(n);
    for (std::size_t l = 0; l + 1 < n; ++l)
        for (std::size_t k = 0; k < n; ++k)
            f(l, k) = std::polar(1.0, w * static_cast<double>((l + 1) * k % n));
    return f;
}

CMat truncated_hadamard(std::size_t n) {
    if (n < 2) throw std::invalid_argument("truncated_hadamard: order must be >= 2");
    const std::vector<int> h = hadamard_matrix(n);
    CMat out(n - 1, n);
    for (std::size_t r = 1; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r - 1, c) = static_cast<double>(h[r * n + c]);
    return out;
}

PhaseMatrix fourier_canceller(const SteeringParams& p) {
    PhaseMatrix s;
    s.matrix = matmul(truncated_fourier(p.n_antennas), phase_compensation(p));
    s.provenance = Provenance::fourier;
    s.cost = {p.n_antennas * (p.n_antennas - 1), p.n_antennas - 1};
    return s;
}

PhaseMatrix hadamard_canceller(const SteeringParams& p) {
    PhaseMatrix s;
    s.matrix = matmul(truncated_hadamard(p.n_antennas), phase_compensation(p));
    s.provenance = Provenance::hadamard;
    s.cost = {p.n_antennas - 1, p.n_antennas - 1};
    return s;
}

double zf_residual(const CMat& s, const CVec& v) {
    return max_abs(matvec(s, v));
}

}  // namespace ascan
