#include "ascan/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace ascan {

CVec steering_vector(const SteeringParams& p) {
    if (p.n_antennas < 2) throw std::invalid_argument("steering_vector: need at least 2 antennas");
    CVec v(p.n_antennas);
    for (std::size_t k = 0; k < p.n_antennas; ++k)
        v[k] = std::polar(1.0, static_cast<double>(k) * p.theta);
    return v;
}

double theta_from_geometry(double aoa_rad, double spacing, double wavelength) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("theta_from_geometry: wavelength must be positive");
    return 2.0 * M_PI * spacing / wavelength * std::cos(aoa_rad);
}

CVec SwiptChannel::vector() const {
    CVec v = steering_vector(steering);
    for (cxd& z : v) z *= gain;
    return v;
}

ItChannel sample_it_channel(std::size_t n_r, std::size_t n_t, RngStream& rng) {
    if (n_r < 1 || n_t < 1) throw std::invalid_argument("sample_it_channel: empty dimensions");
    ItChannel ch{CMat(n_r, n_t)};
    for (std::size_t r = 0; r < n_r; ++r)
        for (std::size_t c = 0; c < n_t; ++c) ch.matrix(r, c) = rng.gaussian_c(1.0);
    return ch;
}

CVec compose_received(const ItChannel& g, const CVec& x, const std::vector<SwiptChannel>& swipt,
                      const std::vector<cxd>& s, double noise_var, RngStream& rng) {
    if (swipt.size() != s.size())
        throw std::invalid_argument("compose_received: one symbol per interference channel");
    if (noise_var < 0.0) throw std::invalid_argument("compose_received: negative noise variance");

    CVec y = matvec(g.matrix, x);
    for (std::size_t i = 0; i < swipt.size(); ++i) {
        if (swipt[i].steering.n_antennas != y.size())
            throw std::invalid_argument("compose_received: channel length mismatch");
        const CVec h = swipt[i].vector();
        for (std::size_t r = 0; r < y.size(); ++r) y[r] += h[r] * s[i];
    }
    if (noise_var > 0.0)
        for (cxd& z : y) z += rng.gaussian_c(noise_var);
    return y;
}

double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
    return std::min(d, 2.0 * M_PI - d);
}

void require_distinct_thetas(const std::vector<double>& thetas, double tol) {
    for (std::size_t i = 0; i < thetas.size(); ++i)
        for (std::size_t j = i + 1; j < thetas.size(); ++j)
            if (circular_distance(thetas[i], thetas[j]) < tol)
                throw std::invalid_argument("interference angles must be distinct");
}

}  // namespace ascan
