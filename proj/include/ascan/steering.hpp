#pragma once

#include <vector>

#include "ascan/cvec.hpp"
#include "ascan/rng.hpp"

namespace ascan {

// Inter-element phase increment of a plane wave on a uniform linear array.
// The phase Theta is the primary parameter everywhere; physical geometry
// enters only through theta_from_geometry().
struct SteeringParams {
    double theta = 0.0;         // radians, interpreted modulo 2*pi
    std::size_t n_antennas = 2; // >= 2
};

// v(Theta) = [1, e^{j Theta}, ..., e^{j (N-1) Theta}]^T, unit modulus per entry.
CVec steering_vector(const SteeringParams& p);

// Theta = (2 pi d / lambda) cos(aoa). Throws on non-positive wavelength.
double theta_from_geometry(double aoa_rad, double spacing, double wavelength);

// Rank-one free-space interference channel h = gain * v(Theta).
struct SwiptChannel {
    cxd gain{1.0, 0.0};
    SteeringParams steering;
    CVec vector() const;
};

// Rich-scattering information channel, i.i.d. CN(0,1) entries.
struct ItChannel {
    CMat matrix;
};

ItChannel sample_it_channel(std::size_t n_r, std::size_t n_t, RngStream& rng);

// y = G x + sum_i h_i s_i + n with n ~ CN(0, noise_var I).
CVec compose_received(const ItChannel& g, const CVec& x, const std::vector<SwiptChannel>& swipt,
                      const std::vector<cxd>& s, double noise_var, RngStream& rng);

// Smallest circular distance between two phases.
double circular_distance(double a, double b);

// Throws if any pair of angles coincides within tol (circularly). The
// constructions need distinct interference angles.
void require_distinct_thetas(const std::vector<double>& thetas, double tol = 1e-9);

}  // namespace ascan
