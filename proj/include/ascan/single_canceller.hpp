#pragma once

#include <cstddef>

#include "ascan/cvec.hpp"
#include "ascan/steering.hpp"

namespace ascan {

enum class Provenance { fourier, hadamard, kronecker };

// Analog component budget of a construction (metadata, not behavior).
struct CostReport {
    std::size_t phase_shifters = 0;
    std::size_t adders = 0;
};

// A cancellation matrix with unit-modulus entries realizable by a phase
// shifter network. Rows annihilate the targeted steering vectors.
struct PhaseMatrix {
    CMat matrix;
    Provenance provenance = Provenance::fourier;
    CostReport cost;
};

// Diagonal de-rotation R = diag(1, e^{-j Theta}, ..., e^{-j (N-1) Theta});
// R v(Theta) is the all-one vector.
CMat phase_compensation(const SteeringParams& p);

// (n-1) x n DFT rows 1..n-1 (the all-one row 0 removed), w = e^{-j 2 pi / n}.
CMat truncated_fourier(std::size_t n);

// (n-1) x n +/-1 matrix: Hadamard matrix of order n minus the all-one row.
// Throws for orders without a construction.
CMat truncated_hadamard(std::size_t n);

// S_F = F R: nulls v(Theta), keeps rank n-1, every entry unit modulus,
// S_F S_F^H = n I.
PhaseMatrix fourier_canceller(const SteeringParams& p);

// S_H = H R, same contract on the Hadamard-supported orders.
PhaseMatrix hadamard_canceller(const SteeringParams& p);

// max_i |(S v)_i| -- the worst-case leakage of a steering vector through S.
double zf_residual(const CMat& s, const CVec& v);

}  // namespace ascan
