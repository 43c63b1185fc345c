#pragma once

#include <cstdint>
#include <vector>

#include "ascan/cvec.hpp"
#include "ascan/factorization.hpp"
#include "ascan/rng.hpp"
#include "ascan/single_canceller.hpp"
#include "ascan/spectral.hpp"
#include "ascan/steering.hpp"

namespace ascan {

// Per-factor phase vectors of v(Theta): component j has length plan.factors[j]
// and phase step stride_j * Theta with stride_j = n_1 * ... * n_{j-1}.
// Chaining kron_left over the components reproduces v(Theta).
std::vector<CVec> kron_decompose(const SteeringParams& p, const FactorizationPlan& plan);

// One component phase-shift vector: DFT row row_l (1-based, 1..n_i-1) of
// length n_i, de-rotated against the targeted channel component whose phase
// step is stride * theta_target. Entry k = e^{j (2 pi row_l k / n_i - k stride theta)}.
// Orthogonal to that component by DFT-row/all-one orthogonality.
CVec build_component(double theta_target, std::size_t n_i, std::size_t stride, std::size_t row_l);

// Slot i of the Kronecker chain targets interferer order[i] (0-based).
using CancellationOrder = std::vector<std::size_t>;

// Kronecker chain of components; slot i nulls v(thetas[order[i]]), so the
// result is orthogonal to every interferer's steering vector.
CVec build_vector(const FactorizationPlan& plan, const CancellationOrder& order,
                  const std::vector<std::size_t>& rows, const std::vector<double>& thetas);

struct MotherVectorMeta {
    CancellationOrder order;
    std::vector<std::size_t> rows;  // 1-based DFT row per slot
};

// All K! orders x all row tuples, in lexicographic enumeration order
// (orders outer, row tuples inner with the last slot fastest).
struct MotherSet {
    FactorizationPlan plan;
    std::vector<double> thetas;
    std::vector<CVec> vectors;
    std::vector<MotherVectorMeta> meta;
    std::size_t n_orth = 0;  // vectors per order subset, prod (n_i - 1)
    std::size_t n_sub = 0;   // number of order subsets, K!
};

MotherSet generate_mother_set(const FactorizationPlan& plan, const std::vector<double>& thetas);

enum class SearchMethod { exhaust, greedy, random };

struct SelectionResult {
    std::vector<std::size_t> indices;  // ascending
    SpectralMetrics metrics;           // of the stacked selection
    std::uint64_t iterations = 0;      // subsets (exhaust/random) or candidate evals (greedy)
};

// Pick count_needed linearly independent vectors from the mother set.
// exhaust: global condition-number minimum over all subsets; greedy: grows
// the set minimizing the incremental condition number; random: resamples
// until the stack has full numeric rank (throws after random_budget tries).
SelectionResult select_independent(const MotherSet& ms, std::size_t count_needed,
                                   SearchMethod method, RngStream& rng, double tol = 1e-9,
                                   std::uint64_t random_budget = 10000,
                                   std::size_t threads = 1);

// Stack the selected vectors as matrix rows (row i = vector^T).
PhaseMatrix stack_selection(const MotherSet& ms, const std::vector<std::size_t>& indices);

}  // namespace ascan
