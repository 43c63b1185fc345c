#pragma once

#include <cstdint>
#include <vector>

namespace ascan {

// Canonical prime factorization, primes ascending. Throws for n < 2.
std::vector<std::pair<std::uint64_t, int>> prime_factorize(std::uint64_t n);

// Sum of prime exponents: the largest number of interferers the Kronecker
// construction can target with n_r antennas.
std::size_t k_max(std::uint64_t n_r);

// Ordered factor list (n_1, ..., n_K), each >= 2, product = n_r. The factor
// order fixes the strides of the Kronecker decomposition.
struct FactorizationPlan {
    std::vector<std::uint64_t> factors;

    std::uint64_t product() const;
    std::uint64_t n_orth() const;          // prod (n_i - 1)
    std::uint64_t mother_set_size() const; // K! * n_orth
    std::size_t k() const { return factors.size(); }
};

// All ascending-factor plans of length k with product n_r.
std::vector<FactorizationPlan> enumerate_plans(std::uint64_t n_r, std::size_t k);

// Exact maximizer of prod (n_i - 1) over the plans of length k (ties broken
// toward the lexicographically smallest ascending plan). Throws when k is
// outside [1, k_max(n_r)].
FactorizationPlan optimal_factorization(std::uint64_t n_r, std::size_t k);

// The iterative merge-two-smallest-factors heuristic. Usually optimal, but
// not always (e.g. 36 = 6*6 beats its 4*9); kept for comparison studies.
FactorizationPlan merge_smallest_factorization(std::uint64_t n_r, std::size_t k);

void validate_plan(const FactorizationPlan& plan, std::uint64_t n_r);

}  // namespace ascan
