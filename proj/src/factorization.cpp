#include "ascan/factorization.hpp"

#include <algorithm>
#include <stdexcept>

namespace ascan {

std::vector<std::pair<std::uint64_t, int>> prime_factorize(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("prime_factorize: n must be >= 2");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::size_t k_max(std::uint64_t n_r) {
    std::size_t k = 0;
    for (const auto& [p, e] : prime_factorize(n_r)) {
        (void)p;
        k += static_cast<std::size_t>(e);
    }
    return k;
}

std::uint64_t FactorizationPlan::product() const {
    std::uint64_t p = 1;
    for (std::uint64_t f : factors) p *= f;
    return p;
}

std::uint64_t FactorizationPlan::n_orth() const {
    std::uint64_t p = 1;
    for (std::uint64_t f : factors) p *= f - 1;
    return p;
}

std::uint64_t FactorizationPlan::mother_set_size() const {
    std::uint64_t p = n_orth();
    for (std::uint64_t i = 2; i <= factors.size(); ++i) p *= i;
    return p;
}

namespace {

void enumerate_rec(std::uint64_t rem, std::uint64_t min_factor, std::size_t slots,
                   std::vector<std::uint64_t>& cur, std::vector<FactorizationPlan>& out) {
    if (slots == 1) {
        if (rem >= min_factor) {
            cur.push_back(rem);
            out.push_back({cur});
            cur.pop_back();
        }
        return;
    }
    for (std::uint64_t d = min_factor; d <= rem; ++d) {
        if (rem % d) continue;
        // Remaining slots all need factors >= d, so d^slots must fit in rem.
        std::uint64_t pow = d;
        bool fits = true;
        for (std::size_t i = 1; i < slots && fits; ++i) {
            if (pow > rem / d) fits = false;
            pow *= d;
        }
        if (!fits) break;
        cur.push_back(d);
        enumerate_rec(rem / d, d, slots - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<FactorizationPlan> enumerate_plans(std::uint64_t n_r, std::size_t k) {
    if (n_r < 2) throw std::invalid_argument("enumerate_plans: n_r must be >= 2");
    if (k < 1) throw std::invalid_argument("enumerate_plans: k must be >= 1");
    std::vector<FactorizationPlan> out;
    std::vector<std::uint64_t> cur;
    enumerate_rec(n_r, 2, k, cur, out);
    return out;
}

FactorizationPlan optimal_factorization(std::uint64_t n_r, std::size_t k) {
    if (k < 1 || k > k_max(n_r))
        throw std::invalid_argument("optimal_factorization: k outside [1, k_max(n_r)]");
    const std::vector<FactorizationPlan> plans = enumerate_plans(n_r, k);
    const FactorizationPlan* best = nullptr;
    for (const FactorizationPlan& p : plans) {
        if (!best || p.n_orth() > best->n_orth() ||
            (p.n_orth() == best->n_orth() && p.factors < best->factors))
            best = &p;
    }
    if (!best) throw std::logic_error("optimal_factorization: no plan found");
    return *best;
}

FactorizationPlan merge_smallest_factorization(std::uint64_t n_r, std::size_t k) {
    if (k < 1 || k > k_max(n_r))
        throw std::invalid_argument("merge_smallest_factorization: k outside [1, k_max(n_r)]");
    std::vector<std::uint64_t> f;
    for (const auto& [p, e] : prime_factorize(n_r))
        for (int i = 0; i < e; ++i) f.push_back(p);
    std::sort(f.begin(), f.end());
    while (f.size() > k) {
        const std::uint64_t merged = f[0] * f[1];
        f.erase(f.begin(), f.begin() + 2);
        f.insert(std::lower_bound(f.begin(), f.end(), merged), merged);
    }
    return {f};
}

void validate_plan(const FactorizationPlan& plan, std::uint64_t n_r) {
    if (plan.factors.empty()) throw std::invalid_argument("plan: no factors");
    for (std::uint64_t f : plan.factors)
        if (f < 2) throw std::invalid_argument("plan: factors must be >= 2");
    if (plan.product() != n_r) throw std::invalid_argument("plan: factor product must equal n_r");
}

}  // namespace ascan
