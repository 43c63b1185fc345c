#include "ascan/kron_canceller.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ascan/parallel.hpp"

namespace ascan {

std::vector<CVec> kron_decompose(const SteeringParams& p, const FactorizationPlan& plan) {
    validate_plan(plan, p.n_antennas);
    std::vector<CVec> comps;
    comps.reserve(plan.factors.size());
    std::size_t stride = 1;
    for (std::uint64_t n : plan.factors) {
        CVec c(n);
        for (std::size_t q = 0; q < n; ++q)
            c[q] = std::polar(1.0, static_cast<double>(q * stride) * p.theta);
        comps.push_back(std::move(c));
        stride *= n;
    }
    return comps;
}

CVec build_component(double theta_target, std::size_t n_i, std::size_t stride, std::size_t row_l) {
    if (n_i < 2) throw std::invalid_argument("build_component: factor must be >= 2");
    if (row_l < 1 || row_l > n_i - 1)
        throw std::invalid_argument("build_component: row index outside 1..n_i-1");
    CVec c(n_i);
    for (std::size_t k = 0; k < n_i; ++k) {
        const double dft_phase =
            2.0 * M_PI * static_cast<double>(row_l * k % n_i) / static_cast<double>(n_i);
        c[k] = std::polar(1.0, dft_phase - static_cast<double>(k * stride) * theta_target);
    }
    return c;
}

CVec build_vector(const FactorizationPlan& plan, const CancellationOrder& order,
                  const std::vector<std::size_t>& rows, const std::vector<double>& thetas) {
    const std::size_t k = plan.factors.size();
    if (order.size() != k || rows.size() != k)
        throw std::invalid_argument("build_vector: order/rows must have one entry per factor");
    if (thetas.size() != k) throw std::invalid_argument("build_vector: one angle per interferer");
    require_distinct_thetas(thetas);

    CVec s{cxd{1.0, 0.0}};
    std::size_t stride = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (order[i] >= k) throw std::invalid_argument("build_vector: order index out of range");
        s = kron_left(s, build_component(thetas[order[i]], plan.factors[i], stride, rows[i]));
        stride *= plan.factors[i];
    }
    return s;
}

MotherSet generate_mother_set(const FactorizationPlan& plan, const std::vector<double>& thetas) {
    const std::size_t k = plan.factors.size();
    if (thetas.size() != k) throw std::invalid_argument("generate_mother_set: one angle per interferer");
    require_distinct_thetas(thetas);

    MotherSet ms;
    ms.plan = plan;
    ms.thetas = thetas;
    ms.n_orth = plan.n_orth();

    CancellationOrder order(k);
    std::iota(order.begin(), order.end(), 0);
    ms.n_sub = 0;
    do {
        ++ms.n_sub;
        std::vector<std::size_t> rows(k, 1);
        for (;;) {
            ms.vectors.push_back(build_vector(plan, order, rows, thetas));
            ms.meta.push_back({order, rows});
            // Odometer over row tuples, last slot fastest.
            bool more = false;
            std::size_t pos = k;
            while (pos > 0) {
                --pos;
                if (rows[pos] < plan.factors[pos] - 1) {
                    ++rows[pos];
                    std::fill(rows.begin() + pos + 1, rows.end(), 1);
                    more = true;
                    break;
                }
            }
            if (!more) break;
        }
    } while (std::next_permutation(order.begin(), order.end()));

    return ms;
}

namespace {

// Inner products between all mother-set vectors: gram(i, j) = s_i . conj(s_j).
CMat full_gram(const MotherSet& ms) {
    const std::size_t m = ms.vectors.size();
    CMat g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            cxd acc = 0.0;
            for (std::size_t t = 0; t < ms.vectors[i].size(); ++t)
                acc += ms.vectors[i][t] * std::conj(ms.vectors[j][t]);
            g(i, j) = acc;
            g(j, i) = std::conj(acc);
        }
    return g;
}

CMat gram_submatrix(const CMat& g, const std::vector<std::size_t>& idx) {
    CMat sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = g(idx[i], idx[j]);
    return sub;
}

struct Candidate {
    double cond = std::numeric_limits<double>::infinity();
    std::size_t rank = 0;
    std::vector<std::size_t> indices;
    std::uint64_t evaluated = 0;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.rank != b.rank) return a.rank > b.rank;
    if (a.cond != b.cond) return a.cond < b.cond;
    return a.indices < b.indices;
}

Candidate evaluate_subset(const CMat& gram, const std::vector<std::size_t>& idx, double tol) {
    const SpectralMetrics m = metrics_from_row_gram(gram_submatrix(gram, idx), tol);
    return {m.condition_number, m.numeric_rank, idx, 1};
}

std::uint64_t choose(std::uint64_t m, std::uint64_t k) {
    if (k > m) return 0;
    k = std::min(k, m - k);
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (m - k + i) / i;
    return c;
}

// Lexicographic combination with the given rank out of choose(m, k).
std::vector<std::size_t> unrank_combination(std::size_t m, std::size_t k, std::uint64_t rank) {
    std::vector<std::size_t> idx(k);
    std::size_t v = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
        for (;; ++v) {
            const std::uint64_t below = choose(m - v - 1, k - pos - 1);
            if (rank < below) break;
            rank -= below;
        }
        idx[pos] = v++;
    }
    return idx;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
    const std::size_t k = idx.size();
    std::size_t pos = k;
    while (pos > 0) {
        --pos;
        if (idx[pos] < m - (k - pos)) {
            ++idx[pos];
            for (std::size_t q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
            return true;
        }
    }
    return false;
}

Candidate exhaust_search(const MotherSet& ms, const CMat& gram, std::size_t need, double tol,
                         std::size_t threads) {
    const std::size_t m = ms.vectors.size();
    const std::uint64_t total = choose(m, need);

    // Chunks of the lexicographic enumeration go to worker threads; the
    // reduction picks the minimum by (condition number, subset order), so the
    // result does not depend on the thread count.
    std::vector<Candidate> chunk_best(std::max<std::size_t>(threads, 1));
    parallel_for(static_cast<std::size_t>(total), threads,
                 [&](std::size_t begin, std::size_t end, std::size_t t) {
                     if (begin >= end) return;
                     std::vector<std::size_t> idx = unrank_combination(m, need, begin);
                     Candidate best;
                     for (std::size_t s = begin; s < end; ++s) {
                         Candidate c = evaluate_subset(gram, idx, tol);
                         if (best.indices.empty() || better(c, best)) best = c;
                         next_combination(idx, m);
                     }
                     chunk_best[t] = best;
                 });

    Candidate best;
    for (const Candidate& c : chunk_best)
        if (!c.indices.empty() && (best.indices.empty() || better(c, best))) best = c;
    best.evaluated = total;
    return best;
}

Candidate greedy_search(const MotherSet& ms, const CMat& gram, std::size_t need, double tol) {
    const std::size_t m = ms.vectors.size();
    Candidate cur;
    cur.indices = {0};  // lexicographically first vector seeds the set
    cur.rank = 1;
    cur.cond = 1.0;
    cur.evaluated = 0;

    while (cur.indices.size() < need) {
        Candidate step;
        for (std::size_t c = 0; c < m; ++c) {
            if (std::binary_search(cur.indices.begin(), cur.indices.end(), c)) continue;
            std::vector<std::size_t> trial = cur.indices;
            trial.insert(std::lower_bound(trial.begin(), trial.end(), c), c);
            Candidate cand = evaluate_subset(gram, trial, tol);
            ++cur.evaluated;
            if (step.indices.empty() || better(cand, step)) step = cand;
        }
        cur.indices = step.indices;
        cur.rank = step.rank;
        cur.cond = step.cond;
    }
    return cur;
}

Candidate random_search(const MotherSet& ms, std::size_t need, double tol, RngStream& rng,
                        std::uint64_t budget) {
    // Rank decisions here use the SVD of the stacked subset, not the Gram
    // shortcut: an exactly dependent subset reads as sigma_min ~ sqrt(eps)
    // through the Gram route and would be falsely accepted.
    const std::size_t m = ms.vectors.size();
    std::vector<std::size_t> pool(m);
    for (std::uint64_t it = 1; it <= budget; ++it) {
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < need; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(m - i));
            std::swap(pool[i], pool[j]);
        }
        std::vector<std::size_t> idx(pool.begin(), pool.begin() + need);
        std::sort(idx.begin(), idx.end());
        const SpectralMetrics met = spectral_metrics(stack_selection(ms, idx).matrix, tol);
        if (met.numeric_rank == need) return {met.condition_number, met.numeric_rank, idx, it};
    }
    throw std::runtime_error(
        "random search exhausted its budget without a full-rank subset; "
        "the interference angles are degenerate");
}

}  // namespace

SelectionResult select_independent(const MotherSet& ms, std::size_t count_needed,
                                   SearchMethod method, RngStream& rng, double tol,
                                   std::uint64_t random_budget, std::size_t threads) {
    if (count_needed == 0 || count_needed > ms.vectors.size())
        throw std::invalid_argument("select_independent: count_needed outside the mother set size");

    const CMat gram = full_gram(ms);
    Candidate c;
    switch (method) {
        case SearchMethod::exhaust:
            c = exhaust_search(ms, gram, count_needed, tol, std::max<std::size_t>(threads, 1));
            break;
        case SearchMethod::greedy:
            c = greedy_search(ms, gram, count_needed, tol);
            break;
        case SearchMethod::random:
            c = random_search(ms, count_needed, tol, rng, random_budget);
            break;
    }

    SelectionResult out;
    out.indices = c.indices;
    out.iterations = c.evaluated;
    // Final metrics from the stacked matrix itself, not the Gram shortcut.
    out.metrics = spectral_metrics(stack_selection(ms, c.indices).matrix, tol);
    return out;
}

PhaseMatrix stack_selection(const MotherSet& ms, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw std::invalid_argument("stack_selection: empty selection");
    std::vector<CVec> rows;
    rows.reserve(indices.size());
    for (std::size_t i : indices) rows.push_back(ms.vectors.at(i));
    PhaseMatrix pm;
    pm.matrix = from_rows(rows);
    pm.provenance = Provenance::kronecker;
    pm.cost = {indices.size() * ms.vectors.front().size(), indices.size()};
    return pm;
}

}  // namespace ascan
