// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code; budgets are the
// desk-scale defaults. Run a single criterion by passing its number.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "ascan/experiments.hpp"
#include "ascan/hadamard.hpp"
#include "ascan/link_sim.hpp"
#include "ascan/phase_program.hpp"

using namespace ascan;

namespace {

struct Check {
    bool ok = true;
    int recorded = 0;
    std::ostringstream why;

    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ok = false;
        if (recorded < 5) {
            if (recorded) why << "; ";
            why << what;
        } else if (recorded == 5) {
            why << "; ...";
        }
        ++recorded;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// ---- criterion bodies ----------------------------------------------------

void criterion_single_interferer(Check& c) {
    RngStream rng(2024, 0);
    auto check_matrix = [&](const PhaseMatrix& s, const SteeringParams& p, const char* tag) {
        const double resid = zf_residual(s.matrix, steering_vector(p));
        c.expect(resid <= 1e-10, std::string(tag) + " residual " + fmt(resid));
        for (std::size_t i = 0; i < s.matrix.size(); ++i)
            if (std::abs(std::abs(s.matrix.data()[i]) - 1.0) > 1e-12) {
                c.expect(false, std::string(tag) + " non-unit entry");
                break;
            }
        const SpectralMetrics m = spectral_metrics(s.matrix);
        c.expect(m.numeric_rank == p.n_antennas - 1, std::string(tag) + " rank");
        c.expect(std::abs(m.condition_number - 1.0) <= 1e-9,
                 std::string(tag) + " cond " + fmt(m.condition_number));
    };
    for (std::size_t n = 2; n <= 16; ++n)
        for (int t = 0; t < 100; ++t) {
            const SteeringParams p{2 * M_PI * rng.uniform(), n};
            check_matrix(fourier_canceller(p), p, "fourier");
        }
    for (std::size_t n : {2u, 4u, 8u, 12u, 16u})
        for (int t = 0; t < 100; ++t) {
            const SteeringParams p{2 * M_PI * rng.uniform(), n};
            check_matrix(hadamard_canceller(p), p, "hadamard");
        }
}

void criterion_worked_example(Check& c) {
    const double t1 = 0.7, t2 = 2.1;
    const double c1 = 2.0 * M_PI / 3.0, c2 = 4.0 * M_PI / 3.0;
    auto e = [](double phase) { return std::polar(1.0, phase); };
    const cxd expected[4][6] = {
        {1.0, -e(-t1), e(c1 - 2 * t2), -e(c1 - 2 * t2 - t1), e(c2 - 4 * t2),
         -e(c2 - 4 * t2 - t1)},
        {1.0, -e(-t1), e(c2 - 2 * t2), -e(c2 - 2 * t2 - t1), e(c1 - 4 * t2),
         -e(c1 - 4 * t2 - t1)},
        {1.0, -e(-t2), e(c1 - 2 * t1), -e(c1 - 2 * t1 - t2), e(c2 - 4 * t1),
         -e(c2 - 4 * t1 - t2)},
        {1.0, -e(-t2), e(c2 - 2 * t1), -e(c2 - 2 * t1 - t2), e(c1 - 4 * t1),
         -e(c1 - 4 * t1 - t2)},
    };

    const FactorizationPlan plan{{2, 3}};
    const CancellationOrder orders[2] = {{0, 1}, {1, 0}};
    const std::vector<std::size_t> rows[2] = {{1, 1}, {1, 2}};
    for (int r = 0; r < 4; ++r) {
        const CVec s = build_vector(plan, orders[r / 2], rows[r % 2], {t1, t2});
        for (int col = 0; col < 6; ++col)
            c.expect(std::abs(s[col] - expected[r][col]) <= 1e-12,
                     "entry (" + std::to_string(r + 1) + "," + std::to_string(col + 1) + ")");
    }
    const MotherSet ms = generate_mother_set(plan, {t1, t2});
    const SpectralMetrics m = spectral_metrics(stack_selection(ms, {0, 1, 2, 3}).matrix);
    c.expect(m.numeric_rank == 4, "stacked rank " + std::to_string(m.numeric_rank));
}

void criterion_counts(Check& c) {
    c.expect(k_max(6) == 2, "k_max(6)");
    c.expect(k_max(12) == 3, "k_max(12)");
    c.expect(k_max(16) == 4, "k_max(16)");
    for (std::size_t n = 1; n <= 6; ++n)
        c.expect(k_max(std::uint64_t{1} << n) == n, "k_max(2^" + std::to_string(n) + ")");

    c.expect(generate_mother_set(FactorizationPlan{{2, 3}}, {0.7, 2.1}).vectors.size() == 4,
             "mother set (6,2)");
    c.expect(generate_mother_set(FactorizationPlan{{3, 4}}, {0.7, 2.1}).vectors.size() == 12,
             "mother set (12,2) via 3x4");
    c.expect(generate_mother_set(FactorizationPlan{{2, 6}}, {0.7, 2.1}).vectors.size() == 10,
             "mother set (12,2) via 2x6");

    RngStream rng(7, 0);
    const MotherSet ms = generate_mother_set(FactorizationPlan{{3, 4}}, {0.9, 2.8});
    const SelectionResult sel = select_independent(ms, 10, SearchMethod::exhaust, rng);
    c.expect(sel.iterations == 66, "exhaust count " + std::to_string(sel.iterations));
}

void criterion_factorization(Check& c) {
    for (std::uint64_t n_r = 2; n_r <= 64; ++n_r)
        for (std::size_t k = 1; k <= k_max(n_r); ++k) {
            const FactorizationPlan best = optimal_factorization(n_r, k);
            std::uint64_t brute = 0;
            for (const FactorizationPlan& p : enumerate_plans(n_r, k))
                brute = std::max(brute, p.n_orth());
            c.expect(best.n_orth() == brute && best.product() == n_r && best.k() == k,
                     "(" + std::to_string(n_r) + "," + std::to_string(k) + ")");
        }
    c.expect(optimal_factorization(12, 2).factors == std::vector<std::uint64_t>{3, 4},
             "(12,2) plan");
}

void criterion_lemmas(Check& c) {
    for (std::uint64_t n_r = 2; n_r <= 64; ++n_r)
        for (std::size_t k = 1; k <= k_max(n_r); ++k)
            for (const FactorizationPlan& p : enumerate_plans(n_r, k)) {
                c.expect(n_r - k <= p.mother_set_size(),
                         "sufficiency at n_r=" + std::to_string(n_r));
                const double kk = static_cast<double>(k);
                const double bound =
                    std::pow(std::pow(static_cast<double>(n_r), 1.0 / kk) - 1.0, kk);
                c.expect(static_cast<double>(p.n_orth()) <= bound * (1.0 + 1e-12),
                         "product bound at n_r=" + std::to_string(n_r));
            }
    for (std::uint64_t n_r : {8u, 12u, 16u, 24u, 32u, 64u}) {
        std::uint64_t prev = optimal_factorization(n_r, 1).n_orth();
        for (std::size_t k = 2; k <= k_max(n_r); ++k) {
            const std::uint64_t cur = optimal_factorization(n_r, k).n_orth();
            c.expect(cur <= prev, "monotonicity at n_r=" + std::to_string(n_r));
            prev = cur;
        }
    }
}

void criterion_cond_study(Check& c) {
    const std::size_t reals = 10000;
    const CondStudy ex = condition_number_study(12, 2, SearchMethod::exhaust, reals, 1001);
    const CondStudy gr = condition_number_study(12, 2, SearchMethod::greedy, reals, 1001);
    const CondStudy rnd = condition_number_study(12, 2, SearchMethod::random, reals, 1001);

    std::size_t finite_ex = 0, finite_gr = 0, below30 = 0;
    for (double v : ex.cond) {
        finite_ex += std::isfinite(v);
        below30 += v < 30.0;
    }
    for (double v : gr.cond) finite_gr += std::isfinite(v);
    double iters = 0;
    for (double v : rnd.iterations) iters += v;
    iters /= static_cast<double>(reals);

    c.expect(finite_ex == reals, "exhaust finite " + std::to_string(finite_ex));
    c.expect(finite_gr == reals, "greedy finite " + std::to_string(finite_gr));
    c.expect(below30 >= reals * 9 / 10,
             "exhaust below 30: " + std::to_string(below30) + "/" + std::to_string(reals));
    c.expect(iters >= 1.0 && iters <= 1.5, "random mean iterations " + fmt(iters));
}

void criterion_sqnr(Check& c) {
    const double analytic = sqnr_estimate_db(10, 0.0, 90.0);
    c.expect(std::abs(analytic - (-29.8)) < 1e-9, "analytic " + fmt(analytic));
    RngStream rng(77, 0);
    for (int bits : {6, 10, 14})
        for (double ratio : {40.0, 70.0, 90.0}) {
            const double measured = measure_weak_sqnr_db(bits, ratio, 100000, rng);
            const double model = sqnr_estimate_db(bits, 0.0, ratio);
            c.expect(std::abs(measured - model) <= 2.0,
                     "b=" + std::to_string(bits) + " R=" + fmt(ratio) + ": measured " +
                         fmt(measured) + " vs " + fmt(model));
        }
}

LinkConfig near_far_config() {
    LinkConfig cfg;
    cfg.n_r = 4;
    cfg.n_t = 4;
    cfg.k = 1;
    cfg.it_streams = 2;
    cfg.it_snr_db = 10.0;
    cfg.adc.bits = 6;
    cfg.mod_order = 4;
    cfg.swipt_mod_order = 4;
    cfg.thetas = {0.7};
    return cfg;
}

void criterion_near_far_ser(Check& c) {
    const std::size_t n_symbols = 100000;
    LinkConfig cfg = near_far_config();
    RngStream rng(88, 0);
    const AnalogDesign design =
        design_canceller(cfg.n_r, cfg.k, cfg.thetas, SearchMethod::exhaust, rng);

    // Digital baseline saturation at an 80 dB power ratio.
    cfg.use_ratio = true;
    cfg.ratio_db = 80.0;
    const TrialStats sat = run_digital_baseline(cfg, n_symbols, 501);
    c.expect(sat.ser_it >= 0.65 && sat.ser_it <= 0.80, "saturation " + fmt(sat.ser_it));

    // Analog flatness across the interferer's SNR, and superiority wherever
    // the power ratio is at least 40 dB.
    cfg.use_ratio = false;
    double lo = 1e9, hi = 0.0;
    std::size_t point = 1;
    for (double rho : {0.0, 30.0, 60.0, 90.0}) {
        cfg.swipt_snr_db = rho;
        const std::uint64_t base = static_cast<std::uint64_t>(point++) << 24;
        const TrialStats ana = run_analog_chain(cfg, design, n_symbols, 501, base);
        lo = std::min(lo, ana.ser_it);
        hi = std::max(hi, ana.ser_it);
        if (effective_ratio_db(cfg) >= 40.0) {
            const TrialStats dig = run_digital_baseline(cfg, n_symbols, 501, base);
            c.expect(ana.ser_it < dig.ser_it, "analog " + fmt(ana.ser_it) +
                                                  " !< digital " + fmt(dig.ser_it) +
                                                  " at rho=" + fmt(rho));
        }
    }
    c.expect(hi <= 3.0 * lo, "flatness " + fmt(lo) + ".." + fmt(hi));
}

void criterion_throughput(Check& c) {
    const std::size_t n_symbols = 100000;
    LinkConfig cfg = near_far_config();
    cfg.it_streams = 3;
    cfg.mod_order = 16;
    cfg.swipt_mod_order = 16;
    // The throughput comparison pins modulation and stream count but not the
    // ADC resolution; the registry default for the throughput experiments is
    // 8 bits, where the digital baseline is quantization-limited without
    // both receivers sitting in full demapper saturation.
    cfg.adc.bits = 8;
    cfg.use_ratio = false;
    cfg.swipt_snr_db = 60.0;
    RngStream rng(89, 0);
    const AnalogDesign design =
        design_canceller(cfg.n_r, cfg.k, cfg.thetas, SearchMethod::exhaust, rng);
    const TrialStats ana = run_analog_chain(cfg, design, n_symbols, 502);
    const TrialStats dig = run_digital_baseline(cfg, n_symbols, 502);
    const double ratio = ana.throughput / dig.throughput;
    c.expect(ratio >= 2.0 && ratio <= 4.0,
             "throughput ratio " + fmt(ratio) + " (analog " + fmt(ana.throughput) +
                 ", digital " + fmt(dig.throughput) + ")");
}

void criterion_imperfect(Check& c) {
    const std::size_t n_symbols = 100000;
    LinkConfig cfg = near_far_config();
    cfg.use_ratio = true;
    cfg.ratio_db = 80.0;
    // Registry default for the imperfect experiment: the detector nulls the
    // estimated leak directions instead of treating them as noise. Without
    // it both receivers saturate and the ordering degenerates to a tie.
    cfg.genie_residual_zf = true;
    RngStream rng(90, 0);
    const AnalogDesign design =
        design_canceller(cfg.n_r, cfg.k, cfg.thetas, SearchMethod::exhaust, rng);

    const TrialStats dig = run_digital_baseline(cfg, n_symbols, 503);
    double ser[3];
    int i = 0;
    for (double sigma : {0.0, 0.01, 0.1}) {
        cfg.perturb_sigma = sigma;
        ser[i++] = run_analog_chain(cfg, design, n_symbols, 503,
                                    static_cast<std::uint64_t>(i) << 24)
                       .ser_it;
    }
    c.expect(ser[0] < ser[1], "perfect " + fmt(ser[0]) + " !< sigma=0.01 " + fmt(ser[1]));
    c.expect(ser[1] < ser[2], "sigma=0.01 " + fmt(ser[1]) + " !< sigma=0.1 " + fmt(ser[2]));
    c.expect(ser[2] < dig.ser_it,
             "sigma=0.1 " + fmt(ser[2]) + " !< digital " + fmt(dig.ser_it));
}

void criterion_oracle(Check& c) {
    LinkConfig cfg = near_far_config();
    cfg.quantization = false;
    cfg.noise_var = 0.0;
    cfg.it_snr_db = 30.0;
    cfg.swipt_snr_db = 90.0;
    RngStream rng(91, 0);
    const AnalogDesign design =
        design_canceller(cfg.n_r, cfg.k, cfg.thetas, SearchMethod::exhaust, rng);
    const TrialStats ana = run_analog_chain(cfg, design, 10000, 504);
    const TrialStats dig = run_digital_baseline(cfg, 10000, 504);
    c.expect(ana.ser_it == 0.0, "analog oracle ser " + fmt(ana.ser_it));
    c.expect(dig.ser_it == 0.0, "digital oracle ser " + fmt(dig.ser_it));
}

struct Criterion {
    int id;
    const char* label;
    std::function<void(Check&)> body;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "single-interferer optimality (Fourier/Hadamard)", criterion_single_interferer},
        {2, "worked 6x2 matrix reproduction", criterion_worked_example},
        {3, "combinatorial counts", criterion_counts},
        {4, "factorization optimizer vs exhaustive", criterion_factorization},
        {5, "inequality suite and monotonicity", criterion_lemmas},
        {6, "condition-number study at (12,2)", criterion_cond_study},
        {7, "SQNR model, analytic and measured", criterion_sqnr},
        {8, "near-far SER: saturation, flatness, superiority", criterion_near_far_ser},
        {9, "throughput ratio at 60 dB interferer SNR", criterion_throughput},
        {10, "imperfect cancellation ordering", criterion_imperfect},
        {11, "oracle equivalence without quantization/noise", criterion_oracle},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const Criterion& cr : criteria) {
        if (only != 0 && cr.id != only) continue;
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        cr.body(c);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << cr.id << ": " << cr.label
                  << " (" << fmt(dt) << " s)";
        if (!c.ok) {
            std::cout << " -- " << c.why.str();
            ++failures;
        }
        std::cout << "\n" << std::flush;
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures;
}
