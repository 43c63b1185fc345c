#include "ascan/link_sim.hpp"

#include <cmath>
#include <stdexcept>

#include "ascan/kernels.hpp"
#include "ascan/parallel.hpp"

namespace ascan {

void validate_config(const LinkConfig& cfg) {
    if (cfg.n_r < 2) throw std::invalid_argument("config: n_r must be >= 2");
    if (cfg.n_t < 1) throw std::invalid_argument("config: n_t must be >= 1");
    if (cfg.k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (cfg.k >= cfg.n_r) throw std::invalid_argument("config: need n_r > k");
    if (cfg.k > k_max(cfg.n_r))
        throw std::invalid_argument(
            "config: k exceeds the construction limit for n_r (the sum of its prime "
            "exponents); add antennas or reduce k");
    if (cfg.it_streams < 1 || cfg.it_streams > std::min(cfg.n_t, cfg.n_r - cfg.k))
        throw std::invalid_argument("config: it_streams must be in 1..min(n_t, n_r - k)");
    make_qam(cfg.mod_order);
    make_qam(cfg.swipt_mod_order);
    if (cfg.adc.bits < 1 || cfg.adc.bits > 30)
        throw std::invalid_argument("config: adc_bits must be in 1..30");
    if (cfg.block_symbols < 1) throw std::invalid_argument("config: block_symbols must be >= 1");
    if (cfg.noise_var < 0.0) throw std::invalid_argument("config: noise_var must be >= 0");
    if (cfg.perturb_sigma < 0.0) throw std::invalid_argument("config: sigma_e must be >= 0");
    if (!cfg.thetas.empty()) {
        if (cfg.thetas.size() != cfg.k)
            throw std::invalid_argument("config: thetas must list one angle per interferer");
        require_distinct_thetas(cfg.thetas);
    }
}

std::vector<double> default_thetas(std::size_t k) {
    std::vector<double> t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = 0.7 + 1.4 * static_cast<double>(i);
    return t;
}

double it_total_power(const LinkConfig& cfg) { return std::pow(10.0, cfg.it_snr_db / 10.0); }

double swipt_power(const LinkConfig& cfg) {
    return cfg.use_ratio ? it_total_power(cfg) * std::pow(10.0, cfg.ratio_db / 10.0)
                         : std::pow(10.0, cfg.swipt_snr_db / 10.0);
}

double effective_ratio_db(const LinkConfig& cfg) {
    return 10.0 * std::log10(swipt_power(cfg) / it_total_power(cfg));
}

double sqnr_estimate_db(int bits, double c_db, double ratio_db) {
    if (bits < 1) throw std::invalid_argument("sqnr_estimate_db: bits must be >= 1");
    return 6.02 * static_cast<double>(bits) + c_db - ratio_db;
}

double effective_throughput(double ser, int mod_order) {
    if (ser < 0.0 || ser > 1.0) throw std::invalid_argument("effective_throughput: ser in [0,1]");
    return (1.0 - ser) * std::log2(static_cast<double>(mod_order));
}

std::vector<double> perturb_thetas(const std::vector<double>& thetas, double sigma_e,
                                   RngStream& rng) {
    if (sigma_e < 0.0) throw std::invalid_argument("perturb_thetas: sigma_e must be >= 0");
    std::vector<double> out = thetas;
    if (sigma_e > 0.0)
        for (double& t : out) t += sigma_e * rng.gaussian();
    return out;
}

AnalogDesign design_canceller(std::size_t n_r, std::size_t k, const std::vector<double>& thetas,
                              SearchMethod method, RngStream& rng, std::size_t threads) {
    if (thetas.size() != k) throw std::invalid_argument("design_canceller: one angle per interferer");
    require_distinct_thetas(thetas);

    AnalogDesign d;
    if (k == 1) {
        d.base = fourier_canceller({thetas[0], n_r});
        d.selection.iterations = 1;
        d.selection.metrics = spectral_metrics(d.base.matrix);
        d.rebuild = [n_r](const std::vector<double>& th) {
            return fourier_canceller({th[0], n_r}).matrix;
        };
        return d;
    }

    const FactorizationPlan plan = optimal_factorization(n_r, k);
    const MotherSet ms = generate_mother_set(plan, thetas);
    d.selection = select_independent(ms, n_r - k, method, rng, 1e-9, 10000, threads);
    d.base = stack_selection(ms, d.selection.indices);
    const PhaseProgramSet prog = compile_phase_program(ms, d.selection.indices);
    d.rebuild = [prog](const std::vector<double>& th) { return evaluate_program(prog, th).matrix; };
    return d;
}

namespace {

using kernels::CBatch;
using kernels::Kernels;

enum class ChainMode { digital, analog };

struct BlockCounts {
    std::uint64_t it_errors = 0, it_symbols = 0;
    std::uint64_t swipt_errors = 0, swipt_symbols = 0;
};

struct ChainSetup {
    std::vector<double> thetas;
    std::vector<CVec> v;  // steering vectors at the true angles
    double alpha = 0.0;   // per-stream symbol amplitude
    double a_amp = 0.0;   // interferer amplitude |a_i|
    ModulationScheme mod, swipt_mod;
    CMat projector;       // digital receiver only
};

void flatten(const CMat& m, std::vector<double>& re, std::vector<double>& im) {
    re.resize(m.rows() * m.cols());
    im.resize(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) {
        re[i] = m.data()[i].real();
        im[i] = m.data()[i].imag();
    }
}

void quantize_batch(const Kernels& kr, CBatch& b, const AdcModel& adc) {
    double peak = adc.fixed_fullscale;
    if (peak <= 0.0) {
        peak = 0.0;
        for (std::size_t d = 0; d < b.dim(); ++d) {
            peak = std::max(peak, kr.peak_abs(b.count(), b.re(d)));
            peak = std::max(peak, kr.peak_abs(b.count(), b.im(d)));
        }
    }
    const double step = quantizer_step(adc, peak);
    if (step == 0.0) return;
    const double inv_step = 1.0 / step;
    const double half = static_cast<double>(1u << (adc.bits - 1));
    for (std::size_t d = 0; d < b.dim(); ++d) {
        kr.quantize_midrise(b.count(), inv_step, step, half, b.re(d));
        kr.quantize_midrise(b.count(), inv_step, step, half, b.im(d));
    }
}

BlockCounts run_block(const LinkConfig& cfg, const ChainSetup& su, ChainMode mode,
                      const AnalogDesign* design, const Kernels& kr, std::size_t block_idx,
                      std::size_t nb, std::uint64_t seed, std::uint64_t stream_base) {
    const std::uint64_t sid = stream_base + 16 * static_cast<std::uint64_t>(block_idx);
    RngStream ch_rng(seed, sid + 0);
    RngStream sym_rng(seed, sid + 1);
    RngStream sw_rng(seed, sid + 2);
    RngStream noise_rng(seed, sid + 3);
    RngStream pert_rng(seed, sid + 4);

    const std::size_t n_r = cfg.n_r, n_s = cfg.it_streams, k = cfg.k;

    // Block-fading channel; streams ride on the first n_s transmit antennas.
    const ItChannel g = sample_it_channel(n_r, cfg.n_t, ch_rng);
    CMat g_act(n_r, n_s);
    for (std::size_t r = 0; r < n_r; ++r)
        for (std::size_t st = 0; st < n_s; ++st) g_act(r, st) = g.matrix(r, st) * su.alpha;

    CMat s_mat;
    std::vector<double> th_hat = su.thetas;
    if (mode == ChainMode::analog) {
        if (cfg.perturb_sigma > 0.0) {
            th_hat = perturb_thetas(su.thetas, cfg.perturb_sigma, pert_rng);
            s_mat = design->rebuild(th_hat);
        } else {
            s_mat = design->base.matrix;
        }
    }

    // ZF detector for the information streams.
    CMat h_eff = mode == ChainMode::analog ? matmul(s_mat, g_act) : matmul(su.projector, g_act);
    CMat w;
    if (mode == ChainMode::analog && cfg.genie_residual_zf && cfg.perturb_sigma > 0.0 &&
        s_mat.rows() >= n_s + k) {
        // Null the leaked interference directions digitally as well: the
        // receiver can estimate them through its own front end, so the ZF
        // detector treats them as known channel columns rather than noise.
        CMat aug(s_mat.rows(), n_s + k);
        for (std::size_t r = 0; r < s_mat.rows(); ++r)
            for (std::size_t c = 0; c < n_s; ++c) aug(r, c) = h_eff(r, c);
        for (std::size_t i = 0; i < k; ++i) {
            CVec leak = matvec(s_mat, su.v[i]);
            for (std::size_t r = 0; r < s_mat.rows(); ++r)
                aug(r, n_s + i) = leak[r] * su.a_amp;
        }
        CMat w_full = zf_pseudo_inverse(aug);
        w = CMat(n_s, s_mat.rows());
        for (std::size_t st = 0; st < n_s; ++st)
            for (std::size_t c = 0; c < s_mat.rows(); ++c) w(st, c) = w_full(st, c);
    } else {
        w = zf_pseudo_inverse(h_eff);
    }

    // Transmit symbols for the block.
    std::vector<std::vector<unsigned>> it_syms(n_s, std::vector<unsigned>(nb));
    for (std::size_t st = 0; st < n_s; ++st)
        for (std::size_t s = 0; s < nb; ++s)
            it_syms[st][s] = static_cast<unsigned>(sym_rng.uniform_int(su.mod.order));
    std::vector<std::vector<unsigned>> sw_syms(k, std::vector<unsigned>(nb));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t s = 0; s < nb; ++s)
            sw_syms[i][s] = static_cast<unsigned>(sw_rng.uniform_int(su.swipt_mod.order));

    CBatch x(n_s, nb);
    for (std::size_t st = 0; st < n_s; ++st)
        for (std::size_t s = 0; s < nb; ++s) {
            const cxd p = qam_map(su.mod, it_syms[st][s]);
            x.re(st)[s] = p.real();
            x.im(st)[s] = p.imag();
        }
    CBatch sw(k, nb);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t s = 0; s < nb; ++s) {
            const cxd p = qam_map(su.swipt_mod, sw_syms[i][s]);
            sw.re(i)[s] = p.real();
            sw.im(i)[s] = p.imag();
        }

    // y = G_act x + sum_i a_i v(Theta_i) s_i + n, batched over the block.
    CBatch y(n_r, nb);
    std::vector<double> are, aim;
    flatten(g_act, are, aim);
    kr.cmatvec(n_r, n_s, nb, are.data(), aim.data(), x.re_planes(), x.im_planes(), y.re_planes(),
               y.im_planes());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < n_r; ++r) {
            const cxd hri = su.a_amp * su.v[i][r];
            kr.caxpy(nb, hri.real(), hri.imag(), sw.re(i), sw.im(i), y.re(r), y.im(r));
        }
    if (cfg.noise_var > 0.0)
        for (std::size_t r = 0; r < n_r; ++r)
            for (std::size_t s = 0; s < nb; ++s) {
                const cxd z = noise_rng.gaussian_c(cfg.noise_var);
                y.re(r)[s] += z.real();
                y.im(r)[s] += z.imag();
            }

    BlockCounts out;
    std::vector<double> wre, wim;
    flatten(w, wre, wim);

    auto count_it_errors = [&](const CBatch& xhat) {
        for (std::size_t st = 0; st < n_s; ++st)
            for (std::size_t s = 0; s < nb; ++s) {
                const unsigned got =
                    qam_demap(su.mod, {xhat.re(st)[s], xhat.im(st)[s]});
                out.it_errors += got != it_syms[st][s];
            }
        out.it_symbols += n_s * nb;
    };

    auto decode_swipt = [&](const CBatch& src, std::size_t i, const CVec& combiner, cxd gain_hat) {
        // One analog combining branch: c = combiner^H src, quantized on its
        // own scale, then normalized by the estimated through-gain.
        CBatch c(1, nb);
        std::vector<double> cre(src.dim()), cim(src.dim());
        for (std::size_t r = 0; r < src.dim(); ++r) {
            const cxd conj_w = std::conj(combiner[r]);
            cre[r] = conj_w.real();
            cim[r] = conj_w.imag();
        }
        kr.cmatvec(1, src.dim(), nb, cre.data(), cim.data(), src.re_planes(), src.im_planes(),
                   c.re_planes(), c.im_planes());
        if (cfg.quantization && mode == ChainMode::analog) quantize_batch(kr, c, cfg.adc);
        for (std::size_t s = 0; s < nb; ++s) {
            const cxd est = cxd{c.re(0)[s], c.im(0)[s]} / gain_hat;
            out.swipt_errors += qam_demap(su.swipt_mod, est) != sw_syms[i][s];
        }
        out.swipt_symbols += nb;
    };

    if (mode == ChainMode::analog) {
        const std::size_t rows = s_mat.rows();
        CBatch t(rows, nb);
        std::vector<double> sre, sim;
        flatten(s_mat, sre, sim);
        kr.cmatvec(rows, n_r, nb, sre.data(), sim.data(), y.re_planes(), y.im_planes(),
                   t.re_planes(), t.im_planes());
        if (cfg.quantization) quantize_batch(kr, t, cfg.adc);

        CBatch xhat(n_s, nb);
        kr.cmatvec(n_s, rows, nb, wre.data(), wim.data(), t.re_planes(), t.im_planes(),
                   xhat.re_planes(), xhat.im_planes());
        count_it_errors(xhat);

        for (std::size_t i = 0; i < k; ++i) {
            const CVec v_hat = steering_vector({th_hat[i], n_r});
            const cxd gain_hat = su.a_amp * dot_conj(v_hat, su.v[i]);
            decode_swipt(y, i, v_hat, gain_hat);
        }
    } else {
        if (cfg.quantization) quantize_batch(kr, y, cfg.adc);
        CBatch xhat(n_s, nb);
        kr.cmatvec(n_s, n_r, nb, wre.data(), wim.data(), y.re_planes(), y.im_planes(),
                   xhat.re_planes(), xhat.im_planes());
        count_it_errors(xhat);

        for (std::size_t i = 0; i < k; ++i) {
            const cxd gain_hat = su.a_amp * static_cast<double>(n_r);
            decode_swipt(y, i, su.v[i], gain_hat);
        }
    }
    return out;
}

TrialStats run_chain(const LinkConfig& cfg, ChainMode mode, const AnalogDesign* design,
                     std::size_t n_symbols, std::uint64_t seed, std::uint64_t stream_base) {
    validate_config(cfg);
    if (n_symbols == 0) throw std::invalid_argument("run: n_symbols must be positive");

    LinkConfig c = cfg;
    if (c.thetas.empty()) c.thetas = default_thetas(c.k);

    ChainSetup su;
    su.thetas = c.thetas;
    for (std::size_t i = 0; i < c.k; ++i) su.v.push_back(steering_vector({c.thetas[i], c.n_r}));
    su.alpha = std::sqrt(it_total_power(c) / static_cast<double>(c.it_streams));
    su.a_amp = std::sqrt(swipt_power(c));
    su.mod = make_qam(c.mod_order);
    su.swipt_mod = make_qam(c.swipt_mod_order);
    if (mode == ChainMode::digital) {
        CMat cols(c.n_r, c.k);
        for (std::size_t i = 0; i < c.k; ++i)
            for (std::size_t r = 0; r < c.n_r; ++r) cols(r, i) = su.v[i][r];
        su.projector = complement_projector(cols);
    }
    if (mode == ChainMode::analog) {
        if (design == nullptr) throw std::invalid_argument("run_analog_chain: missing design");
        if (design->base.matrix.rows() != c.n_r - c.k || design->base.matrix.cols() != c.n_r)
            throw std::invalid_argument("run_analog_chain: canceller shape does not match config");
    }

    const Kernels& kr = kernels::active_kernels();
    const std::size_t n_blocks = (n_symbols + c.block_symbols - 1) / c.block_symbols;
    std::vector<BlockCounts> counts(n_blocks);

    parallel_for(n_blocks, resolve_threads(c.threads),
                 [&](std::size_t begin, std::size_t end, std::size_t) {
                     for (std::size_t b = begin; b < end; ++b) {
                         const std::size_t nb =
                             std::min(c.block_symbols, n_symbols - b * c.block_symbols);
                         counts[b] = run_block(c, su, mode, design, kr, b, nb, seed, stream_base);
                     }
                 });

    BlockCounts total;
    for (const BlockCounts& bc : counts) {
        total.it_errors += bc.it_errors;
        total.it_symbols += bc.it_symbols;
        total.swipt_errors += bc.swipt_errors;
        total.swipt_symbols += bc.swipt_symbols;
    }

    TrialStats ts;
    ts.symbols = n_symbols;
    ts.ser_it = total.it_symbols ? static_cast<double>(total.it_errors) /
                                       static_cast<double>(total.it_symbols)
                                 : 0.0;
    ts.ser_swipt = total.swipt_symbols ? static_cast<double>(total.swipt_errors) /
                                             static_cast<double>(total.swipt_symbols)
                                       : 0.0;
    ts.throughput = effective_throughput(ts.ser_it, c.mod_order);
    return ts;
}

}  // namespace

TrialStats run_digital_baseline(const LinkConfig& cfg, std::size_t n_symbols, std::uint64_t seed,
                                std::uint64_t stream_base) {
    return run_chain(cfg, ChainMode::digital, nullptr, n_symbols, seed, stream_base);
}

TrialStats run_analog_chain(const LinkConfig& cfg, const AnalogDesign& design,
                            std::size_t n_symbols, std::uint64_t seed,
                            std::uint64_t stream_base) {
    return run_chain(cfg, ChainMode::analog, &design, n_symbols, seed, stream_base);
}

CondStudy condition_number_study(std::size_t n_r, std::size_t k, SearchMethod method,
                                 std::size_t n_realizations, std::uint64_t seed,
                                 std::size_t threads) {
    if (k < 1 || k >= n_r || k > k_max(n_r))
        throw std::invalid_argument("condition_number_study: invalid (n_r, k)");
    CondStudy st;
    st.cond.resize(n_realizations);
    st.iterations.resize(n_realizations);

    const FactorizationPlan plan = k > 1 ? optimal_factorization(n_r, k) : FactorizationPlan{{n_r}};

    parallel_for(n_realizations, resolve_threads(threads),
                 [&](std::size_t begin, std::size_t end, std::size_t) {
                     for (std::size_t idx = begin; idx < end; ++idx) {
                         RngStream rng(seed, (std::uint64_t{1} << 40) + idx);
                         std::vector<double> th(k);
                         for (;;) {
                             for (double& t : th) t = 2.0 * M_PI * rng.uniform();
                             bool ok = true;
                             for (std::size_t i = 0; i < k && ok; ++i)
                                 for (std::size_t j = i + 1; j < k && ok; ++j)
                                     ok = circular_distance(th[i], th[j]) > 1e-6;
                             if (ok) break;
                         }
                         if (k == 1) {
                             const PhaseMatrix s = fourier_canceller({th[0], n_r});
                             st.cond[idx] = spectral_metrics(s.matrix).condition_number;
                             st.iterations[idx] = 1.0;
                         } else {
                             const MotherSet ms = generate_mother_set(plan, th);
                             const SelectionResult sel =
                                 select_independent(ms, n_r - k, method, rng);
                             st.cond[idx] = sel.metrics.condition_number;
                             st.iterations[idx] = static_cast<double>(sel.iterations);
                         }
                     }
                 });
    return st;
}

double measure_weak_sqnr_db(int bits, double ratio_db, std::size_t n_samples, RngStream& rng) {
    if (n_samples == 0) throw std::invalid_argument("measure_weak_sqnr_db: need samples");
    const double strong_amp = std::sqrt(std::pow(10.0, ratio_db / 10.0));

    // Constant-envelope strong interferer with random phase plus a unit-power
    // weak signal; quantize the composite on its own peak and measure the
    // total quantization error against the weak signal's power.
    CVec composite(n_samples);
    double weak_power = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const cxd strong = std::polar(strong_amp, 2.0 * M_PI * rng.uniform());
        const cxd weak = rng.gaussian_c(1.0);
        weak_power += std::norm(weak);
        composite[s] = strong + weak;
    }
    const AdcModel adc{bits, 0.0};
    const CVec q = quantize(composite, adc);
    double err_power = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) err_power += std::norm(q[s] - composite[s]);
    return 10.0 * std::log10(weak_power / err_power);
}

}  // namespace ascan
