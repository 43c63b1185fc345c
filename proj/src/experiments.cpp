#include "ascan/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ascan {

namespace {

const std::vector<std::string> kIds = {
    "cond-dist", "adc-impact", "ser-single", "ser-multi",    "tput-single",
    "tput-multi", "imperfect",  "k-impact",  "construct-only",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double d = 0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "'");
    }
    if (pos != v.size()) throw std::invalid_argument("config: bad numeric value for '" + key + "'");
    return d;
}

std::size_t parse_count(const std::string& v, const std::string& key) {
    const double d = parse_double(v, key);
    if (d < 0 || d != std::floor(d))
        throw std::invalid_argument("config: '" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(d);
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key));
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct CsvSink {
    std::ostream& os;
    const ExperimentSpec& spec;

    void row(const std::string& sweep_name, const std::string& sweep_value,
             const std::string& metric, double value, std::uint64_t n) {
        os << spec.id << ',' << sweep_name << ',' << sweep_value << ',' << metric << ','
           << fmt(value) << ',' << n << ',' << spec.seed << '\n';
    }
};

std::uint64_t point_stream_base(std::size_t point_idx) {
    return static_cast<std::uint64_t>(point_idx) << 24;
}

// ---- condition-number distribution reporting ---------------------------

void emit_cond_rows(CsvSink& csv, std::ostream& summary, const std::string& sweep_name,
                    const std::string& sweep_value, const CondStudy& st) {
    const std::size_t n = st.cond.size();
    std::vector<double> sorted = st.cond;
    std::sort(sorted.begin(), sorted.end());

    std::size_t finite = 0;
    for (double c : sorted) finite += std::isfinite(c);
    std::size_t below30 = 0;
    for (double c : sorted) below30 += c < 30.0;
    double iter_sum = 0;
    for (double it : st.iterations) iter_sum += it;

    auto quantile = [&](double q) {
        const std::size_t idx = std::min(n - 1, static_cast<std::size_t>(q * (n - 1) + 0.5));
        return sorted[idx];
    };

    csv.row(sweep_name, sweep_value, "finite_fraction", static_cast<double>(finite) / n, n);
    csv.row(sweep_name, sweep_value, "frac_below_30", static_cast<double>(below30) / n, n);
    csv.row(sweep_name, sweep_value, "mean_iterations", iter_sum / n, n);
    csv.row(sweep_name, sweep_value, "cond_p50", quantile(0.50), n);
    csv.row(sweep_name, sweep_value, "cond_p90", quantile(0.90), n);
    csv.row(sweep_name, sweep_value, "cond_p99", quantile(0.99), n);
    csv.row(sweep_name, sweep_value, "cond_max", sorted.back(), n);

    static const double edges[] = {1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 1000.0};
    for (std::size_t e = 0; e + 1 < std::size(edges); ++e) {
        std::size_t cnt = 0;
        for (double c : sorted) cnt += c >= edges[e] && c < edges[e + 1];
        csv.row(sweep_name, sweep_value,
                "hist_" + fmt(edges[e]) + "_" + fmt(edges[e + 1]), static_cast<double>(cnt), n);
    }
    std::size_t tail = 0;
    for (double c : sorted) tail += c >= 1000.0;
    csv.row(sweep_name, sweep_value, "hist_1000_inf", static_cast<double>(tail), n);

    summary << "  " << sweep_name << "=" << sweep_value << ": finite " << finite << "/" << n
            << ", p50 " << fmt(quantile(0.5)) << ", p99 " << fmt(quantile(0.99))
            << ", mean iterations " << fmt(iter_sum / n) << "\n";
}

// ---- experiment bodies --------------------------------------------------

void run_cond_dist(const ExperimentSpec& spec, CsvSink& csv, std::ostream& summary) {
    for (SearchMethod m : {SearchMethod::exhaust, SearchMethod::greedy, SearchMethod::random}) {
        const CondStudy st = condition_number_study(spec.link.n_r, spec.link.k, m,
                                                    spec.n_realizations, spec.seed,
                                                    spec.link.threads);
        emit_cond_rows(csv, summary, "method", method_name(m), st);
    }
}

void run_k_impact(const ExperimentSpec& spec, CsvSink& csv, std::ostream& summary) {
    const std::size_t kmax = std::min<std::size_t>(k_max(spec.link.n_r), 4);
    for (std::size_t k = 1; k <= kmax; ++k) {
        // Exhaust search is the reference; at k = 4 its subset space explodes
        // combinatorially, so the desk-scale default hands that point to the
        // greedy search (near-identical distributions, tractable cost).
        SearchMethod m = spec.method;
        std::size_t reals = spec.n_realizations;
        if (m == SearchMethod::exhaust && k == 4) m = SearchMethod::greedy;
        if (m == SearchMethod::exhaust && k == 3) reals = std::max<std::size_t>(1, reals / 4);
        const CondStudy st =
            condition_number_study(spec.link.n_r, k, m, reals, spec.seed, spec.link.threads);
        emit_cond_rows(csv, summary, "k", std::to_string(k), st);
    }
}

void run_adc_impact(const ExperimentSpec& spec, CsvSink& csv, std::ostream& summary) {
    std::size_t point = 0;
    for (int bits : {6, 10, 14, 16}) {
        for (int r = 0; r <= 90; r += 10) {
            LinkConfig cfg = spec.link;
            cfg.adc.bits = bits;
            cfg.use_ratio = true;
            cfg.ratio_db = r;
            const TrialStats ts =
                run_digital_baseline(cfg, spec.n_symbols, spec.seed, point_stream_base(point++));
            csv.row("ratio_db", fmt(r), "ser_it_digital_b" + std::to_string(bits), ts.ser_it,
                    ts.symbols);
        }
        summary << "  digital baseline swept for b=" << bits << "\n";
    }
}

void run_ser(const ExperimentSpec& spec, CsvSink& csv, std::ostream& summary) {
    RngStream design_rng(spec.seed, 0xD1CE);
    const AnalogDesign design = design_canceller(spec.link.n_r, spec.link.k, spec.link.thetas,
                                                 spec.method, design_rng, spec.link.threads);
    std::size_t point = 0;
    for (int rho = 0; rho <= 90; rho += 10) {
        LinkConfig cfg = spec.link;
        cfg.use_ratio = false;
        cfg.swipt_snr_db = rho;
        const TrialStats dig =
            run_digital_baseline(cfg, spec.n_symbols, spec.seed, point_stream_base(point++));
        const TrialStats ana =
            run_analog_chain(cfg, design, spec.n_symbols, spec.seed, point_stream_base(point++));
        csv.row("swipt_snr_db", fmt(rho), "ser_it_digital", dig.ser_it, dig.symbols);
        csv.row("swipt_snr_db", fmt(rho), "ser_it_analog", ana.ser_it, ana.symbols);
        csv.row("swipt_snr_db", fmt(rho), "ser_swipt_analog", ana.ser_swipt, ana.symbols);
        summary << "  rho=" << rho << " dB: digital " << fmt(dig.ser_it) << ", analog "
                << fmt(ana.ser_it) << ", swipt " << fmt(ana.ser_swipt) << "\n";
    }
}

void run_tput(const ExperimentSpec& spec, CsvSink& csv, std::ostream& summary) {
    RngStream design_rng(spec.seed, 0xD1CE);
    const AnalogDesign design = design_canceller(spec.link.n_r, spec.link.k, spec.link.thetas,
                                                 spec.method, design_rng, spec.link.threads);
    std::size_t point = 0;
    for (int order : {4, 16}) {
        for (int rho = 0; rho <= 90; rho += 10) {
            LinkConfig cfg = spec.link;
            cfg.mod_order = order;
            cfg.swipt_mod_order = order;
            cfg.use_ratio = false;
            cfg.swipt_snr_db = rho;
            const TrialStats dig =
                run_digital_baseline(cfg, spec.n_symbols, spec.seed, point_stream_base(point++));
            const TrialStats ana =
                run_analog_chain(cfg, design, spec.n_symbols, spec.seed, point_stream_base(point++));
            const std::string suffix = "_m" + std::to_string(order);
            csv.row("swipt_snr_db", fmt(rho), "tput_it_digital" + suffix, dig.throughput,
                    dig.symbols);
            csv.row("swipt_snr_db", fmt(rho), "tput_it_analog" + suffix, ana.throughput,
                    ana.symbols);
            if (rho == 60)
                summary << "  M=" << order << " rho=60 dB: analog " << fmt(ana.throughput)
                        << " vs digital " << fmt(dig.throughput) << " bits/symbol\n";
        }
    }
}

void run_imperfect(const ExperimentSpec& spec, CsvSink& csv, std::ostream& summary) {
    RngStream design_rng(spec.seed, 0xD1CE);
    const AnalogDesign design = design_canceller(spec.link.n_r, spec.link.k, spec.link.thetas,
                                                 spec.method, design_rng, spec.link.threads);
    std::size_t point = 0;
    for (int r = 0; r <= 80; r += 20) {
        LinkConfig cfg = spec.link;
        cfg.use_ratio = true;
        cfg.ratio_db = r;

        const TrialStats dig =
            run_digital_baseline(cfg, spec.n_symbols, spec.seed, point_stream_base(point++));
        csv.row("ratio_db", fmt(r), "ser_it_digital", dig.ser_it, dig.symbols);

        for (double sigma : {0.0, 0.01, 0.1}) {
            cfg.perturb_sigma = sigma;
            const TrialStats ana = run_analog_chain(cfg, design, spec.n_symbols, spec.seed,
                                                    point_stream_base(point++));
            std::string name = sigma == 0.0 ? "ser_it_analog"
                                            : (sigma == 0.01 ? "ser_it_analog_s001"
                                                             : "ser_it_analog_s010");
            csv.row("ratio_db", fmt(r), name, ana.ser_it, ana.symbols);
            if (r == 80)
                summary << "  R=80 dB sigma_e=" << fmt(sigma) << ": analog " << fmt(ana.ser_it)
                        << " (digital " << fmt(dig.ser_it) << ")\n";
        }
    }
}

void run_construct_only(const ExperimentSpec& spec, CsvSink& csv, std::ostream& summary) {
    const std::size_t n_r = spec.link.n_r, k = spec.link.k;
    // Same pipeline that export-program uses, so the printed matrix and the
    // exported program always agree (the k = 1 plan is the single factor n_r).
    const FactorizationPlan plan =
        k > 1 ? optimal_factorization(n_r, k) : FactorizationPlan{{n_r}};
    const MotherSet ms = generate_mother_set(plan, spec.link.thetas);
    RngStream rng(spec.seed, 0xD1CE);
    const SelectionResult sel =
        select_independent(ms, n_r - k, spec.method, rng, 1e-9, 10000, spec.link.threads);
    const CMat s = stack_selection(ms, sel.indices).matrix;

    double residual = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        residual = std::max(residual, zf_residual(s, steering_vector({spec.link.thetas[i], n_r})));
    const SpectralMetrics met = spectral_metrics(s);

    const std::string sv = std::to_string(n_r);
    csv.row("n_r", sv, "zf_residual_max", residual, 1);
    csv.row("n_r", sv, "condition_number", met.condition_number, 1);
    csv.row("n_r", sv, "numeric_rank", static_cast<double>(met.numeric_rank), 1);
    csv.row("n_r", sv, "selection_iterations", static_cast<double>(sel.iterations), 1);
    csv.row("n_r", sv, "mother_set_size", static_cast<double>(ms.vectors.size()), 1);
    csv.row("n_r", sv, "n_orth", static_cast<double>(ms.n_orth), 1);
    csv.row("n_r", sv, "n_sub", static_cast<double>(ms.n_sub), 1);

    summary << "cancellation matrix S (" << s.rows() << " x " << s.cols() << "), angles";
    for (double t : spec.link.thetas) summary << ' ' << fmt(t);
    summary << " rad\n";
    char buf[64];
    for (std::size_t r = 0; r < s.rows(); ++r) {
        summary << "  ";
        for (std::size_t c = 0; c < s.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%+.6f%+.6fj ", s(r, c).real(), s(r, c).imag());
            summary << buf;
        }
        summary << "\n";
    }
    summary << "max zero-forcing residual: " << fmt(residual) << "\n";
    summary << "condition number: " << fmt(met.condition_number) << ", rank "
            << met.numeric_rank << "\n";
}

}  // namespace

const std::vector<std::string>& experiment_ids() { return kIds; }

bool is_experiment_id(const std::string& id) {
    return std::find(kIds.begin(), kIds.end(), id) != kIds.end();
}

SearchMethod parse_method(const std::string& name) {
    if (name == "exhaust") return SearchMethod::exhaust;
    if (name == "greedy") return SearchMethod::greedy;
    if (name == "random") return SearchMethod::random;
    throw std::invalid_argument("config: method must be exhaust, greedy or random");
}

const char* method_name(SearchMethod m) {
    switch (m) {
        case SearchMethod::exhaust: return "exhaust";
        case SearchMethod::greedy: return "greedy";
        case SearchMethod::random: return "random";
    }
    return "?";
}

ExperimentSpec default_spec(const std::string& id) {
    if (!is_experiment_id(id)) throw std::invalid_argument("unknown experiment id '" + id + "'");
    ExperimentSpec spec;
    spec.id = id;
    // Common operating point: 4x4 link, 10 dB information SNR, 6-bit ADCs,
    // 4-QAM, two spatial streams.
    spec.link = LinkConfig{};
    spec.n_symbols = 100000;
    spec.n_realizations = 10000;

    if (id == "cond-dist") {
        spec.link.n_r = 12;
        spec.link.n_t = 12;
        spec.link.k = 2;
        spec.link.it_streams = 2;
    } else if (id == "k-impact") {
        spec.link.n_r = 16;
        spec.link.n_t = 16;
        spec.link.k = 1;
        spec.n_realizations = 1000;
    } else if (id == "ser-multi") {
        spec.link.k = 2;
    } else if (id == "tput-single") {
        spec.link.it_streams = 3;
        spec.link.mod_order = 16;
        spec.link.swipt_mod_order = 16;
        spec.link.adc.bits = 8;
    } else if (id == "tput-multi") {
        spec.link.k = 2;
        spec.link.it_streams = 2;
        spec.link.mod_order = 16;
        spec.link.swipt_mod_order = 16;
        spec.link.adc.bits = 8;
    } else if (id == "imperfect") {
        // With estimate errors the front end leaks interference; the detector
        // treats the (pilot-estimable) leak directions as known channel
        // columns rather than noise.
        spec.link.genie_residual_zf = true;
    } else if (id == "construct-only") {
        spec.link.n_r = 6;
        spec.link.n_t = 6;
        spec.link.k = 2;
        spec.link.it_streams = 2;
        spec.link.thetas = {0.7, 2.1};
    }
    return spec;
}

void validate_spec(ExperimentSpec& spec) {
    if (!is_experiment_id(spec.id)) throw std::invalid_argument("unknown experiment id '" + spec.id + "'");
    if (spec.full_scale) {
        spec.n_symbols *= 10;
        spec.n_realizations *= 10;
        spec.full_scale = false;
    }
    if (spec.n_symbols == 0 || spec.n_realizations == 0)
        throw std::invalid_argument("config: budgets must be positive");
    if (spec.link.thetas.empty()) spec.link.thetas = default_thetas(spec.link.k);
    validate_config(spec.link);
}

ExperimentSpec parse_config(const std::string& id, const std::string& config_text) {
    ExperimentSpec spec = default_spec(id);

    std::istringstream in(config_text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");

        if (key == "n_r") spec.link.n_r = parse_count(value, key);
        else if (key == "n_t") spec.link.n_t = parse_count(value, key);
        else if (key == "k") spec.link.k = parse_count(value, key);
        else if (key == "it_streams") spec.link.it_streams = parse_count(value, key);
        else if (key == "it_snr_db") spec.link.it_snr_db = parse_double(value, key);
        else if (key == "swipt_snr_db") {
            spec.link.swipt_snr_db = parse_double(value, key);
            spec.link.use_ratio = false;
        } else if (key == "ratio_db") {
            spec.link.ratio_db = parse_double(value, key);
            spec.link.use_ratio = true;
        } else if (key == "adc_bits") spec.link.adc.bits = static_cast<int>(parse_count(value, key));
        else if (key == "adc_fullscale") spec.link.adc.fixed_fullscale = parse_double(value, key);
        else if (key == "mod_order") spec.link.mod_order = static_cast<int>(parse_count(value, key));
        else if (key == "swipt_mod_order")
            spec.link.swipt_mod_order = static_cast<int>(parse_count(value, key));
        else if (key == "sqnr_c_db") spec.link.sqnr_c_db = parse_double(value, key);
        else if (key == "sigma_e") spec.link.perturb_sigma = parse_double(value, key);
        else if (key == "block_symbols") spec.link.block_symbols = parse_count(value, key);
        else if (key == "noise_var") spec.link.noise_var = parse_double(value, key);
        else if (key == "quantization") {
            if (value == "on") spec.link.quantization = true;
            else if (value == "off") spec.link.quantization = false;
            else throw std::invalid_argument("config: quantization must be on or off");
        } else if (key == "genie_residual_zf") {
            if (value == "on") spec.link.genie_residual_zf = true;
            else if (value == "off") spec.link.genie_residual_zf = false;
            else throw std::invalid_argument("config: genie_residual_zf must be on or off");
        } else if (key == "thetas") spec.link.thetas = parse_list(value, key);
        else if (key == "threads") spec.link.threads = parse_count(value, key);
        else if (key == "method") spec.method = parse_method(value);
        else if (key == "n_symbols") spec.n_symbols = parse_count(value, key);
        else if (key == "n_realizations") spec.n_realizations = parse_count(value, key);
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
    }

    validate_spec(spec);
    return spec;
}

void write_csv_header(std::ostream& csv) {
    csv << "experiment,sweep_name,sweep_value,metric,value,n_symbols_or_reals,seed\n";
}

void run_experiment(const ExperimentSpec& spec_in, std::ostream& csv, std::ostream& summary) {
    ExperimentSpec spec = spec_in;
    validate_spec(spec);
    CsvSink sink{csv, spec};

    summary << "experiment " << spec.id << " (seed " << spec.seed << ")\n";
    if (spec.id == "cond-dist") run_cond_dist(spec, sink, summary);
    else if (spec.id == "k-impact") run_k_impact(spec, sink, summary);
    else if (spec.id == "adc-impact") run_adc_impact(spec, sink, summary);
    else if (spec.id == "ser-single" || spec.id == "ser-multi") run_ser(spec, sink, summary);
    else if (spec.id == "tput-single" || spec.id == "tput-multi") run_tput(spec, sink, summary);
    else if (spec.id == "imperfect") run_imperfect(spec, sink, summary);
    else if (spec.id == "construct-only") run_construct_only(spec, sink, summary);
    else throw std::logic_error("unhandled experiment id");
}

std::string export_phase_program_text(const ExperimentSpec& spec_in) {
    ExperimentSpec spec = spec_in;
    validate_spec(spec);
    const std::size_t n_r = spec.link.n_r, k = spec.link.k;
    if (k < 1) throw std::invalid_argument("export: k must be >= 1");

    const FactorizationPlan plan =
        k > 1 ? optimal_factorization(n_r, k) : FactorizationPlan{{n_r}};
    const MotherSet ms = generate_mother_set(plan, spec.link.thetas);
    RngStream rng(spec.seed, 0xD1CE);
    const SelectionResult sel =
        select_independent(ms, n_r - k, spec.method, rng, 1e-9, 10000, spec.link.threads);
    return serialize_program(compile_phase_program(ms, sel.indices));
}

}  // namespace ascan
