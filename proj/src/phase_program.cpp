#include "ascan/phase_program.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ascan {

PhaseProgramSet compile_phase_program(const MotherSet& ms, const std::vector<std::size_t>& indices) {
    const std::size_t k = ms.plan.factors.size();
    const std::size_t n_r = static_cast<std::size_t>(ms.plan.product());

    PhaseProgramSet prog;
    prog.n_r = n_r;
    prog.k = k;
    prog.rows.reserve(indices.size());

    for (std::size_t row_idx : indices) {
        const MotherVectorMeta& meta = ms.meta.at(row_idx);
        PhaseProgramRow row;
        row.entries.resize(n_r);
        for (std::size_t n = 0; n < n_r; ++n) {
            PhaseProgramEntry& e = row.entries[n];
            e.gamma.assign(k, 0);
            // Mixed-radix digits of the entry index give the per-slot DFT
            // sample position q_i; each slot contributes its DFT-row phase to
            // beta and -q_i * stride_i to the targeted angle's coefficient.
            std::size_t rem = n, stride = 1;
            double beta = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t n_i = static_cast<std::size_t>(ms.plan.factors[i]);
                const std::size_t q = rem % n_i;
                rem /= n_i;
                beta += 2.0 * M_PI * static_cast<double>(meta.rows[i] * q % n_i) /
                        static_cast<double>(n_i);
                e.gamma[meta.order[i]] -= static_cast<long>(q * stride);
                stride *= n_i;
            }
            e.beta = beta;
        }
        prog.rows.push_back(std::move(row));
    }
    return prog;
}

PhaseMatrix evaluate_program(const PhaseProgramSet& prog, const std::vector<double>& thetas) {
    if (thetas.size() != prog.k)
        throw std::invalid_argument("evaluate_program: one angle per interferer");
    PhaseMatrix pm;
    pm.matrix = CMat(prog.rows.size(), prog.n_r);
    for (std::size_t r = 0; r < prog.rows.size(); ++r) {
        for (std::size_t c = 0; c < prog.n_r; ++c) {
            const PhaseProgramEntry& e = prog.rows[r].entries[c];
            double phase = e.beta;
            for (std::size_t i = 0; i < prog.k; ++i)
                phase += static_cast<double>(e.gamma[i]) * thetas[i];
            pm.matrix(r, c) = std::polar(1.0, phase);
        }
    }
    pm.provenance = Provenance::kronecker;
    pm.cost = {prog.rows.size() * prog.n_r, prog.rows.size()};
    return pm;
}

std::string serialize_program(const PhaseProgramSet& prog) {
    std::ostringstream out;
    out << "ascan-phase-program v1\n";
    out << "nr " << prog.n_r << "\n";
    out << "k " << prog.k << "\n";
    out << "rows " << prog.rows.size() << "\n";
    char buf[64];
    for (std::size_t r = 0; r < prog.rows.size(); ++r) {
        out << "row " << r << "\n";
        for (const PhaseProgramEntry& e : prog.rows[r].entries) {
            std::snprintf(buf, sizeof buf, "%.17g", e.beta);
            out << buf;
            for (long g : e.gamma) out << ' ' << g;
            out << "\n";
        }
    }
    return out.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
    throw std::runtime_error("phase program parse error at line " + std::to_string(line_no) +
                             ": " + why);
}

}  // namespace

PhaseProgramSet parse_program(std::istream& in) {
    PhaseProgramSet prog;
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line() || line != "ascan-phase-program v1") parse_fail(line_no ? line_no : 1, "missing header");

    std::size_t n_rows = 0;
    for (int field = 0; field < 3; ++field) {
        if (!next_line()) parse_fail(line_no + 1, "truncated preamble");
        std::istringstream ls(line);
        std::string key;
        std::size_t value = 0;
        if (!(ls >> key >> value)) parse_fail(line_no, "expected '<key> <count>'");
        if (key == "nr")
            prog.n_r = value;
        else if (key == "k")
            prog.k = value;
        else if (key == "rows")
            n_rows = value;
        else
            parse_fail(line_no, "unknown preamble key '" + key + "'");
    }
    if (prog.n_r == 0 || prog.k == 0) parse_fail(line_no, "nr and k must be positive");

    for (std::size_t r = 0; r < n_rows; ++r) {
        if (!next_line()) parse_fail(line_no + 1, "missing row header");
        std::istringstream rh(line);
        std::string key;
        std::size_t row_idx = 0;
        if (!(rh >> key >> row_idx) || key != "row" || row_idx != r)
            parse_fail(line_no, "expected 'row " + std::to_string(r) + "'");
        PhaseProgramRow row;
        row.entries.resize(prog.n_r);
        for (std::size_t c = 0; c < prog.n_r; ++c) {
            if (!next_line()) parse_fail(line_no + 1, "truncated entry list");
            std::istringstream es(line);
            PhaseProgramEntry& e = row.entries[c];
            if (!(es >> e.beta)) parse_fail(line_no, "bad beta value");
            e.gamma.resize(prog.k);
            for (std::size_t i = 0; i < prog.k; ++i)
                if (!(es >> e.gamma[i])) parse_fail(line_no, "bad gamma coefficient");
            long extra;
            if (es >> extra) parse_fail(line_no, "trailing fields");
        }
        prog.rows.push_back(std::move(row));
    }
    return prog;
}

PhaseProgramSet parse_program(const std::string& text) {
    std::istringstream in(text);
    return parse_program(in);
}

}  // namespace ascan
