#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ascan/kron_canceller.hpp"

namespace ascan {

// One matrix entry as an affine phase function of the interference angles:
// phase = beta + sum_i gamma[i] * Theta_i. The gammas are integers (negated
// antenna strides), so re-pointing the canceller at new angles is a handful
// of multiply-adds per phase shifter.
struct PhaseProgramEntry {
    double beta = 0.0;
    std::vector<long> gamma;
};

struct PhaseProgramRow {
    std::vector<PhaseProgramEntry> entries;
};

struct PhaseProgramSet {
    std::size_t n_r = 0;
    std::size_t k = 0;
    std::vector<PhaseProgramRow> rows;
};

// Programs for the selected mother-set vectors. Evaluating at the
// construction angles reproduces the stacked matrix exactly.
PhaseProgramSet compile_phase_program(const MotherSet& ms, const std::vector<std::size_t>& indices);

PhaseMatrix evaluate_program(const PhaseProgramSet& prog, const std::vector<double>& thetas);

// Plain-text record: per entry, beta to 17 significant digits plus the
// integer gammas. Round-trips exactly.
std::string serialize_program(const PhaseProgramSet& prog);
PhaseProgramSet parse_program(const std::string& text);
PhaseProgramSet parse_program(std::istream& in);

}  // namespace ascan
