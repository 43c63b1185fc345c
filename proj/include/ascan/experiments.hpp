#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ascan/link_sim.hpp"

namespace ascan {

// One runnable experiment: an id from the registry, a link operating point,
// Monte-Carlo budgets, and a seed. Unknown config keys are rejected at parse
// time; defaults come from the registry entry.
struct ExperimentSpec {
    std::string id;
    std::uint64_t seed = 1;
    std::string out_path;
    bool full_scale = false;  // x10 budgets
    LinkConfig link;
    SearchMethod method = SearchMethod::exhaust;
    std::size_t n_symbols = 100000;
    std::size_t n_realizations = 10000;
};

const std::vector<std::string>& experiment_ids();
bool is_experiment_id(const std::string& id);

// Registry defaults for one id (desk-scale budgets).
ExperimentSpec default_spec(const std::string& id);

// Key/value config text: one `key = value` per line, `#` comments. Applies
// on top of the registry defaults and validates the result.
ExperimentSpec parse_config(const std::string& id, const std::string& config_text);

// Finish and check a spec (fills default angles, bounds-checks everything).
void validate_spec(ExperimentSpec& spec);

// Runs the experiment, appending CSV rows (schema:
// experiment,sweep_name,sweep_value,metric,value,n_symbols_or_reals,seed)
// and a human-readable summary. Deterministic for a fixed spec.
void run_experiment(const ExperimentSpec& spec, std::ostream& csv, std::ostream& summary);

void write_csv_header(std::ostream& csv);

// Serialized phase program for a construct-only spec.
std::string export_phase_program_text(const ExperimentSpec& spec);

SearchMethod parse_method(const std::string& name);
const char* method_name(SearchMethod m);

}  // namespace ascan
