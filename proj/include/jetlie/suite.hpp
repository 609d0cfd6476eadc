#pragma once

#include "jetlie/parallel.hpp"
#include "jetlie/quantum.hpp"
#include "jetlie/report.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jetlie {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Suite { Group, Poisson, Phi, Bialgebra, Cybe, Classify, Density, Quantum, Controls, All };

Suite suite_from_name(std::string_view name);
std::string suite_name(Suite s);

struct SuiteConfig {
    Suite suite = Suite::All;
    std::optional<int> n, d, hOrder, degree;
    std::string lambda = "symbolic";            // rational or "symbolic"
    std::map<std::string, std::string> params;  // C, C1..C5: rational or "symbolic"
    std::string set = "R2";
    std::string phi = "power";                  // power, extended, linear, exp, table:<file>
    bool corrected = false;
    Format format = Format::Json;
    std::string out;
};

// Throws ConfigError on out-of-range or unknown values.
void validate(const SuiteConfig& cfg);

// Runs the selected verifiers in a fixed order. Module errors become failed
// records named after the step that threw.
std::vector<Report> run_suite(const SuiteConfig& cfg, Exec exec = Exec::Parallel);

// Named checks shared by the suites and the acceptance run.
Report check_group_associativity(int n);
Report check_group_identity_inverse(int n);
Report check_group_law_printed();
Report check_vector_fields(int maxIndex, int truncation);
// One record per bracket against the printed table.
std::vector<Report> check_bracket_tables(int d, bool corrected);
Report check_quadrics();
Report check_witt_a_sequence();
Report check_branch_relations(int d, int D);
Report check_geometric_specialization(int d, int D);
Report check_g0_formulas(int D);
Report check_power_family_cochain(int d, int N);
Report check_witt_cochain(int N);
std::vector<Report> check_sl2();
std::vector<Report> quantum_records(const RelationSet& R, Exec exec = Exec::Parallel);

// Every verifier on a documented perturbed input; each record must fail.
std::vector<Report> negative_controls(Exec exec = Exec::Parallel);

}  // namespace jetlie
