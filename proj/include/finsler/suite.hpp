#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finsler/examples.hpp"

namespace finsler {

struct RunConfig {
    std::string example;
    std::vector<std::string> checks;  // empty: every check
    int samples = 200;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    std::string diff_method = "analytic";  // or "fd4"
    double step_scale = 1.0;
};

struct CheckReport {
    std::string check;
    double max_abs_defect = 0.0;
    std::size_t samples_used = 0;
    bool pass = true;
    std::optional<Sample> worst_sample;
    std::string detail;
};

// Sorted check vocabulary.
const std::vector<std::string>& check_names();

// Throws ConfigError (with line/column for syntax errors).
RunConfig parse_config(const std::string& text);

// "analytic": exact vertical derivatives, fd4 in x. "fd4": fd4 everywhere.
DiffEngine engine_of(const RunConfig& cfg);

// Reports sorted by check name. Check failures are reported; engine errors propagate.
std::vector<CheckReport> run_suite(const RunConfig& cfg);

// {"config": ..., "reports": [...]}, numbers printed with 17 significant digits.
std::string render_report(const RunConfig& cfg, const std::vector<CheckReport>& reports);

bool all_pass(const std::vector<CheckReport>& reports);

// Named field of an example: L, ell, phi, g, spray, N, berwald, chern,
// landsberg, cartan, torsion, legendre_residue, nonlinear_residue.
TensorField example_object(const Example& ex, const std::string& object, const DiffEngine& engine = {});
std::vector<std::string> object_names();

// 17-significant-digit formatting used by every JSON writer here.
std::string format_number(double v);

}  // namespace finsler
