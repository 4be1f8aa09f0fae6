#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/fracops.hpp"
#include "core/report.hpp"
#include "core/solver.hpp"
#include "core/varcalc.hpp"

namespace fcv {

// CSV grid files have the header "x,value" and one row per node. Nodes must
// be uniform within 1e-9 h. All readers throw Error(Format) on malformed
// input.

GridFunction grid_from_csv(std::string_view text);

/// Numbers are printed with 17 significant digits. A singular node is
/// written as inf or -inf.
std::string grid_to_csv(const GridFunction& f,
                        std::optional<std::size_t> singular_node = std::nullopt,
                        int singular_sign = 0);

/// Fields lagrangian (DSL text), alpha, a, b, ya, yb, n_grid. Parse errors
/// inside the Lagrangian propagate as ParseError; invalid values as the
/// corresponding domain or order errors.
VariationalProblem problem_from_json(std::string_view text);
std::string problem_to_json(const VariationalProblem& p);

// JSON output uses the shortest representation that reads back to the same
// double. Non-finite numbers become null.

std::string to_json(const Report& r);
std::string to_json(const std::vector<Report>& reports);
std::string to_json(const ELReport& r, double transversality);
std::string to_json(const WitnessReport& w);
std::string to_json(const SolveResult& s, double transversality);

}  // namespace fcv
