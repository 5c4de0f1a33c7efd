#ifndef REOSCHED_LP_FORMAT_HPP
#define REOSCHED_LP_FORMAT_HPP

#include <string>

#include "reosched/milp_model.hpp"

namespace reosched {

// Canonical LP-format text (CPLEX LP dialect): Maximize / Subject To /
// Bounds / Binaries / End. Ordering is fixed (columns by index, row terms
// sorted by column, every bound explicit), numbers print as shortest
// round-trip decimals, so the text is bit-exact for a fixed model.
std::string export_lp(const MilpModel& model, const std::string& name = "reosched");

// Parses the dialect written by export_lp (plus unwrapped whitespace and
// sign variations). Columns are created in order of first appearance;
// decision coordinates are not recovered. Throws IngestionError on syntax
// errors, with a line number.
MilpModel parse_lp(const std::string& text);

void write_lp_file(const std::string& path, const MilpModel& model,
                   const std::string& name = "reosched");
MilpModel read_lp_file(const std::string& path);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Solution file: one status header line, then "name value" per variable.
std::string format_solution(const MilpModel& model, const std::vector<double>& values,
                            const std::string& status);

} // namespace reosched

#endif // REOSCHED_LP_FORMAT_HPP
