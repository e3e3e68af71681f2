#pragma once

#include <string>

#include "grushin/lab.hpp"

namespace grushin {

// RFC 4180 field quoting (quotes fields containing commas, quotes, newlines).
std::string csv_escape(const std::string& field);

// Round-trippable decimal rendering; identical input bits give identical text.
std::string format_number(double v);

// columns: case,m,k,gamma,alpha,epsilon,delta,quotient,target,extrapolated,rel_gap
std::string sweep_csv(const SweepReport& rep);
std::string fuzz_csv(const FuzzReport& rep, const InequalityCase& c);
std::string identities_csv(const IdentitySuiteReport& rep);
std::string estimate_csv(const EstimateReport& rep, const InequalityCase& c);

// JSON mirrors carrying the same fields as the CSVs.
std::string sweep_json(const SweepReport& rep);
std::string fuzz_json(const FuzzReport& rep, const InequalityCase& c);
std::string identities_json(const IdentitySuiteReport& rep);
std::string estimate_json(const EstimateReport& rep, const InequalityCase& c);

// Minimal SVG line plot of quotient against epsilon with a horizontal
// target line (one polyline per delta value).
std::string sweep_svg(const SweepReport& rep);

void write_file(const std::string& path, const std::string& contents);

}  // namespace grushin
