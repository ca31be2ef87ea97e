#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eymkit/eym.hpp"

namespace eymkit {

// Stable exit codes.
enum ExitCode : int { kOk = 0, kMismatch = 1, kCatalogError = 2, kUnknownCase = 3, kBadArguments = 4 };

// Runs cases concurrently; results come back in input order.
std::vector<CaseReport> run_cases(const std::vector<const LiePair*>& pairs, const HolonomyMetric& hm);

// Parses "a=3,b=-5/2".
Assignment parse_sample(std::string_view text);

// Full command line: verbs list, validate, report, tables, solve.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eymkit
