// Compares the symbolic pipeline of one case with the numeric oracle at random
// parameter points. Shared by the oracle test and the acceptance binary.
#pragma once

#include <string>
#include <vector>

#include "eymkit/eym.hpp"

namespace oracle {

struct Comparison {
  int points = 0;          // points actually compared
  std::vector<std::string> mismatches;
  bool pass() const { return points > 0 && mismatches.empty(); }
};

Comparison compare_case(const eymkit::LiePair& p, const eymkit::CaseReport& r, int points, std::uint64_t seed);

}  // namespace oracle
