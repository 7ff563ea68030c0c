#pragma once

#include <string>
#include <vector>

#include "hlim/config.hpp"
#include "hlim/inequalities.hpp"

namespace hlim {

struct PropertyResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct PropertySuite {
  std::vector<PropertyResult> results;
  bool all_passed() const;
};

/// max |w - (-cos x sin(pi z) / pi)| for v = (sin x cos(pi z), 0) on an n^3
/// grid with L1 = L2 = 2 pi.
double diagnostic_w_manufactured_error(int n);

/// Relative change of the max ratio over `samples` random triples between
/// N = n and N = 2n.
double ratio_refinement_change(InequalityId id, int n, int samples, std::uint64_t seed);

/// Parity, divergence, energy audits, budget growth, the manufactured
/// diagnostic_w check and inequality ratio refinement stability, on the configured
/// grid, recipe, dt and horizon.
PropertySuite run_property_suite(const RunConfig& cfg);

}  // namespace hlim
