#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moquery/gen.hpp"
#include "moquery/model.hpp"

namespace moquery {

struct BenchRow {
  Distribution distribution;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t constraintCount = 0;
  std::size_t skylineSize = 0;
  std::size_t ndSize = 0;
  std::size_t poSize = 0;
  std::uint64_t windowComparisons = 0;
  std::uint64_t dominanceTests = 0;
  std::uint64_t lpSolves = 0;
};

// Size sweep: for every seed and every n, generates a dataset and measures
// skyline, non-dominated and potentially-optimal result sizes under the
// given constraints.  Rows are emitted seeds-outer, sizes-inner.
std::vector<BenchRow> bench_sizes(const std::vector<std::size_t>& sizes,
                                  const std::vector<std::uint64_t>& seeds, Distribution dist,
                                  std::size_t m,
                                  const std::vector<LinearConstraint>& constraints);

// Deterministic CSV (no timings; timings belong in run reports).
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace moquery
