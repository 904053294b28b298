#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moquery/model.hpp"

namespace moquery {

// Pareto dominance: t is at least as good everywhere and strictly better
// somewhere.  Exact comparisons, no tolerance.  ContractError on arity
// mismatch.
bool dominates(const Tuple& t, const Tuple& s);

struct SkylineStats {
  // One comparison is one tuple-vs-window-entry encounter, whichever
  // directions were evaluated during it.
  std::uint64_t windowComparisons = 0;
  std::uint64_t evictions = 0;
};

// Block-nested-loops skyline with an unbounded window.  Returns skyline ids
// in ascending order.  ContractError on an empty dataset.
std::vector<std::string> bnl(const Dataset& d, SkylineStats* stats = nullptr);

// Sort-filter-skyline: tuples are sorted by a monotone entropy key so that
// no later tuple can dominate an earlier one, making every window insertion
// final.  Returns skyline ids in emission (sorted) order; evictions counts
// violations of the sorted-order guarantee and must stay 0.
std::vector<std::string> sfs(const Dataset& d, SkylineStats* stats = nullptr);

// Sort key used by sfs, exposed for inspection: sum of ln(1 + v') over
// min-max normalized attributes, where a constant column contributes 0.
std::vector<std::size_t> entropy_order(const Dataset& d);

}  // namespace moquery
