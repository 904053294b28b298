#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moquery/geometry.hpp"
#include "moquery/model.hpp"

namespace moquery {

enum class DominanceBackend { Lp, Ve };

// Vertex enumeration is cheap while the vertex count stays small; fall back
// to per-pair LPs once the constraint set could blow it up.
DominanceBackend default_backend(const WeightPolytope& poly);

struct FlexStats {
  std::uint64_t dominanceTests = 0;
  std::uint64_t lpSolves = 0;
  std::uint64_t vertexEnumerations = 0;
  std::uint64_t sortOperations = 0;
  // Largest number of window entries any single tuple was tested against.
  std::uint64_t maxWindowTestsPerTuple = 0;
};

// A compiled restricted-dominance query: the weight polytope, its vertex
// set (enumerated once at construction) and the backend used for pairwise
// dominance tests.
struct FlexQuery {
  WeightPolytope polytope;
  VertexSet vertices;
  DominanceBackend backend = DominanceBackend::Ve;

  static FlexQuery make(WeightPolytope poly, DominanceBackend backend, FlexStats* stats = nullptr);
};

// Pairwise restricted dominance with the duplicate rule applied: identical
// value vectors never dominate each other.
bool fdominates(const Tuple& t, const Tuple& s, const FlexQuery& q, FlexStats* stats = nullptr);

// Tuples not restricted-dominated by any other tuple.  Two-phase baseline:
// conventional skyline first, then pairwise tests within it.  Ids ascending.
std::vector<std::string> nd_baseline(const Dataset& d, const FlexQuery& q,
                                     FlexStats* stats = nullptr);

// One-phase variant: sort by score at the polytope's vertex centroid
// (descending, ties by id), then filter through a window that never needs
// eviction.  Ids ascending.
std::vector<std::string> nd_sorted(const Dataset& d, const FlexQuery& q,
                                   FlexStats* stats = nullptr);

// Tuples that are top-1 for at least one scoring function in the polytope;
// an exact tie with the maximum counts, so a dominated tuple can qualify
// when values coincide at some admissible weight vector.  Baseline: one LP
// per tuple, maximizing the minimum score gap to the non-dominated
// competitors over the polytope.  Ids ascending.
std::vector<std::string> po_baseline(const Dataset& d, const FlexQuery& q,
                                     FlexStats* stats = nullptr);

// Dual formulation: a tuple is discarded when a convex combination of the
// non-dominated competitors strictly outscores it at every vertex.  The
// combination is searched over doubling prefixes of the competitor list so
// easy rejections stay small.  Ids ascending.
std::vector<std::string> po_incremental(const Dataset& d, const FlexQuery& q,
                                        FlexStats* stats = nullptr);

}  // namespace moquery
