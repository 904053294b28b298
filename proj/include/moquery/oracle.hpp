#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "moquery/model.hpp"

namespace moquery::oracle {

// Reference implementations: exhaustive scans in plain form, with exact
// rational arithmetic wherever geometry is involved.  Nothing here calls
// the production operators; results come from first principles so the two
// sides can disagree honestly.

// Full sort by score descending, id ascending; first k entries.
std::vector<std::pair<std::string, double>> brute_topk(const Dataset& d,
                                                       const ScoringFunction& f, std::size_t k);

// Pairwise dominance scan; ids ascending.
std::vector<std::string> brute_skyline(const Dataset& d);

// One closed linear constraint with exact rational data, written as decimal
// strings ("0.3", "-1", "2.5"); coefficient vector then bound, a . w <= b.
struct ExactConstraint {
  std::vector<std::string> coeffs;
  std::string bound;
};

// Polytope vertices by exhaustive hyperplane-subset solving over the
// rationals; converts to double only on return.  Lexicographically sorted.
// Caps: dim <= 4, at most 10 constraints.
std::vector<std::vector<double>> brute_vertices(const WeightPolytope& poly);
std::vector<std::vector<double>> brute_vertices(std::size_t dim,
                                                const std::vector<ExactConstraint>& constraints);

// Non-dominated set under the restricted dominance relation, evaluated
// exactly at the rational vertices; ids ascending.
std::vector<std::string> brute_nd(const Dataset& d, const WeightPolytope& poly);

struct PoCertificate {
  std::string id;
  std::vector<double> weight;  // a weight vector where the tuple is top-1
};

// Potentially optimal tuples found by scanning an exact weight grid of the
// given resolution (>= 100) across the polytope, vertices included.  Exact
// rational scoring breaks near-ties.  Certificates sorted by id.
std::vector<PoCertificate> brute_po(const Dataset& d, const WeightPolytope& poly,
                                    std::size_t resolution);

}  // namespace moquery::oracle
