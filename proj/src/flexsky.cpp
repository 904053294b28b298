#include "moquery/flexsky.hpp"

#include <algorithm>

#include "moquery/errors.hpp"
#include "moquery/skyline.hpp"

namespace moquery {

namespace {

// Splits a genuinely positive dominance margin from solver noise around an
// exact score tie; sits above kGeomEps on purpose.
constexpr double kBoundaryEps = 1e-7;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

DominanceBackend default_backend(const WeightPolytope& poly) {
  return (poly.dim <= 4 && poly.constraints.size() <= 8) ? DominanceBackend::Ve
                                                         : DominanceBackend::Lp;
}

FlexQuery FlexQuery::make(WeightPolytope poly, DominanceBackend backend, FlexStats* stats) {
  FlexQuery q;
  q.vertices = enumerate_vertices(poly);
  if (stats) ++stats->vertexEnumerations;
  if (q.vertices.count() == 0) throw DataError("empty preference set");
  q.polytope = std::move(poly);
  q.backend = backend;
  return q;
}

bool fdominates(const Tuple& t, const Tuple& s, const FlexQuery& q, FlexStats* stats) {
  if (stats) ++stats->dominanceTests;
  if (t.values == s.values) return false;
  if (q.backend == DominanceBackend::Ve) return fdominates_ve(t, s, q.vertices);
  if (stats) ++stats->lpSolves;
  return fdominates_lp(t, s, q.polytope);
}

namespace {

std::vector<std::string> sorted_ids(const std::vector<const Tuple*>& tuples) {
  std::vector<std::string> ids;
  ids.reserve(tuples.size());
  for (const Tuple* t : tuples) ids.push_back(t->id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Window order: centroid score descending, ties by id ascending.  The
// centroid of the vertex set lies inside the polytope, so a tuple that
// restricted-dominates another never sorts after it except on exact ties,
// which the window test still catches.
void check_flex_inputs(const Dataset& d, const FlexQuery& q) {
  if (d.tuples.empty()) throw ContractError("empty dataset");
  if (d.attributes.size() != q.polytope.dim) {
    throw ContractError("weight polytope dimension does not match dataset arity");
  }
}

std::vector<const Tuple*> nd_window(const Dataset& d, const FlexQuery& q, FlexStats* stats) {
  check_flex_inputs(d, q);
  std::vector<double> center = q.vertices.centroid();

  std::vector<const Tuple*> order;
  order.reserve(d.size());
  for (const Tuple& t : d.tuples) order.push_back(&t);
  std::sort(order.begin(), order.end(), [&](const Tuple* a, const Tuple* b) {
    double sa = dot(center, a->values), sb = dot(center, b->values);
    if (sa != sb) return sa > sb;
    return a->id < b->id;
  });
  if (stats) ++stats->sortOperations;

  std::vector<const Tuple*> window;
  for (const Tuple* t : order) {
    std::uint64_t tests = 0;
    bool dropped = false;
    for (const Tuple* w : window) {
      ++tests;
      if (fdominates(*w, *t, q, stats)) {
        dropped = true;
        break;
      }
    }
    if (stats) stats->maxWindowTestsPerTuple = std::max(stats->maxWindowTestsPerTuple, tests);
    if (!dropped) window.push_back(t);
  }
  return window;
}

}  // namespace

std::vector<std::string> nd_baseline(const Dataset& d, const FlexQuery& q, FlexStats* stats) {
  check_flex_inputs(d, q);
  std::vector<std::string> sky = sfs(d);
  std::sort(sky.begin(), sky.end());

  std::vector<const Tuple*> members;
  members.reserve(sky.size());
  for (const Tuple& t : d.tuples) {
    if (std::binary_search(sky.begin(), sky.end(), t.id)) members.push_back(&t);
  }

  std::vector<const Tuple*> kept;
  for (const Tuple* t : members) {
    bool dominated = false;
    for (const Tuple* s : members) {
      if (s == t) continue;
      if (fdominates(*s, *t, q, stats)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(t);
  }
  return sorted_ids(kept);
}

std::vector<std::string> nd_sorted(const Dataset& d, const FlexQuery& q, FlexStats* stats) {
  return sorted_ids(nd_window(d, q, stats));
}

namespace {

// Non-dominated members that do not share t's exact value vector; those
// never count as competitors.
std::vector<const Tuple*> competitors_of(const Tuple* t, const std::vector<const Tuple*>& nd) {
  std::vector<const Tuple*> out;
  out.reserve(nd.size());
  for (const Tuple* s : nd) {
    if (s->values != t->values) out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<std::string> po_baseline(const Dataset& d, const FlexQuery& q, FlexStats* stats) {
  check_flex_inputs(d, q);
  std::vector<std::string> ndIds = nd_baseline(d, q, stats);
  std::vector<const Tuple*> nd;
  nd.reserve(ndIds.size());
  for (const Tuple& t : d.tuples) {
    if (std::binary_search(ndIds.begin(), ndIds.end(), t.id)) nd.push_back(&t);
  }

  // Candidates are all tuples, not just the non-dominated ones: a dominated
  // tuple can still tie the maximum at some admissible weight vector, which
  // counts as potentially optimal.  Competitors stay restricted to the
  // non-dominated set; beating every member of it beats everything.
  const std::size_t dim = q.polytope.dim;
  std::vector<const Tuple*> kept;
  for (const Tuple& cand : d.tuples) {
    const Tuple* t = &cand;
    std::vector<const Tuple*> others = competitors_of(t, nd);
    if (others.empty()) {
      kept.push_back(t);
      continue;
    }
    // max delta s.t. w in polytope and w . (t - s) >= delta for all s;
    // t is potentially optimal when the gap can reach zero.
    LinearProgram lp;
    lp.sense = LpSense::Maximize;
    lp.objective.assign(dim + 1, 0.0);
    lp.objective[dim] = 1.0;
    lp.lowerBounds.assign(dim + 1, 0.0);
    lp.lowerBounds[dim] = kFreeVariable;

    LpRow simplexRow;
    simplexRow.coeffs.assign(dim + 1, 0.0);
    for (std::size_t i = 0; i < dim; ++i) simplexRow.coeffs[i] = 1.0;
    simplexRow.rel = RowRelation::Equal;
    simplexRow.rhs = 1.0;
    lp.rows.push_back(std::move(simplexRow));
    for (const LinearConstraint& c : q.polytope.constraints) {
      LpRow row;
      row.coeffs = c.coeffs;
      row.coeffs.push_back(0.0);
      row.rel = RowRelation::LessEq;
      row.rhs = c.bound;
      lp.rows.push_back(std::move(row));
    }
    for (const Tuple* s : others) {
      LpRow row;
      row.coeffs.resize(dim + 1);
      for (std::size_t i = 0; i < dim; ++i) row.coeffs[i] = t->values[i] - s->values[i];
      row.coeffs[dim] = -1.0;
      row.rel = RowRelation::GreaterEq;
      row.rhs = 0.0;
      lp.rows.push_back(std::move(row));
    }

    LpLimits limits;
    limits.maxVariables = std::max(limits.maxVariables, dim + 1);
    limits.maxRows = std::max(limits.maxRows, lp.rows.size());
    LpSolution sol = solve_lp(lp, limits);
    if (sol.status != LpStatus::Optimal) {
      throw SolverError("potential-optimality subproblem did not solve to optimality");
    }
    if (stats) ++stats->lpSolves;
    if (sol.value >= -kBoundaryEps) kept.push_back(t);
  }
  return sorted_ids(kept);
}

std::vector<std::string> po_incremental(const Dataset& d, const FlexQuery& q, FlexStats* stats) {
  check_flex_inputs(d, q);
  std::vector<const Tuple*> nd = nd_window(d, q, stats);

  // Same candidate convention as the baseline: every tuple is screened, the
  // non-dominated set only supplies the competitors.
  std::vector<const Tuple*> kept;
  for (const Tuple& cand : d.tuples) {
    const Tuple* t = &cand;
    std::vector<const Tuple*> others = competitors_of(t, nd);
    if (others.empty()) {
      kept.push_back(t);
      continue;
    }
    // Dual test: t is discarded once some convex combination of the
    // competitors strictly outscores it at every polytope vertex.  Prefixes
    // double in size so cheap rejections avoid the full program; a prefix
    // combination stays feasible for every later batch, so an early discard
    // agrees with the full one.
    bool discarded = false;
    for (std::size_t batch = 2;; batch *= 2) {
      std::size_t size = std::min(batch, others.size());
      std::vector<const Tuple*> prefix(others.begin(), others.begin() + size);
      ComboResult combo = convex_combo_opt(*t, prefix, q.vertices);
      if (stats) ++stats->lpSolves;
      if (combo.delta > kBoundaryEps) {
        discarded = true;
        break;
      }
      if (size == others.size()) break;
    }
    if (!discarded) kept.push_back(t);
  }
  return sorted_ids(kept);
}

}  // namespace moquery
