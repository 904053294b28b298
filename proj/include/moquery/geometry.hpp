#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "moquery/model.hpp"

namespace moquery {

// Comparison tolerance shared by the solver and every geometric predicate.
inline constexpr double kGeomEps = 1e-9;

enum class LpSense { Minimize, Maximize };
enum class RowRelation { LessEq, Equal, GreaterEq };

struct LpRow {
  std::vector<double> coeffs;
  RowRelation rel = RowRelation::LessEq;
  double rhs = 0.0;
};

// Marks a variable as unbounded below in LinearProgram::lowerBounds.
inline constexpr double kFreeVariable = -std::numeric_limits<double>::infinity();

// Dense linear program.  Variables default to x >= 0; lowerBounds, when
// non-empty, gives one bound per variable (kFreeVariable for none).
struct LinearProgram {
  LpSense sense = LpSense::Maximize;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lowerBounds;

  std::size_t numVariables() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;               // objective at the witness, original sense
  std::vector<double> witness;      // one entry per variable when Optimal
  std::uint64_t iterations = 0;     // simplex pivots over both phases
};

struct LpLimits {
  std::size_t maxVariables = 64;
  std::size_t maxRows = 256;
  std::uint64_t maxIterations = 200000;
};

// Two-phase primal simplex with Bland's rule.  Optimal witnesses are
// re-checked against every row before returning; a witness that fails
// validation raises SolverError rather than being reported as optimal.
LpSolution solve_lp(const LinearProgram& lp, const LpLimits& limits = {});

// Vertices of a WeightPolytope, deduplicated within kGeomEps and sorted
// lexicographically.  Non-empty for any polytope built by make_polytope.
struct VertexSet {
  std::vector<std::vector<double>> vertices;

  std::size_t count() const { return vertices.size(); }
  std::vector<double> centroid() const;
};

struct VertexLimits {
  std::size_t maxDimension = 8;
  std::size_t maxConstraints = 32;
};

// Exhaustive basis enumeration: every (dim-1)-subset of the bounding
// hyperplanes (user faces plus w_i = 0) is intersected with sum w = 1 and
// the solution kept when it satisfies all remaining faces.
VertexSet enumerate_vertices(const WeightPolytope& poly, const VertexLimits& limits = {});

// Phase-1 feasibility of { w in simplex : constraints }.
bool polytope_feasible(std::size_t dim, const std::vector<LinearConstraint>& constraints);

// t F-dominates s when every scoring function in the polytope rates t at
// least as high as s.  Callers are responsible for excluding identical value
// vectors; these predicates only evaluate the geometric condition.
//
// Vertex form: w . t >= w . s - kGeomEps at every vertex.
bool fdominates_ve(const Tuple& t, const Tuple& s, const VertexSet& vs);
// LP form: min over the polytope of w . (t - s) is >= -kGeomEps.
bool fdominates_lp(const Tuple& t, const Tuple& s, const WeightPolytope& poly,
                   const LpLimits& limits = {});

// Maximal worst-vertex margin by which a convex combination of `members`
// outscores t:  max delta s.t. lambda in simplex and, at every vertex w,
// sum_i lambda_i (w . s_i) - w . t >= delta.
struct ComboResult {
  double delta = 0.0;
  std::vector<double> lambda;       // optimal combination, one per member
};

ComboResult convex_combo_opt(const Tuple& t, const std::vector<const Tuple*>& members,
                             const VertexSet& vs, const LpLimits& limits = {});

// Closed test: true iff the optimal delta is >= -kGeomEps.
bool convex_combo_dominates(const Tuple& t, const std::vector<const Tuple*>& members,
                            const VertexSet& vs, const LpLimits& limits = {});

}  // namespace moquery
