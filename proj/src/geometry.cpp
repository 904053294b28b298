#include "moquery/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "moquery/errors.hpp"

namespace moquery {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Simplex tableau in standard form: minimize c.y subject to A y = b, y >= 0,
// with b >= 0.  The objective row is carried as the last tableau row and
// kept reduced throughout.
class SimplexTableau {
public:
  SimplexTableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1), 0.0), basis_(rows, SIZE_MAX) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return cells_[r * (cols_ + 1) + cols_]; }
  double rhs(std::size_t r) const { return cells_[r * (cols_ + 1) + cols_]; }
  double& obj(std::size_t c) { return cells_[rows_ * (cols_ + 1) + c]; }
  double& objValue() { return cells_[rows_ * (cols_ + 1) + cols_]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t basis(std::size_t r) const { return basis_[r]; }
  void setBasis(std::size_t r, std::size_t c) { basis_[r] = c; }

  void pivot(std::size_t pr, std::size_t pc) {
    double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) cells_[pr * (cols_ + 1) + c] /= p;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double factor = cells_[r * (cols_ + 1) + pc];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        cells_[r * (cols_ + 1) + c] -= factor * cells_[pr * (cols_ + 1) + c];
      }
      cells_[r * (cols_ + 1) + pc] = 0.0;
    }
    basis_[pr] = pc;
  }

private:
  std::size_t rows_, cols_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

enum class PivotOutcome { Optimal, Unbounded, IterationLimit };

// Bland's rule: entering column is the lowest-index eligible one, ties on
// the ratio test break toward the lowest basis index.  Ensures termination
// under degeneracy.
PivotOutcome run_simplex(SimplexTableau& t, const std::vector<bool>& usable,
                         std::uint64_t& iterations, std::uint64_t maxIterations) {
  const double tol = kGeomEps;
  while (true) {
    std::size_t entering = SIZE_MAX;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (usable[c] && t.obj(c) < -tol) {
        entering = c;
        break;
      }
    }
    if (entering == SIZE_MAX) return PivotOutcome::Optimal;

    std::size_t leaving = SIZE_MAX;
    double bestRatio = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      double a = t.at(r, entering);
      if (a <= tol) continue;
      double ratio = t.rhs(r) / a;
      if (leaving == SIZE_MAX || ratio < bestRatio - tol ||
          (std::abs(ratio - bestRatio) <= tol && t.basis(r) < t.basis(leaving))) {
        leaving = r;
        bestRatio = ratio;
      }
    }
    if (leaving == SIZE_MAX) return PivotOutcome::Unbounded;

    t.pivot(leaving, entering);
    if (++iterations > maxIterations) return PivotOutcome::IterationLimit;
  }
}

struct ColumnMap {
  // Column of y for each original variable, plus the negative-part column
  // for free variables (SIZE_MAX when the variable has a finite bound).
  std::vector<std::size_t> plusCol;
  std::vector<std::size_t> minusCol;
  std::vector<double> shift;  // finite lower bounds, 0 for free variables
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpLimits& limits) {
  const std::size_t n = lp.numVariables();
  if (n == 0) throw ContractError("linear program has no variables");
  for (const LpRow& row : lp.rows) {
    if (row.coeffs.size() != n) {
      throw ContractError("constraint arity " + std::to_string(row.coeffs.size()) +
                          " does not match variable count " + std::to_string(n));
    }
  }
  if (!lp.lowerBounds.empty() && lp.lowerBounds.size() != n) {
    throw ContractError("lowerBounds size does not match variable count");
  }
  if (n > limits.maxVariables) {
    throw CapacityError("linear program has " + std::to_string(n) +
                        " variables, limit is " + std::to_string(limits.maxVariables));
  }
  if (lp.rows.size() > limits.maxRows) {
    throw CapacityError("linear program has " + std::to_string(lp.rows.size()) +
                        " rows, limit is " + std::to_string(limits.maxRows));
  }

  // Minimization form; flip back at the end.
  std::vector<double> cost = lp.objective;
  if (lp.sense == LpSense::Maximize) {
    for (double& c : cost) c = -c;
  }

  ColumnMap map;
  map.plusCol.assign(n, SIZE_MAX);
  map.minusCol.assign(n, SIZE_MAX);
  map.shift.assign(n, 0.0);
  std::size_t structCols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double lb = lp.lowerBounds.empty() ? 0.0 : lp.lowerBounds[j];
    map.plusCol[j] = structCols++;
    if (lb == kFreeVariable) {
      map.minusCol[j] = structCols++;
    } else {
      map.shift[j] = lb;
    }
  }

  const std::size_t m = lp.rows.size();
  std::size_t slackCols = 0;
  for (const LpRow& row : lp.rows) {
    if (row.rel != RowRelation::Equal) ++slackCols;
  }
  const std::size_t nCols = structCols + slackCols;
  const std::size_t totalCols = nCols + m;  // one artificial reserved per row

  SimplexTableau t(m, totalCols);
  std::vector<bool> usable(totalCols, false);
  for (std::size_t c = 0; c < nCols; ++c) usable[c] = true;

  std::size_t nextSlack = structCols;
  std::vector<std::size_t> artificialOf(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r) {
    const LpRow& row = lp.rows[r];
    double rhs = row.rhs;
    for (std::size_t j = 0; j < n; ++j) rhs -= row.coeffs[j] * map.shift[j];

    double sign = 1.0;
    double slackCoeff = 0.0;
    std::size_t slackCol = SIZE_MAX;
    if (row.rel == RowRelation::LessEq) {
      slackCol = nextSlack++;
      slackCoeff = 1.0;
    } else if (row.rel == RowRelation::GreaterEq) {
      slackCol = nextSlack++;
      slackCoeff = -1.0;
    }
    if (rhs < 0.0) {
      sign = -1.0;
      rhs = -rhs;
      slackCoeff = -slackCoeff;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double a = sign * row.coeffs[j];
      t.at(r, map.plusCol[j]) += a;
      if (map.minusCol[j] != SIZE_MAX) t.at(r, map.minusCol[j]) -= a;
    }
    if (slackCol != SIZE_MAX) t.at(r, slackCol) = slackCoeff;
    t.rhs(r) = rhs;

    if (slackCol != SIZE_MAX && slackCoeff > 0.0) {
      t.setBasis(r, slackCol);
    } else {
      std::size_t art = nCols + r;
      t.at(r, art) = 1.0;
      t.setBasis(r, art);
      artificialOf[r] = art;
      usable[art] = true;
    }
  }

  LpSolution sol;

  // Phase 1: drive artificials to zero.
  bool needPhase1 = false;
  for (std::size_t r = 0; r < m; ++r) needPhase1 = needPhase1 || artificialOf[r] != SIZE_MAX;
  if (needPhase1) {
    // Phase-1 cost is 1 on every artificial; reduce against the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (artificialOf[r] != SIZE_MAX) t.obj(artificialOf[r]) = 1.0;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (artificialOf[r] == SIZE_MAX) continue;
      for (std::size_t c = 0; c < t.cols(); ++c) t.obj(c) -= t.at(r, c);
      t.objValue() -= t.rhs(r);
    }
    PivotOutcome out = run_simplex(t, usable, sol.iterations, limits.maxIterations);
    if (out == PivotOutcome::IterationLimit) {
      throw SolverError("simplex iteration limit reached in phase 1");
    }
    double infeasibility = -t.objValue();
    double scale = 1.0;
    for (std::size_t r = 0; r < m; ++r) scale = std::max(scale, std::abs(lp.rows[r].rhs));
    if (infeasibility > 1e-7 * scale) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Pivot out artificials still basic at zero; a row with no usable
    // coefficient is redundant and stays inert.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis(r) < nCols) continue;
      std::size_t pc = SIZE_MAX;
      for (std::size_t c = 0; c < nCols; ++c) {
        if (std::abs(t.at(r, c)) > kGeomEps) {
          pc = c;
          break;
        }
      }
      if (pc != SIZE_MAX) t.pivot(r, pc);
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (artificialOf[r] != SIZE_MAX) usable[artificialOf[r]] = false;
    }
  }

  // Phase 2: reduce the real objective against the current basis.
  for (std::size_t c = 0; c <= t.cols(); ++c) {
    if (c < t.cols())
      t.obj(c) = 0.0;
    else
      t.objValue() = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    t.obj(map.plusCol[j]) += cost[j];
    if (map.minusCol[j] != SIZE_MAX) t.obj(map.minusCol[j]) -= cost[j];
  }
  for (std::size_t r = 0; r < t.rows(); ++r) {
    std::size_t b = t.basis(r);
    if (b >= t.cols()) continue;
    double cb = t.obj(b);
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= t.cols(); ++c) {
      if (c < t.cols())
        t.obj(c) -= cb * t.at(r, c);
      else
        t.objValue() -= cb * t.rhs(r);
    }
  }

  PivotOutcome out = run_simplex(t, usable, sol.iterations, limits.maxIterations);
  if (out == PivotOutcome::IterationLimit) {
    throw SolverError("simplex iteration limit reached in phase 2");
  }
  if (out == PivotOutcome::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  std::vector<double> y(t.cols(), 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis(r) < t.cols()) y[t.basis(r)] = t.rhs(r);
  }
  sol.witness.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = y[map.plusCol[j]] + map.shift[j];
    if (map.minusCol[j] != SIZE_MAX) v -= y[map.minusCol[j]];
    sol.witness[j] = v;
  }
  sol.value = dot(lp.objective, sol.witness);
  sol.status = LpStatus::Optimal;

  // Witness validation: a reported optimum must satisfy every row and bound.
  for (std::size_t r = 0; r < m; ++r) {
    const LpRow& row = lp.rows[r];
    double lhs = dot(row.coeffs, sol.witness);
    double scale = std::abs(row.rhs) + 1.0;
    bool ok = true;
    switch (row.rel) {
      case RowRelation::LessEq: ok = lhs <= row.rhs + 1e-6 * scale; break;
      case RowRelation::GreaterEq: ok = lhs >= row.rhs - 1e-6 * scale; break;
      case RowRelation::Equal: ok = std::abs(lhs - row.rhs) <= 1e-6 * scale; break;
    }
    if (!ok) throw SolverError("optimal witness violates row " + std::to_string(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    double lb = lp.lowerBounds.empty() ? 0.0 : lp.lowerBounds[j];
    if (lb != kFreeVariable && sol.witness[j] < lb - 1e-6) {
      throw SolverError("optimal witness violates bound on variable " + std::to_string(j));
    }
  }
  return sol;
}

std::vector<double> VertexSet::centroid() const {
  if (vertices.empty()) return {};
  std::vector<double> c(vertices.front().size(), 0.0);
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  }
  for (double& x : c) x /= static_cast<double>(vertices.size());
  return c;
}

namespace {

// Gaussian elimination with partial pivoting on an augmented dim x (dim+1)
// system; empty result when numerically singular.
std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> aug) {
  const std::size_t dim = aug.size();
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (std::abs(aug[r][col]) > std::abs(aug[best][col])) best = r;
    }
    if (std::abs(aug[best][col]) < 1e-12) return std::nullopt;
    std::swap(aug[col], aug[best]);
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == col) continue;
      double f = aug[r][col] / aug[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= dim; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = aug[i][dim] / aug[i][i];
  return x;
}

// Enumerates k-subsets of [0, total) in lexicographic order.
bool next_subset(std::vector<std::size_t>& idx, std::size_t total) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < total) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

VertexSet enumerate_vertices(const WeightPolytope& poly, const VertexLimits& limits) {
  const std::size_t dim = poly.dim;
  if (dim == 0) throw ContractError("polytope dimension is zero");
  if (dim > limits.maxDimension) {
    throw CapacityError("polytope dimension " + std::to_string(dim) + " exceeds limit " +
                        std::to_string(limits.maxDimension));
  }
  if (poly.constraints.size() > limits.maxConstraints) {
    throw CapacityError("polytope has " + std::to_string(poly.constraints.size()) +
                        " constraints, limit is " + std::to_string(limits.maxConstraints));
  }

  // Bounding hyperplanes: user faces a.w = b, then axis faces w_i = 0.
  struct Face {
    std::vector<double> a;
    double b;
  };
  std::vector<Face> faces;
  for (const LinearConstraint& c : poly.constraints) faces.push_back({c.coeffs, c.bound});
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> axis(dim, 0.0);
    axis[i] = 1.0;
    faces.push_back({std::move(axis), 0.0});
  }

  VertexSet out;
  auto tryCandidate = [&](const std::vector<double>& w) {
    for (double x : w) {
      if (x < -kGeomEps) return;
    }
    for (const LinearConstraint& c : poly.constraints) {
      if (dot(c.coeffs, w) > c.bound + kGeomEps) return;
    }
    for (const auto& v : out.vertices) {
      double diff = 0.0;
      for (std::size_t i = 0; i < dim; ++i) diff = std::max(diff, std::abs(v[i] - w[i]));
      if (diff <= kGeomEps) return;
    }
    out.vertices.push_back(w);
  };

  if (dim == 1) {
    tryCandidate({1.0});
  } else {
    std::vector<std::size_t> idx(dim - 1);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    do {
      std::vector<std::vector<double>> aug;
      aug.reserve(dim);
      for (std::size_t i : idx) {
        std::vector<double> row = faces[i].a;
        row.push_back(faces[i].b);
        aug.push_back(std::move(row));
      }
      std::vector<double> simplexRow(dim, 1.0);
      simplexRow.push_back(1.0);
      aug.push_back(std::move(simplexRow));
      if (auto w = solve_square(std::move(aug))) tryCandidate(*w);
    } while (next_subset(idx, faces.size()));
  }

  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

bool polytope_feasible(std::size_t dim, const std::vector<LinearConstraint>& constraints) {
  // Phase-1 style check: maximize 0 over the region.
  LinearProgram lp;
  lp.sense = LpSense::Maximize;
  lp.objective.assign(dim, 0.0);
  LpRow simplexRow;
  simplexRow.coeffs.assign(dim, 1.0);
  simplexRow.rel = RowRelation::Equal;
  simplexRow.rhs = 1.0;
  lp.rows.push_back(std::move(simplexRow));
  for (const LinearConstraint& c : constraints) {
    lp.rows.push_back({c.coeffs, RowRelation::LessEq, c.bound});
  }
  LpLimits limits;
  limits.maxVariables = std::max<std::size_t>(limits.maxVariables, dim);
  limits.maxRows = std::max<std::size_t>(limits.maxRows, constraints.size() + 1);
  return solve_lp(lp, limits).status == LpStatus::Optimal;
}

WeightPolytope make_polytope(std::size_t dim, std::vector<LinearConstraint> constraints) {
  if (dim == 0) throw ContractError("polytope dimension is zero");
  for (const LinearConstraint& c : constraints) {
    if (c.coeffs.size() != dim) {
      throw ContractError("constraint arity " + std::to_string(c.coeffs.size()) +
                          " does not match dimension " + std::to_string(dim));
    }
  }
  if (!polytope_feasible(dim, constraints)) throw DataError("empty preference set");
  WeightPolytope p;
  p.dim = dim;
  p.constraints = std::move(constraints);
  return p;
}

bool fdominates_ve(const Tuple& t, const Tuple& s, const VertexSet& vs) {
  if (t.values.size() != s.values.size()) {
    throw ContractError("tuples have different arity");
  }
  if (vs.vertices.empty()) throw ContractError("vertex set is empty");
  for (const auto& v : vs.vertices) {
    if (dot(v, t.values) < dot(v, s.values) - kGeomEps) return false;
  }
  return true;
}

bool fdominates_lp(const Tuple& t, const Tuple& s, const WeightPolytope& poly,
                   const LpLimits& limits) {
  if (t.values.size() != s.values.size()) {
    throw ContractError("tuples have different arity");
  }
  if (t.values.size() != poly.dim) {
    throw ContractError("tuple arity does not match polytope dimension");
  }
  LinearProgram lp;
  lp.sense = LpSense::Minimize;
  lp.objective.resize(poly.dim);
  for (std::size_t i = 0; i < poly.dim; ++i) lp.objective[i] = t.values[i] - s.values[i];
  LpRow simplexRow;
  simplexRow.coeffs.assign(poly.dim, 1.0);
  simplexRow.rel = RowRelation::Equal;
  simplexRow.rhs = 1.0;
  lp.rows.push_back(std::move(simplexRow));
  for (const LinearConstraint& c : poly.constraints) {
    lp.rows.push_back({c.coeffs, RowRelation::LessEq, c.bound});
  }
  LpLimits fitted = limits;
  fitted.maxVariables = std::max(fitted.maxVariables, poly.dim);
  fitted.maxRows = std::max(fitted.maxRows, poly.constraints.size() + 1);
  LpSolution sol = solve_lp(lp, fitted);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("dominance subproblem did not solve to optimality");
  }
  return sol.value >= -kGeomEps;
}

namespace {

LinearProgram combo_program(const Tuple& t, const std::vector<const Tuple*>& members,
                            const VertexSet& vs) {
  if (members.empty()) throw ContractError("convex combination over an empty set");
  if (vs.vertices.empty()) throw ContractError("vertex set is empty");
  for (const Tuple* s : members) {
    if (s->values.size() != t.values.size()) {
      throw ContractError("tuples have different arity");
    }
  }
  const std::size_t p = members.size();
  LinearProgram lp;
  lp.sense = LpSense::Maximize;
  lp.objective.assign(p + 1, 0.0);
  lp.objective[p] = 1.0;  // delta
  lp.lowerBounds.assign(p + 1, 0.0);
  lp.lowerBounds[p] = kFreeVariable;

  LpRow simplexRow;
  simplexRow.coeffs.assign(p + 1, 0.0);
  for (std::size_t i = 0; i < p; ++i) simplexRow.coeffs[i] = 1.0;
  simplexRow.rel = RowRelation::Equal;
  simplexRow.rhs = 1.0;
  lp.rows.push_back(std::move(simplexRow));

  for (const auto& v : vs.vertices) {
    LpRow row;
    row.coeffs.assign(p + 1, 0.0);
    for (std::size_t i = 0; i < p; ++i) row.coeffs[i] = dot(v, members[i]->values);
    row.coeffs[p] = -1.0;
    row.rel = RowRelation::GreaterEq;
    row.rhs = dot(v, t.values);
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

LpLimits widen(const LpLimits& limits, std::size_t vars, std::size_t rows) {
  LpLimits out = limits;
  out.maxVariables = std::max(out.maxVariables, vars);
  out.maxRows = std::max(out.maxRows, rows);
  return out;
}

}  // namespace

ComboResult convex_combo_opt(const Tuple& t, const std::vector<const Tuple*>& members,
                             const VertexSet& vs, const LpLimits& limits) {
  LinearProgram lp = combo_program(t, members, vs);
  LpSolution sol = solve_lp(lp, widen(limits, members.size() + 1, vs.count() + 1));
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("combination subproblem did not solve to optimality");
  }
  ComboResult r;
  r.delta = sol.value;
  r.lambda.assign(sol.witness.begin(), sol.witness.begin() + members.size());
  return r;
}

bool convex_combo_dominates(const Tuple& t, const std::vector<const Tuple*>& members,
                            const VertexSet& vs, const LpLimits& limits) {
  return convex_combo_opt(t, members, vs, limits).delta >= -kGeomEps;
}

}  // namespace moquery
