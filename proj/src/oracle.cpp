#include "moquery/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "moquery/errors.hpp"

namespace moquery::oracle {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact: every finite double is mantissa * 2^exponent.
Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ContractError("non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // mant in [0.5, 1)
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  int shift = exp - 53;
  Rational r(scaled);
  if (shift > 0) {
    r *= Rational(BigInt(1) << shift);
  } else if (shift < 0) {
    r /= Rational(BigInt(1) << -shift);
  }
  return r;
}

// Exact decimal parse: optional sign, digits, optional fraction.
Rational rational_from_decimal(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt numerator = 0;
  BigInt denominator = 1;
  bool anyDigit = false;
  for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
    numerator = numerator * 10 + (text[pos] - '0');
    anyDigit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
      numerator = numerator * 10 + (text[pos] - '0');
      denominator *= 10;
      anyDigit = true;
    }
  }
  if (!anyDigit || pos != text.size()) {
    throw ContractError("malformed decimal '" + text + "'");
  }
  Rational r(numerator, denominator);
  return negative ? -r : r;
}

struct RationalConstraint {
  std::vector<Rational> a;
  Rational b;
};

void check_caps(std::size_t dim, std::size_t constraintCount) {
  if (dim < 1 || dim > 4) {
    throw CapacityError("exact vertex search supports 1 <= dim <= 4, got " +
                        std::to_string(dim));
  }
  if (constraintCount > 10) {
    throw CapacityError("exact vertex search supports at most 10 constraints, got " +
                        std::to_string(constraintCount));
  }
}

std::vector<RationalConstraint> lift_constraints(const WeightPolytope& poly) {
  std::vector<RationalConstraint> out;
  for (const LinearConstraint& c : poly.constraints) {
    RationalConstraint rc;
    for (double v : c.coeffs) rc.a.push_back(rational_from_double(v));
    rc.b = rational_from_double(c.bound);
    out.push_back(std::move(rc));
  }
  return out;
}

// Gauss-Jordan over the rationals; empty on a singular system.
bool solve_exact(std::vector<std::vector<Rational>>& aug, std::vector<Rational>& x) {
  const std::size_t dim = aug.size();
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    while (pivot < dim && aug[pivot][col] == 0) ++pivot;
    if (pivot == dim) return false;
    std::swap(aug[col], aug[pivot]);
    Rational p = aug[col][col];
    for (std::size_t c = col; c <= dim; ++c) aug[col][c] /= p;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      Rational f = aug[r][col];
      for (std::size_t c = col; c <= dim; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  x.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = aug[i][dim];
  return true;
}

bool feasible_exact(const std::vector<Rational>& w,
                    const std::vector<RationalConstraint>& constraints) {
  for (const Rational& x : w) {
    if (x < 0) return false;
  }
  for (const RationalConstraint& c : constraints) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < w.size(); ++i) lhs += c.a[i] * w[i];
    if (lhs > c.b) return false;
  }
  return true;
}

std::vector<std::vector<Rational>> vertices_exact(std::size_t dim,
                                                  const std::vector<RationalConstraint>& user) {
  check_caps(dim, user.size());

  std::vector<RationalConstraint> faces = user;
  for (std::size_t i = 0; i < dim; ++i) {
    RationalConstraint axis;
    axis.a.assign(dim, Rational(0));
    axis.a[i] = 1;
    axis.b = 0;
    faces.push_back(std::move(axis));
  }

  std::vector<std::vector<Rational>> found;
  auto consider = [&](const std::vector<Rational>& w) {
    if (!feasible_exact(w, user)) return;
    if (std::find(found.begin(), found.end(), w) == found.end()) found.push_back(w);
  };

  if (dim == 1) {
    consider({Rational(1)});
  } else {
    // Every subset of dim-1 faces, intersected with sum w = 1.
    std::vector<std::size_t> idx(dim - 1);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    bool more = true;
    while (more) {
      std::vector<std::vector<Rational>> aug;
      for (std::size_t i : idx) {
        std::vector<Rational> row = faces[i].a;
        row.push_back(faces[i].b);
        aug.push_back(std::move(row));
      }
      std::vector<Rational> simplexRow(dim, Rational(1));
      simplexRow.push_back(Rational(1));
      aug.push_back(std::move(simplexRow));

      std::vector<Rational> w;
      if (solve_exact(aug, w)) consider(w);

      more = false;
      for (std::size_t i = idx.size(); i-- > 0;) {
        if (idx[i] + (idx.size() - i) < faces.size()) {
          ++idx[i];
          for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
          more = true;
          break;
        }
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<std::vector<double>> to_doubles(const std::vector<std::vector<Rational>>& vs) {
  std::vector<std::vector<double>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    std::vector<double> row;
    row.reserve(v.size());
    for (const Rational& x : v) row.push_back(static_cast<double>(x));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, double>> brute_topk(const Dataset& d,
                                                       const ScoringFunction& f, std::size_t k) {
  validate_scoring(f, d.arity());
  if (k < 1 || k > d.size()) {
    throw ContractError("k=" + std::to_string(k) + " outside [1, " + std::to_string(d.size()) +
                        "]");
  }
  std::vector<std::pair<std::string, double>> all;
  all.reserve(d.size());
  for (const Tuple& t : d.tuples) all.emplace_back(t.id, score(f, t));
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  all.resize(k);
  return all;
}

std::vector<std::string> brute_skyline(const Dataset& d) {
  if (d.tuples.empty()) throw ContractError("empty dataset");
  auto dominated = [](const Tuple& s, const Tuple& t) {
    bool strict = false;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (s.values[i] < t.values[i]) return false;
      if (s.values[i] > t.values[i]) strict = true;
    }
    return strict;
  };
  std::vector<std::string> out;
  for (const Tuple& t : d.tuples) {
    bool dropped = false;
    for (const Tuple& s : d.tuples) {
      if (&s != &t && dominated(s, t)) {
        dropped = true;
        break;
      }
    }
    if (!dropped) out.push_back(t.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<double>> brute_vertices(const WeightPolytope& poly) {
  return to_doubles(vertices_exact(poly.dim, lift_constraints(poly)));
}

std::vector<std::vector<double>> brute_vertices(std::size_t dim,
                                                const std::vector<ExactConstraint>& constraints) {
  std::vector<RationalConstraint> lifted;
  for (const ExactConstraint& c : constraints) {
    if (c.coeffs.size() != dim) throw ContractError("constraint arity does not match dimension");
    RationalConstraint rc;
    for (const std::string& v : c.coeffs) rc.a.push_back(rational_from_decimal(v));
    rc.b = rational_from_decimal(c.bound);
    lifted.push_back(std::move(rc));
  }
  return to_doubles(vertices_exact(dim, lifted));
}

std::vector<std::string> brute_nd(const Dataset& d, const WeightPolytope& poly) {
  if (d.tuples.empty()) throw ContractError("empty dataset");
  if (d.arity() != poly.dim) throw ContractError("dataset arity does not match polytope");
  std::vector<std::vector<Rational>> vs = vertices_exact(poly.dim, lift_constraints(poly));
  if (vs.empty()) throw DataError("empty preference set");

  const std::size_t n = d.size();
  const std::size_t q = vs.size();
  // Exact score of every tuple at every vertex.
  std::vector<std::vector<Rational>> scores(n, std::vector<Rational>(q));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t v = 0; v < q; ++v) {
      Rational s = 0;
      for (std::size_t i = 0; i < poly.dim; ++i) {
        s += vs[v][i] * rational_from_double(d.tuples[r].values[i]);
      }
      scores[r][v] = s;
    }
  }

  std::vector<std::string> out;
  for (std::size_t r = 0; r < n; ++r) {
    bool dominated = false;
    for (std::size_t s = 0; s < n && !dominated; ++s) {
      if (s == r || d.tuples[s].values == d.tuples[r].values) continue;
      bool allGeq = true;
      for (std::size_t v = 0; v < q && allGeq; ++v) {
        allGeq = scores[s][v] >= scores[r][v];
      }
      dominated = allGeq;
    }
    if (!dominated) out.push_back(d.tuples[r].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PoCertificate> brute_po(const Dataset& d, const WeightPolytope& poly,
                                    std::size_t resolution) {
  if (d.tuples.empty()) throw ContractError("empty dataset");
  if (d.arity() != poly.dim) throw ContractError("dataset arity does not match polytope");
  if (resolution < 100) throw ContractError("resolution must be at least 100");

  std::vector<RationalConstraint> user = lift_constraints(poly);
  std::vector<std::vector<Rational>> vs = vertices_exact(poly.dim, user);
  if (vs.empty()) throw DataError("empty preference set");

  // Grid of exact weight vectors across the polytope, vertices included.
  std::vector<std::vector<Rational>> grid = vs;
  const std::size_t dim = poly.dim;
  if (dim == 2) {
    Rational lo = vs.front()[0], hi = vs.front()[0];
    for (const auto& v : vs) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    for (std::size_t j = 0; j <= resolution; ++j) {
      Rational w1 = lo + (hi - lo) * Rational(j, resolution);
      std::vector<Rational> w{w1, 1 - w1};
      if (feasible_exact(w, user)) grid.push_back(std::move(w));
    }
  } else if (dim > 2) {
    // Compositions of `resolution` into dim parts.
    double cells = 1.0;
    for (std::size_t i = 1; i < dim; ++i) {
      cells *= static_cast<double>(resolution + i) / static_cast<double>(i);
    }
    if (cells > 2e6) {
      throw CapacityError("weight grid too large; lower the resolution");
    }
    std::vector<std::size_t> parts(dim, 0);
    parts[0] = resolution;
    while (true) {
      std::vector<Rational> w(dim);
      for (std::size_t i = 0; i < dim; ++i) w[i] = Rational(parts[i], resolution);
      if (feasible_exact(w, user)) grid.push_back(std::move(w));

      // Next composition in colex order.
      std::size_t i = 0;
      while (i + 1 < dim && parts[i] == 0) ++i;
      if (i + 1 == dim) break;
      std::size_t take = parts[i];
      parts[i] = 0;
      parts[0] = take - 1;
      ++parts[i + 1];
    }
  }
  if (grid.empty()) throw DataError("empty weight grid");

  const std::size_t n = d.size();
  std::vector<std::vector<Rational>> exactValues(n);
  std::vector<std::vector<double>> dblValues(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (double v : d.tuples[r].values) {
      exactValues[r].push_back(rational_from_double(v));
      dblValues[r].push_back(v);
    }
  }

  std::map<std::string, std::vector<double>> witnesses;
  std::vector<double> wd(dim);
  for (const auto& w : grid) {
    for (std::size_t i = 0; i < dim; ++i) wd[i] = static_cast<double>(w[i]);

    // Double pass narrows the field; exact pass decides.
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim; ++i) s += wd[i] * dblValues[r][i];
      best = std::max(best, s);
    }
    std::vector<std::size_t> candidates;
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim; ++i) s += wd[i] * dblValues[r][i];
      if (s >= best - 1e-6) candidates.push_back(r);
    }

    std::vector<Rational> exactScores;
    exactScores.reserve(candidates.size());
    Rational top = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      Rational s = 0;
      for (std::size_t i = 0; i < dim; ++i) s += w[i] * exactValues[candidates[c]][i];
      exactScores.push_back(s);
      if (c == 0 || s > top) top = s;
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (exactScores[c] == top) {
        witnesses.emplace(d.tuples[candidates[c]].id, wd);
      }
    }
  }

  std::vector<PoCertificate> out;
  out.reserve(witnesses.size());
  for (auto& [id, weight] : witnesses) out.push_back({id, std::move(weight)});
  return out;
}

}  // namespace moquery::oracle
