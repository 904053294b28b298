#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "moquery/geometry.hpp"
#include "moquery/model.hpp"
#include "moquery/topk.hpp"

namespace moquery::testing {

// Eight candidates over (experience, score); small enough to reason about
// by hand, rich enough to exercise ties (FS and NF tie exactly under f1,
// JS and MR under f2).
inline Dataset demo_dataset() {
  Dataset d;
  d.attributes = {{"experience", Direction::Max}, {"score", Direction::Max}};
  auto add = [&](const char* id, double exp, double sc) {
    d.tuples.push_back({id, {exp, sc}});
  };
  add("JS", 3, 9.8);
  add("FS", 2, 7.8);
  add("PT", 6, 7.3);
  add("MMM", 5, 6.2);
  add("NF", 9, 5.7);
  add("SS", 10, 3);
  add("MR", 9, 2);
  add("DR", 8, 4.5);
  return d;
}

inline ScoringFunction f1() { return {"f1", {0.6, 2.0}}; }
inline ScoringFunction f2() { return {"f2", {1.3, 1.0}}; }

// Weights must favor the second attribute at least as much as the first.
inline WeightPolytope demo_polytope() {
  return make_polytope(2, {{{1.0, -1.0}, 0.0}});
}

inline double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

enum class DataKind { Continuous, Gridded };

// Ids are zero-padded so lexicographic and insertion order coincide.
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t m,
                              DataKind kind = DataKind::Continuous) {
  Dataset d;
  for (std::size_t i = 0; i < m; ++i) {
    d.attributes.push_back({"x" + std::to_string(i + 1), Direction::Max});
  }
  std::size_t width = std::to_string(n).size();
  for (std::size_t r = 0; r < n; ++r) {
    Tuple t;
    std::string num = std::to_string(r + 1);
    t.id = "r" + std::string(width - num.size(), '0') + num;
    for (std::size_t i = 0; i < m; ++i) {
      double v = next_uniform(rng);
      if (kind == DataKind::Gridded) v = std::floor(v * 5.0) / 4.0;  // {0, .25, .5, .75, 1}
      t.values.push_back(v);
    }
    d.tuples.push_back(std::move(t));
  }
  return d;
}

// Feasible by construction: every constraint leaves slack around a random
// interior anchor point.
inline WeightPolytope random_polytope(std::mt19937_64& rng, std::size_t m,
                                      std::size_t maxConstraints) {
  std::vector<double> anchor(m);
  double sum = 0.0;
  for (double& a : anchor) {
    a = 0.1 + next_uniform(rng);
    sum += a;
  }
  for (double& a : anchor) a /= sum;

  std::size_t count = maxConstraints == 0
                          ? 0
                          : static_cast<std::size_t>(next_uniform(rng) * (maxConstraints + 1));
  std::vector<LinearConstraint> cons;
  for (std::size_t j = 0; j < count; ++j) {
    LinearConstraint c;
    double lhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      c.coeffs.push_back(2.0 * next_uniform(rng) - 1.0);
      lhs += c.coeffs.back() * anchor[i];
    }
    c.bound = lhs + 0.01 + 0.3 * next_uniform(rng);
    cons.push_back(std::move(c));
  }
  return make_polytope(m, std::move(cons));
}

inline ScoringFunction random_scoring(std::mt19937_64& rng, std::size_t m) {
  ScoringFunction f{"rand", {}};
  for (std::size_t i = 0; i < m; ++i) f.weights.push_back(0.05 + next_uniform(rng));
  return f;
}

// A returned top-k id set is valid when its score multiset matches the
// exhaustive one; ties may resolve differently between algorithms.
inline bool valid_topk(const Dataset& d, const ScoringFunction& f, std::size_t k,
                       const std::vector<std::string>& ids) {
  if (ids.size() != k) return false;
  std::vector<double> all;
  for (const Tuple& t : d.tuples) all.push_back(score(f, t));
  std::sort(all.begin(), all.end(), std::greater<>());
  all.resize(k);
  std::sort(all.begin(), all.end());

  std::vector<double> got;
  for (const std::string& id : ids) {
    const Tuple* found = nullptr;
    for (const Tuple& t : d.tuples) {
      if (t.id == id) found = &t;
    }
    if (!found) return false;
    got.push_back(score(f, *found));
  }
  std::sort(got.begin(), got.end());
  return got == all;
}

inline std::string join(const std::vector<std::string>& ids) {
  std::string out;
  for (const std::string& id : ids) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

inline std::vector<std::string> entry_ids(const RankedResult& r) {
  std::vector<std::string> ids;
  ids.reserve(r.entries.size());
  for (const RankedEntry& e : r.entries) ids.push_back(e.id);
  return ids;
}

}  // namespace moquery::testing
