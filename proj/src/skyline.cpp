#include "moquery/skyline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moquery/errors.hpp"

namespace moquery {

bool dominates(const Tuple& t, const Tuple& s) {
  if (t.values.size() != s.values.size()) {
    throw ContractError("tuples have different arity");
  }
  bool strict = false;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (t.values[i] < s.values[i]) return false;
    if (t.values[i] > s.values[i]) strict = true;
  }
  return strict;
}

std::vector<std::string> bnl(const Dataset& d, SkylineStats* stats) {
  if (d.tuples.empty()) throw ContractError("empty dataset");
  SkylineStats local;
  SkylineStats& st = stats ? *stats : local;

  std::vector<const Tuple*> window;
  for (const Tuple& t : d.tuples) {
    bool dropped = false;
    for (std::size_t i = 0; i < window.size();) {
      ++st.windowComparisons;
      if (dominates(*window[i], t)) {
        dropped = true;
        break;
      }
      if (dominates(t, *window[i])) {
        window[i] = window.back();
        window.pop_back();
        ++st.evictions;
        continue;  // do not advance, a new entry moved into slot i
      }
      ++i;
    }
    if (!dropped) window.push_back(&t);
  }

  std::vector<std::string> ids;
  ids.reserve(window.size());
  for (const Tuple* t : window) ids.push_back(t->id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::size_t> entropy_order(const Dataset& d) {
  if (d.tuples.empty()) throw ContractError("empty dataset");
  const std::size_t n = d.size();
  const std::size_t m = d.arity();

  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  for (const Tuple& t : d.tuples) {
    if (t.values.size() != m) throw ContractError("tuple arity does not match schema");
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = std::min(lo[i], t.values[i]);
      hi[i] = std::max(hi[i], t.values[i]);
    }
  }

  std::vector<double> key(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double e = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double span = hi[i] - lo[i];
      if (span > 0.0) e += std::log1p((d.tuples[r].values[i] - lo[i]) / span);
    }
    key[r] = e;
  }

  std::vector<std::size_t> order(n);
  for (std::size_t r = 0; r < n; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return d.tuples[a].id < d.tuples[b].id;
  });
  return order;
}

std::vector<std::string> sfs(const Dataset& d, SkylineStats* stats) {
  SkylineStats local;
  SkylineStats& st = stats ? *stats : local;
  std::vector<std::size_t> order = entropy_order(d);

  std::vector<const Tuple*> window;
  std::vector<std::string> emitted;
  for (std::size_t r : order) {
    const Tuple& t = d.tuples[r];
    bool dropped = false;
    for (const Tuple* w : window) {
      ++st.windowComparisons;
      if (dominates(*w, t)) {
        dropped = true;
        break;
      }
    }
    if (dropped) continue;
    // The sort key is strictly monotone under dominance, so an accepted
    // entry can never be dominated by a later tuple; verify rather than
    // assume.
    for (const Tuple* w : window) {
      if (dominates(t, *w)) ++st.evictions;
    }
    window.push_back(&t);
    emitted.push_back(t.id);
  }
  return emitted;
}

}  // namespace moquery
