#include "moquery/topk.hpp"

#include <algorithm>
#include <limits>

#include "moquery/errors.hpp"

namespace moquery {

AccessIndex AccessIndex::build(const Dataset& d) {
  if (d.tuples.empty()) throw DataError("empty dataset");
  AccessIndex idx;
  const std::size_t n = d.size();
  const std::size_t m = d.arity();
  idx.ids_.reserve(n);
  idx.values_.reserve(n);
  for (const Tuple& t : d.tuples) {
    if (t.values.size() != m) throw ContractError("tuple arity does not match schema");
    idx.ids_.push_back(t.id);
    idx.values_.push_back(t.values);
  }

  std::vector<std::uint32_t> byId(n);
  for (std::uint32_t r = 0; r < n; ++r) byId[r] = r;
  std::sort(byId.begin(), byId.end(),
            [&](std::uint32_t a, std::uint32_t b) { return idx.ids_[a] < idx.ids_[b]; });
  idx.idRank_.resize(n);
  for (std::uint32_t rank = 0; rank < n; ++rank) idx.idRank_[byId[rank]] = rank;

  idx.lists_.resize(m);
  idx.shifts_.resize(m);
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<std::uint32_t>& list = idx.lists_[a];
    list.resize(n);
    for (std::uint32_t r = 0; r < n; ++r) list[r] = r;
    std::sort(list.begin(), list.end(), [&](std::uint32_t x, std::uint32_t y) {
      double vx = idx.values_[x][a], vy = idx.values_[y][a];
      if (vx != vy) return vx > vy;
      return idx.idRank_[x] < idx.idRank_[y];
    });
    double lowest = idx.values_[list.back()][a];
    idx.shifts_[a] = lowest < 0.0 ? -lowest : 0.0;
  }

  idx.rowOf_.reserve(n);
  for (std::uint32_t r = 0; r < n; ++r) idx.rowOf_.emplace(idx.ids_[r], r);
  return idx;
}

std::optional<std::uint32_t> AccessIndex::rowOf(const std::string& id) const {
  auto it = rowOf_.find(id);
  if (it == rowOf_.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_query(const AccessIndex& idx, const ScoringFunction& f, std::size_t k) {
  validate_scoring(f, idx.arity());
  if (k < 1 || k > idx.size()) {
    throw ContractError("k=" + std::to_string(k) + " outside [1, " +
                        std::to_string(idx.size()) + "]");
  }
}

double row_score(const AccessIndex& idx, const ScoringFunction& f, std::uint32_t row) {
  const std::vector<double>& v = idx.values(row);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += f.weights[i] * v[i];
  return s;
}

// Score descending, then ascending id.
struct Better {
  const AccessIndex& idx;
  bool operator()(std::pair<double, std::uint32_t> a, std::pair<double, std::uint32_t> b) const {
    if (a.first != b.first) return a.first > b.first;
    return idx.idRank(a.second) < idx.idRank(b.second);
  }
};

}  // namespace

RankedResult fagin(const AccessIndex& idx, const ScoringFunction& f, std::size_t k) {
  check_query(idx, f, k);
  const std::size_t n = idx.size();
  const std::size_t m = idx.arity();

  RankedResult res;
  std::vector<std::uint8_t> listsSeen(n, 0);
  std::vector<bool> seen(n, false);
  std::size_t seenOnAll = 0;

  for (std::size_t depth = 0; depth < n; ++depth) {
    for (std::size_t a = 0; a < m; ++a) {
      std::uint32_t row = idx.rowAt(a, depth);
      ++res.stats.sortedAccesses;
      seen[row] = true;
      if (++listsSeen[row] == m) ++seenOnAll;
    }
    if (seenOnAll >= k) break;
  }

  // Resolution: one random access per encountered id completes its record.
  std::vector<std::pair<double, std::uint32_t>> scored;
  for (std::uint32_t row = 0; row < n; ++row) {
    if (!seen[row]) continue;
    ++res.stats.randomAccesses;
    scored.emplace_back(row_score(idx, f, row), row);
  }
  res.stats.bufferPeak = scored.size();

  std::sort(scored.begin(), scored.end(), Better{idx});
  res.entries.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    res.entries.push_back({idx.id(scored[i].second), scored[i].first});
  }
  res.ordered = true;
  return res;
}

RankedResult threshold(const AccessIndex& idx, const ScoringFunction& f, std::size_t k) {
  check_query(idx, f, k);
  const std::size_t n = idx.size();
  const std::size_t m = idx.arity();

  RankedResult res;
  std::vector<bool> resolved(n, false);
  // Best k so far, ordered best to worst; never grows past k entries.
  std::vector<std::pair<double, std::uint32_t>> buffer;
  Better better{idx};

  for (std::size_t depth = 0; depth < n; ++depth) {
    for (std::size_t a = 0; a < m; ++a) {
      std::uint32_t row = idx.rowAt(a, depth);
      ++res.stats.sortedAccesses;
      if (resolved[row]) continue;
      resolved[row] = true;
      ++res.stats.randomAccesses;
      std::pair<double, std::uint32_t> cand{row_score(idx, f, row), row};
      if (buffer.size() == k) {
        if (!better(cand, buffer.back())) continue;
        buffer.pop_back();
      }
      buffer.insert(std::upper_bound(buffer.begin(), buffer.end(), cand, better), cand);
      res.stats.bufferPeak = std::max<std::uint64_t>(res.stats.bufferPeak, buffer.size());
    }
    double tau = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      tau += f.weights[a] * idx.values(idx.rowAt(a, depth))[a];
    }
    if (buffer.size() == k && buffer.back().first >= tau) break;
  }

  res.entries.reserve(k);
  for (const auto& [s, row] : buffer) res.entries.push_back({idx.id(row), s});
  res.ordered = true;
  return res;
}

namespace {

struct PartialRow {
  double partial = 0.0;     // shifted weighted sum over the attributes seen
  std::uint8_t mask = 0;    // attributes already read on sorted lists
};

}  // namespace

RankedResult nra(const AccessIndex& idx, const ScoringFunction& f, std::size_t k) {
  check_query(idx, f, k);
  const std::size_t n = idx.size();
  const std::size_t m = idx.arity();

  RankedResult res;

  // Shift each attribute so values are non-negative; a missing attribute
  // then contributes 0 to the lower bound.  Both bounds move by the same
  // constant, so comparisons are unaffected.
  auto shifted = [&](std::uint32_t row, std::size_t a) {
    return idx.values(row)[a] + idx.shift(a);
  };

  std::vector<PartialRow> partial(n);
  std::vector<bool> seen(n, false);
  std::size_t seenCount = 0;
  std::vector<std::uint32_t> seenRows;
  std::vector<double> frontier(m, 0.0);
  std::vector<std::pair<double, std::uint32_t>> lbOrder;
  Better better{idx};

  for (std::size_t depth = 0; depth < n; ++depth) {
    for (std::size_t a = 0; a < m; ++a) {
      std::uint32_t row = idx.rowAt(a, depth);
      ++res.stats.sortedAccesses;
      if (!seen[row]) {
        seen[row] = true;
        ++seenCount;
        seenRows.push_back(row);
      }
      partial[row].partial += f.weights[a] * shifted(row, a);
      partial[row].mask |= static_cast<std::uint8_t>(1u << a);
      frontier[a] = shifted(row, a);
    }
    res.stats.bufferPeak = std::max<std::uint64_t>(res.stats.bufferPeak, seenCount);
    if (seenCount < k) continue;

    // kth best lower bound, ties by id.
    lbOrder.clear();
    for (std::uint32_t row : seenRows) lbOrder.emplace_back(partial[row].partial, row);
    std::nth_element(lbOrder.begin(), lbOrder.begin() + (k - 1), lbOrder.end(), better);
    double kthLb = lbOrder[k - 1].first;

    double tauUnseen = 0.0;
    for (std::size_t a = 0; a < m; ++a) tauUnseen += f.weights[a] * frontier[a];

    double bestCompeting = -std::numeric_limits<double>::infinity();
    if (seenCount < n) bestCompeting = tauUnseen;
    for (std::size_t i = k; i < lbOrder.size(); ++i) {
      std::uint32_t row = lbOrder[i].second;
      double ub = partial[row].partial;
      for (std::size_t a = 0; a < m; ++a) {
        if (!(partial[row].mask & (1u << a))) ub += f.weights[a] * frontier[a];
      }
      bestCompeting = std::max(bestCompeting, ub);
    }
    if (kthLb >= bestCompeting) {
      std::vector<std::uint32_t> chosen;
      chosen.reserve(k);
      for (std::size_t i = 0; i < k; ++i) chosen.push_back(lbOrder[i].second);
      std::sort(chosen.begin(), chosen.end(), [&](std::uint32_t x, std::uint32_t y) {
        return idx.idRank(x) < idx.idRank(y);
      });
      for (std::uint32_t row : chosen) res.entries.push_back({idx.id(row), std::nullopt});
      res.ordered = false;
      return res;
    }
  }
  throw SolverError("no-random-access scan exhausted the lists without stopping");
}

RankedResult nra_ordered(const AccessIndex& idx, const ScoringFunction& f, std::size_t k) {
  check_query(idx, f, k);
  RankedResult res;
  res.ordered = true;
  std::vector<bool> emitted(idx.size(), false);
  for (std::size_t kk = 1; kk <= k; ++kk) {
    RankedResult step = nra(idx, f, kk);
    res.stats.sortedAccesses += step.stats.sortedAccesses;
    res.stats.randomAccesses += step.stats.randomAccesses;
    res.stats.bufferPeak = std::max(res.stats.bufferPeak, step.stats.bufferPeak);
    for (const RankedEntry& e : step.entries) {
      std::uint32_t row = *idx.rowOf(e.id);
      if (!emitted[row]) {
        emitted[row] = true;
        res.entries.push_back({e.id, std::nullopt});
      }
    }
  }
  return res;
}

}  // namespace moquery
