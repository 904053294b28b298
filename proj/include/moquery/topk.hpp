#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "moquery/model.hpp"

namespace moquery {

// Sorted-access lists over a dataset, one per attribute, each ordered by
// value descending with ties broken by ascending id.  Also keeps a random
// access path (id to row) and per-attribute shifts that make every shifted
// value non-negative, which the no-random-access bounds rely on.
class AccessIndex {
public:
  // DataError on an empty dataset.
  static AccessIndex build(const Dataset& d);

  std::size_t size() const { return ids_.size(); }
  std::size_t arity() const { return lists_.size(); }

  const std::string& id(std::uint32_t row) const { return ids_[row]; }
  const std::vector<double>& values(std::uint32_t row) const { return values_[row]; }

  // Row at the given depth of one attribute's sorted list.
  std::uint32_t rowAt(std::size_t attribute, std::size_t depth) const {
    return lists_[attribute][depth];
  }

  // Position in the ascending-id total order; used wherever score ties must
  // break deterministically.
  std::uint32_t idRank(std::uint32_t row) const { return idRank_[row]; }

  // Per-attribute shift s_i >= 0 with value + s_i >= 0 for every tuple.
  double shift(std::size_t attribute) const { return shifts_[attribute]; }

  std::optional<std::uint32_t> rowOf(const std::string& id) const;

private:
  std::vector<std::string> ids_;
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<std::uint32_t>> lists_;
  std::vector<std::uint32_t> idRank_;
  std::vector<double> shifts_;
  std::unordered_map<std::string, std::uint32_t> rowOf_;
};

struct AccessStats {
  std::uint64_t sortedAccesses = 0;
  std::uint64_t randomAccesses = 0;
  std::uint64_t bufferPeak = 0;
};

struct RankedEntry {
  std::string id;
  std::optional<double> score;
};

struct RankedResult {
  std::vector<RankedEntry> entries;
  bool ordered = false;
  AccessStats stats;
};

// All three algorithms return exactly k entries and respect the tie rule
// (score descending, id ascending).  ContractError when k is outside
// [1, n] or the scoring function is invalid for the index arity.

// Round-robin sorted access until k rows have been seen on every list, then
// random access to finish scoring everything seen.  Ordered, with scores.
RankedResult fagin(const AccessIndex& idx, const ScoringFunction& f, std::size_t k);

// Sorted access with immediate random-access resolution and the usual
// frontier threshold; stops once the kth best score meets the threshold.
// The candidate buffer never holds more than k entries.
RankedResult threshold(const AccessIndex& idx, const ScoringFunction& f, std::size_t k);

// Sorted access only.  Maintains lower and upper score bounds per seen row
// and stops when k rows' lower bounds dominate every competitor's upper
// bound.  Returns an unordered id set without scores; randomAccesses is 0.
RankedResult nra(const AccessIndex& idx, const ScoringFunction& f, std::size_t k);

// Ranks the no-random-access result by running it at sizes 1..k and
// appending each newly resolved id.  Ordered, still without scores.
RankedResult nra_ordered(const AccessIndex& idx, const ScoringFunction& f, std::size_t k);

}  // namespace moquery
