#pragma once

#include <cstdint>
#include <string>

#include "moquery/model.hpp"

namespace moquery {

enum class Distribution { Independent, Correlated, Anticorrelated };

struct GenSpec {
  Distribution distribution = Distribution::Independent;
  std::size_t n = 0;
  std::size_t m = 0;          // attribute count, 2..8
  std::uint64_t seed = 0;
};

// Deterministic synthetic dataset: same spec, same bytes, on any platform.
// Values lie in [0, 1]; ids are t0001-style with width derived from n.
// Attributes are named x1..xm, all maximized.  ContractError on n < 1 or m
// outside [2, 8].
Dataset generate(const GenSpec& spec);

const char* distribution_name(Distribution d);

// Parses "independent" / "correlated" / "anticorrelated" (also the short
// forms "indep", "corr", "anti"); ContractError otherwise.
Distribution parse_distribution(const std::string& name);

}  // namespace moquery
