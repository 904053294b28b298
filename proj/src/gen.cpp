#include "moquery/gen.hpp"

#include <cmath>
#include <random>

#include "moquery/errors.hpp"

namespace moquery {

namespace {

// The distributions below avoid std::uniform_real_distribution and
// std::normal_distribution on purpose: their output is not pinned down by
// the standard, and generated datasets must be byte-identical everywhere.

double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller transform; consumes exactly two draws per call.
double next_normal(std::mt19937_64& rng) {
  double u1 = next_uniform(rng);
  double u2 = next_uniform(rng);
  while (u1 == 0.0) u1 = next_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace

Dataset generate(const GenSpec& spec) {
  if (spec.n < 1) throw ContractError("generator requires n >= 1");
  if (spec.m < 2 || spec.m > 8) throw ContractError("generator requires 2 <= m <= 8");

  Dataset d;
  for (std::size_t i = 0; i < spec.m; ++i) {
    d.attributes.push_back({"x" + std::to_string(i + 1), Direction::Max});
  }

  std::size_t width = std::to_string(spec.n).size();
  std::mt19937_64 rng(spec.seed);
  std::vector<double> row(spec.m);

  for (std::size_t r = 0; r < spec.n; ++r) {
    switch (spec.distribution) {
      case Distribution::Independent:
        for (std::size_t i = 0; i < spec.m; ++i) row[i] = next_uniform(rng);
        break;
      case Distribution::Correlated: {
        // Shared base value with small per-attribute jitter keeps the
        // attributes positively correlated and the skyline small.
        double base = next_uniform(rng);
        for (std::size_t i = 0; i < spec.m; ++i) {
          row[i] = clamp01(base + 0.1 * (2.0 * next_uniform(rng) - 1.0));
        }
        break;
      }
      case Distribution::Anticorrelated: {
        // Project a uniform point onto the plane sum x = m/2, then add a
        // thin normal spread; good on one attribute trades against the
        // others.  The spread must stay well under the in-plane spacing or
        // the trade-off band collapses to a log-sized skyline.
        double sum = 0.0;
        for (std::size_t i = 0; i < spec.m; ++i) {
          row[i] = next_uniform(rng);
          sum += row[i];
        }
        double adjust = (static_cast<double>(spec.m) / 2.0 - sum) / static_cast<double>(spec.m);
        for (std::size_t i = 0; i < spec.m; ++i) {
          row[i] = clamp01(row[i] + adjust + 0.02 * next_normal(rng));
        }
        break;
      }
    }
    std::string num = std::to_string(r + 1);
    Tuple t;
    t.id = "t" + std::string(width - num.size(), '0') + num;
    t.values = row;
    d.tuples.push_back(std::move(t));
  }
  return d;
}

const char* distribution_name(Distribution d) {
  switch (d) {
    case Distribution::Independent: return "independent";
    case Distribution::Correlated: return "correlated";
    case Distribution::Anticorrelated: return "anticorrelated";
  }
  return "unknown";
}

Distribution parse_distribution(const std::string& name) {
  if (name == "independent" || name == "indep") return Distribution::Independent;
  if (name == "correlated" || name == "corr") return Distribution::Correlated;
  if (name == "anticorrelated" || name == "anti") return Distribution::Anticorrelated;
  throw ContractError("unknown distribution '" + name + "'");
}

}  // namespace moquery
