#include "moquery/bench.hpp"

#include <sstream>

#include "moquery/flexsky.hpp"
#include "moquery/skyline.hpp"

namespace moquery {

std::vector<BenchRow> bench_sizes(const std::vector<std::size_t>& sizes,
                                  const std::vector<std::uint64_t>& seeds, Distribution dist,
                                  std::size_t m,
                                  const std::vector<LinearConstraint>& constraints) {
  WeightPolytope poly = make_polytope(m, constraints);
  std::vector<BenchRow> rows;
  for (std::uint64_t seed : seeds) {
    for (std::size_t n : sizes) {
      GenSpec spec;
      spec.distribution = dist;
      spec.n = n;
      spec.m = m;
      spec.seed = seed;
      Dataset d = generate(spec);

      BenchRow row;
      row.distribution = dist;
      row.n = n;
      row.m = m;
      row.seed = seed;
      row.constraintCount = constraints.size();

      SkylineStats skyStats;
      row.skylineSize = sfs(d, &skyStats).size();
      row.windowComparisons = skyStats.windowComparisons;

      FlexStats flexStats;
      FlexQuery q = FlexQuery::make(poly, default_backend(poly), &flexStats);
      row.ndSize = nd_sorted(d, q, &flexStats).size();
      row.dominanceTests = flexStats.dominanceTests;

      FlexStats poStats;
      FlexQuery qpo = FlexQuery::make(poly, default_backend(poly), &poStats);
      row.poSize = po_incremental(d, qpo, &poStats).size();
      row.lpSolves = poStats.lpSolves;

      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "distribution,n,m,seed,constraints,skylineSize,ndSize,poSize,"
         "windowComparisons,dominanceTests,lpSolves\n";
  for (const BenchRow& r : rows) {
    out << distribution_name(r.distribution) << ',' << r.n << ',' << r.m << ',' << r.seed << ','
        << r.constraintCount << ',' << r.skylineSize << ',' << r.ndSize << ',' << r.poSize << ','
        << r.windowComparisons << ',' << r.dominanceTests << ',' << r.lpSolves << '\n';
  }
  return out.str();
}

}  // namespace moquery
