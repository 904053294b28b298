#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moquery/bench.hpp"
#include "moquery/constraints.hpp"
#include "moquery/errors.hpp"
#include "moquery/flexsky.hpp"
#include "moquery/gen.hpp"
#include "moquery/geometry.hpp"
#include "moquery/model.hpp"
#include "moquery/oracle.hpp"
#include "moquery/report.hpp"
#include "moquery/skyline.hpp"
#include "moquery/topk.hpp"

namespace {

using namespace moquery;

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitSolver = 4;

std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string cell = text.substr(start, comma == std::string::npos ? comma : comma - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
      throw ContractError("malformed weight list '" + text + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
std::vector<T> parse_int_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string cell = text.substr(start, comma == std::string::npos ? comma : comma - start);
    T v{};
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
      throw ContractError(std::string("malformed ") + what + " list '" + text + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("MOQUERY_SEED");
  if (!raw) return std::nullopt;
  std::uint64_t v = 0;
  std::string text(raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ContractError("MOQUERY_SEED is not an unsigned integer: '" + text + "'");
  }
  return v;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
}

void emit_report(const std::string& path, const RunReport& report) {
  if (path.empty()) return;
  write_text(path, to_json(report).dump(2) + "\n");
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::set<std::string> to_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

WeightPolytope build_polytope(const std::string& constraintPath, std::size_t dim) {
  std::vector<LinearConstraint> cons;
  if (!constraintPath.empty()) cons = load_constraints(constraintPath, dim);
  return make_polytope(dim, std::move(cons));
}

// ---- topk ----

struct TopkOpts {
  std::string input, weights, report;
  std::string algo = "ta";
  std::size_t k = 10;
  std::vector<std::string> mins;
  bool ordered = false;
  bool oracle = false;
};

int run_topk(const std::vector<std::string>& argv, const TopkOpts& o) {
  Dataset d = load_csv(o.input, to_set(o.mins));
  ScoringFunction f{"cli", parse_weights(o.weights)};
  AccessIndex idx = AccessIndex::build(d);

  Timer timer;
  RankedResult result;
  if (o.algo == "fa") {
    result = fagin(idx, f, o.k);
  } else if (o.algo == "ta") {
    result = threshold(idx, f, o.k);
  } else if (o.algo == "nra") {
    result = o.ordered ? nra_ordered(idx, f, o.k) : nra(idx, f, o.k);
  } else {
    throw ContractError("unknown algorithm '" + o.algo + "' (fa, ta, nra)");
  }
  double elapsed = timer.ms();

  for (const RankedEntry& e : result.entries) {
    if (e.score) {
      std::cout << e.id << '\t' << format_score(*e.score) << '\n';
    } else {
      std::cout << e.id << '\n';
    }
  }
  std::cerr << "sortedAccesses=" << result.stats.sortedAccesses
            << " randomAccesses=" << result.stats.randomAccesses
            << " bufferPeak=" << result.stats.bufferPeak << '\n';

  RunReport report;
  report.argv = argv;
  report.command = "topk";
  report.wallTimeMs = elapsed;
  nlohmann::json entries = nlohmann::json::array();
  for (const RankedEntry& e : result.entries) {
    nlohmann::json je;
    je["id"] = e.id;
    if (e.score) je["score"] = *e.score;
    entries.push_back(je);
  }
  report.details = {{"algo", o.algo},
                    {"k", o.k},
                    {"ordered", result.ordered},
                    {"entries", entries},
                    {"sortedAccesses", result.stats.sortedAccesses},
                    {"randomAccesses", result.stats.randomAccesses},
                    {"bufferPeak", result.stats.bufferPeak}};
  emit_report(o.report, report);

  if (o.oracle) {
    auto brute = oracle::brute_topk(d, f, o.k);
    std::vector<double> expected, got;
    for (const auto& [id, s] : brute) expected.push_back(s);
    for (const RankedEntry& e : result.entries) {
      const Tuple* t = nullptr;
      for (const Tuple& u : d.tuples) {
        if (u.id == e.id) t = &u;
      }
      if (!t) {
        std::cerr << "oracle: unknown id " << e.id << '\n';
        return kExitDisagreement;
      }
      double s = score(f, *t);
      if (e.score && *e.score != s) {
        std::cerr << "oracle: reported score for " << e.id << " is off\n";
        return kExitDisagreement;
      }
      got.push_back(s);
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (expected != got) {
      std::cerr << "oracle: disagreement on the top-" << o.k << " score set\n";
      return kExitDisagreement;
    }
    std::cerr << "oracle: agreed\n";
  }
  return kExitOk;
}

// ---- skyline ----

struct SkylineOpts {
  std::string input, report;
  std::string algo = "sfs";
  std::vector<std::string> mins;
  bool oracle = false;
};

int run_skyline(const std::vector<std::string>& argv, const SkylineOpts& o) {
  Dataset d = load_csv(o.input, to_set(o.mins));

  Timer timer;
  SkylineStats stats;
  std::vector<std::string> ids;
  if (o.algo == "bnl") {
    ids = bnl(d, &stats);
  } else if (o.algo == "sfs") {
    ids = sfs(d, &stats);
  } else {
    throw ContractError("unknown algorithm '" + o.algo + "' (bnl, sfs)");
  }
  double elapsed = timer.ms();

  for (const std::string& id : ids) std::cout << id << '\n';
  std::cerr << "windowComparisons=" << stats.windowComparisons
            << " evictions=" << stats.evictions << '\n';

  RunReport report;
  report.argv = argv;
  report.command = "skyline";
  report.wallTimeMs = elapsed;
  report.details = {{"algo", o.algo},
                    {"ids", ids},
                    {"size", ids.size()},
                    {"windowComparisons", stats.windowComparisons},
                    {"evictions", stats.evictions}};
  emit_report(o.report, report);

  if (o.oracle) {
    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != oracle::brute_skyline(d)) {
      std::cerr << "oracle: skyline disagreement\n";
      return kExitDisagreement;
    }
    std::cerr << "oracle: agreed\n";
  }
  return kExitOk;
}

// ---- flexsky ----

struct FlexOpts {
  std::string input, constraints, report;
  std::string algo = "opt";
  std::string backend = "auto";
  std::vector<std::string> mins;
  bool oracle = false;
  std::size_t resolution = 1000;
};

int run_flexsky(const std::vector<std::string>& argv, const FlexOpts& o, bool po) {
  Dataset d = load_csv(o.input, to_set(o.mins));
  WeightPolytope poly = build_polytope(o.constraints, d.arity());

  DominanceBackend backend;
  if (o.backend == "lp") {
    backend = DominanceBackend::Lp;
  } else if (o.backend == "ve") {
    backend = DominanceBackend::Ve;
  } else if (o.backend == "auto") {
    backend = default_backend(poly);
  } else {
    throw ContractError("unknown backend '" + o.backend + "' (lp, ve, auto)");
  }

  Timer timer;
  FlexStats stats;
  FlexQuery q = FlexQuery::make(poly, backend, &stats);
  std::vector<std::string> ids;
  if (po) {
    if (o.algo == "baseline") {
      ids = po_baseline(d, q, &stats);
    } else if (o.algo == "opt") {
      ids = po_incremental(d, q, &stats);
    } else {
      throw ContractError("unknown algorithm '" + o.algo + "' (baseline, opt)");
    }
  } else {
    if (o.algo == "baseline") {
      ids = nd_baseline(d, q, &stats);
    } else if (o.algo == "opt") {
      ids = nd_sorted(d, q, &stats);
    } else {
      throw ContractError("unknown algorithm '" + o.algo + "' (baseline, opt)");
    }
  }
  double elapsed = timer.ms();

  for (const std::string& id : ids) std::cout << id << '\n';
  std::cerr << "dominanceTests=" << stats.dominanceTests << " lpSolves=" << stats.lpSolves
            << " vertexEnumerations=" << stats.vertexEnumerations
            << " vertices=" << q.vertices.count() << '\n';

  RunReport report;
  report.argv = argv;
  report.command = po ? "flexsky po" : "flexsky nd";
  report.wallTimeMs = elapsed;
  report.details = {{"algo", o.algo},
                    {"backend", o.backend == "auto"
                                    ? (backend == DominanceBackend::Ve ? "ve" : "lp")
                                    : o.backend},
                    {"ids", ids},
                    {"size", ids.size()},
                    {"vertices", q.vertices.count()},
                    {"dominanceTests", stats.dominanceTests},
                    {"lpSolves", stats.lpSolves},
                    {"vertexEnumerations", stats.vertexEnumerations},
                    {"maxWindowTestsPerTuple", stats.maxWindowTestsPerTuple}};
  emit_report(o.report, report);

  if (o.oracle) {
    std::vector<std::string> expected;
    if (po) {
      for (const auto& cert : oracle::brute_po(d, poly, o.resolution)) {
        expected.push_back(cert.id);
      }
    } else {
      expected = oracle::brute_nd(d, poly);
    }
    if (ids != expected) {
      std::cerr << "oracle: disagreement (" << ids.size() << " vs " << expected.size()
                << " ids)\n";
      return kExitDisagreement;
    }
    std::cerr << "oracle: agreed\n";
  }
  return kExitOk;
}

// ---- gen ----

struct GenOpts {
  std::string dist = "independent";
  std::size_t n = 0;
  std::size_t m = 2;
  std::uint64_t seed = 42;
  std::string out;
};

int run_gen(const GenOpts& o) {
  GenSpec spec;
  spec.distribution = parse_distribution(o.dist);
  spec.n = o.n;
  spec.m = o.m;
  spec.seed = env_seed().value_or(o.seed);
  std::string csv = dataset_to_csv(generate(spec));
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    write_text(o.out, csv);
  }
  return kExitOk;
}

// ---- bench ----

struct BenchOpts {
  std::string dist = "anticorrelated";
  std::size_t m = 2;
  std::string sizes;
  std::string seeds = "1";
  std::string constraints;
};

int run_bench(const BenchOpts& o) {
  std::vector<std::size_t> sizes = parse_int_list<std::size_t>(o.sizes, "size");
  std::vector<std::uint64_t> seeds = parse_int_list<std::uint64_t>(o.seeds, "seed");
  if (auto s = env_seed()) seeds = {*s};
  std::vector<LinearConstraint> cons;
  if (!o.constraints.empty()) cons = load_constraints(o.constraints, o.m);
  std::cout << bench_csv(bench_sizes(sizes, seeds, parse_distribution(o.dist), o.m, cons));
  return kExitOk;
}

// ---- demo ----

Dataset demo_dataset() {
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

int run_demo() {
  Dataset d = demo_dataset();
  AccessIndex idx = AccessIndex::build(d);
  std::cout << "dataset: 8 candidates with attributes (experience, score)\n\n";

  ScoringFunction f1{"f1", {0.6, 2.0}};
  ScoringFunction f2{"f2", {1.3, 1.0}};
  for (const auto& f : {f1, f2}) {
    std::cout << "top-1 under " << f.name << " = " << format_score(f.weights[0])
              << "*experience + " << format_score(f.weights[1]) << "*score\n";
    RankedResult fa = fagin(idx, f, 1);
    RankedResult ta = threshold(idx, f, 1);
    RankedResult nr = nra(idx, f, 1);
    std::cout << "  fagin:     " << fa.entries[0].id << " (" << format_score(*fa.entries[0].score)
              << ")\n";
    std::cout << "  threshold: " << ta.entries[0].id << " (" << format_score(*ta.entries[0].score)
              << ")\n";
    std::cout << "  nra:       " << nr.entries[0].id << " (bounds only, no score)\n";
  }

  std::vector<std::string> sky = sfs(d);
  std::cout << "\nskyline (emission order):";
  for (const std::string& id : sky) std::cout << ' ' << id;
  std::cout << '\n';

  // Weights favor the score attribute at least as much as experience.
  WeightPolytope poly = make_polytope(2, {{{1.0, -1.0}, 0.0}});
  VertexSet vs = enumerate_vertices(poly);
  std::cout << "\nconstraint: w1 <= w2 over normalized weights (w1 + w2 = 1)\n";
  std::cout << "vertices:";
  for (const auto& v : vs.vertices) {
    std::cout << " (" << format_score(v[0]) << ", " << format_score(v[1]) << ")";
  }
  std::cout << '\n';

  FlexQuery q = FlexQuery::make(poly, DominanceBackend::Ve);
  std::vector<std::string> nd = nd_sorted(d, q);
  std::cout << "non-dominated under the constraint:";
  for (const std::string& id : nd) std::cout << ' ' << id;
  std::cout << '\n';
  std::vector<std::string> po = po_incremental(d, q);
  std::cout << "potentially optimal under the constraint:";
  for (const std::string& id : po) std::cout << ' ' << id;
  std::cout << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> argvec(argv, argv + argc);
  CLI::App app{"in-memory multi-objective query operators"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* genCmd = app.add_subcommand("gen", "generate a synthetic dataset");
  genCmd->add_option("--dist", gen.dist, "independent|correlated|anticorrelated");
  genCmd->add_option("--n", gen.n, "tuple count")->required();
  genCmd->add_option("--m", gen.m, "attribute count (2..8)");
  genCmd->add_option("--seed", gen.seed, "rng seed (MOQUERY_SEED overrides)");
  genCmd->add_option("--out", gen.out, "output file (default stdout)");

  TopkOpts topk;
  CLI::App* topkCmd = app.add_subcommand("topk", "ranked retrieval");
  topkCmd->add_option("--input", topk.input, "dataset CSV")->required();
  topkCmd->add_option("--algo", topk.algo, "fa|ta|nra (default ta)");
  topkCmd->add_option("--k", topk.k, "result size (default 10)");
  topkCmd->add_option("--weights", topk.weights, "comma-separated weights")->required();
  topkCmd->add_option("--min", topk.mins, "treat column as minimized (repeatable)");
  topkCmd->add_flag("--ordered", topk.ordered, "rank the nra result");
  topkCmd->add_option("--report", topk.report, "write a JSON run report");
  topkCmd->add_flag("--oracle", topk.oracle, "cross-check against the reference scan");

  SkylineOpts sky;
  CLI::App* skyCmd = app.add_subcommand("skyline", "Pareto-optimal tuples");
  skyCmd->add_option("--input", sky.input, "dataset CSV")->required();
  skyCmd->add_option("--algo", sky.algo, "bnl|sfs (default sfs)");
  skyCmd->add_option("--min", sky.mins, "treat column as minimized (repeatable)");
  skyCmd->add_option("--report", sky.report, "write a JSON run report");
  skyCmd->add_flag("--oracle", sky.oracle, "cross-check against the reference scan");

  FlexOpts flex;
  CLI::App* flexCmd = app.add_subcommand("flexsky", "skyline under weight constraints");
  flexCmd->fallthrough();
  flexCmd->add_option("--input", flex.input, "dataset CSV")->required();
  flexCmd->add_option("--constraints", flex.constraints,
                      "constraint file (default: unconstrained weights)");
  flexCmd->add_option("--algo", flex.algo, "baseline|opt (default opt)");
  flexCmd->add_option("--backend", flex.backend, "lp|ve|auto dominance backend");
  flexCmd->add_option("--min", flex.mins, "treat column as minimized (repeatable)");
  flexCmd->add_option("--report", flex.report, "write a JSON run report");
  flexCmd->add_flag("--oracle", flex.oracle, "cross-check against the exact reference");
  flexCmd->add_option("--resolution", flex.resolution,
                      "weight-grid resolution for the po oracle (default 1000)");
  flexCmd->add_subcommand("nd", "non-dominated tuples");
  CLI::App* poCmd = flexCmd->add_subcommand("po", "potentially optimal tuples");
  flexCmd->require_subcommand(1);

  BenchOpts bench;
  CLI::App* benchCmd = app.add_subcommand("bench", "result-size sweep as CSV");
  benchCmd->add_option("--dist", bench.dist, "distribution (default anticorrelated)");
  benchCmd->add_option("--m", bench.m, "attribute count");
  benchCmd->add_option("--sizes", bench.sizes, "comma-separated n values")->required();
  benchCmd->add_option("--seeds", bench.seeds, "comma-separated seeds (MOQUERY_SEED overrides)");
  benchCmd->add_option("--constraints", bench.constraints, "constraint file");

  CLI::App* demoCmd = app.add_subcommand("demo", "worked example on a small dataset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (genCmd->parsed()) return run_gen(gen);
    if (topkCmd->parsed()) return run_topk(argvec, topk);
    if (skyCmd->parsed()) return run_skyline(argvec, sky);
    if (flexCmd->parsed()) return run_flexsky(argvec, flex, poCmd->parsed());
    if (benchCmd->parsed()) return run_bench(bench);
    if (demoCmd->parsed()) return run_demo();
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
