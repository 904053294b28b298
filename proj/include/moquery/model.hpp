#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace moquery {

// All operators maximize.  Columns declared Min are negated once at load
// time so the rest of the code never branches on direction.
enum class Direction { Max, Min };

struct AttributeInfo {
  std::string name;
  Direction direction = Direction::Max;
};

struct Tuple {
  std::string id;
  std::vector<double> values;  // one per attribute, already direction-adjusted
};

// Row order is preserved from the source; ids are unique, values may repeat.
struct Dataset {
  std::vector<AttributeInfo> attributes;
  std::vector<Tuple> tuples;

  std::size_t size() const { return tuples.size(); }
  std::size_t arity() const { return attributes.size(); }
};

// Linear scoring function f(t) = weights . t.values.  Weights are
// non-negative with at least one strictly positive entry.
struct ScoringFunction {
  std::string name;
  std::vector<double> weights;
};

// Throws ContractError if weights are negative, all zero, or of wrong arity.
void validate_scoring(const ScoringFunction& f, std::size_t arity);

// f(t); ContractError on arity mismatch.
double score(const ScoringFunction& f, const Tuple& t);

// One face a . w <= b of a weight polytope, always stored in closed form.
struct LinearConstraint {
  std::vector<double> coeffs;
  double bound = 0.0;
};

// Subset of the weight simplex { w >= 0, sum w = 1 } cut by user constraints.
// The simplex conditions are implicit; `constraints` holds only the user
// part.  Instances are only created through make_polytope, which rejects
// empty regions, so a WeightPolytope is always non-empty.
struct WeightPolytope {
  std::size_t dim = 0;
  std::vector<LinearConstraint> constraints;
};

// Validates arity of every constraint (ContractError) and feasibility of the
// region (DataError "empty preference set").  Strict inputs must be closed by
// the caller before reaching here; see the constraint-file parser in the CLI.
WeightPolytope make_polytope(std::size_t dim, std::vector<LinearConstraint> constraints);

// CSV layout: header `id,<name>,...`, one tuple per line, UTF-8, comma
// separated, no quoting.  `minimized` lists column names whose values are
// negated on load.  Errors are reported as DataError naming the offending
// row or column; an input with a header but no rows is a DataError too.
Dataset parse_csv(std::istream& in, const std::set<std::string>& minimized = {});
Dataset load_csv(const std::string& path, const std::set<std::string>& minimized = {});

// Serialization counterpart used by the generator and the CLI.  Values are
// printed with enough digits to round-trip exactly.
std::string dataset_to_csv(const Dataset& d);

}  // namespace moquery
