#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "moquery/model.hpp"

namespace moquery {

// Weight constraint files, one constraint per line:
//
//   2 w1 + -1 w2 <= 0.5
//   w2 >= w1
//   0.3 <= w1
//
// Variables w1..wm may appear on either side with optional coefficients;
// plain numbers are constants.  Relations are <=, >=, < and >; the strict
// forms are recorded as their closed counterparts, which leaves the usable
// region unchanged for every operator in this engine.  '#' starts a
// comment.  DataError on anything unparsable or any variable beyond wm.
std::vector<LinearConstraint> parse_constraint_text(std::istream& in, std::size_t dim);
std::vector<LinearConstraint> load_constraints(const std::string& path, std::size_t dim);

}  // namespace moquery
