#include "moquery/constraints.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "moquery/errors.hpp"

namespace moquery {

namespace {

struct LinearExpr {
  std::vector<double> coeffs;
  double constant = 0.0;
};

[[noreturn]] void fail(std::size_t lineNo, const std::string& text, const std::string& why) {
  throw DataError("constraint line " + std::to_string(lineNo) + " ('" + text + "'): " + why);
}

// side := term (('+' | '-') term)*
// term := number [['*'] var] | var
LinearExpr parse_side(const std::string& s, std::size_t dim, std::size_t lineNo,
                      const std::string& full) {
  LinearExpr e;
  e.coeffs.assign(dim, 0.0);
  std::size_t i = 0;
  auto skipWs = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };

  bool first = true;
  while (true) {
    skipWs();
    if (i == s.size()) {
      if (first) fail(lineNo, full, "empty expression");
      break;
    }
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      if (first && s[i] == '+') fail(lineNo, full, "leading '+'");
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
      skipWs();
    } else if (!first) {
      fail(lineNo, full, "expected '+' or '-' between terms");
    }
    first = false;

    bool haveNumber = false;
    double number = 1.0;
    if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
      const char* begin = s.data() + i;
      const char* end = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(begin, end, number);
      if (ec != std::errc()) fail(lineNo, full, "malformed number");
      i += static_cast<std::size_t>(ptr - begin);
      haveNumber = true;
      skipWs();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skipWs();
      }
    }

    if (i < s.size() && s[i] == 'w') {
      ++i;
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) fail(lineNo, full, "variable must be w<index>");
      std::size_t var = 0;
      std::from_chars(s.data() + start, s.data() + i, var);
      if (var < 1 || var > dim) {
        fail(lineNo, full, "variable w" + s.substr(start, i - start) + " outside w1..w" +
                               std::to_string(dim));
      }
      e.coeffs[var - 1] += sign * number;
    } else if (haveNumber) {
      e.constant += sign * number;
    } else {
      fail(lineNo, full, "expected a number or w<index>");
    }
  }
  return e;
}

}  // namespace

std::vector<LinearConstraint> parse_constraint_text(std::istream& in, std::size_t dim) {
  std::vector<LinearConstraint> out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (blank) continue;

    std::size_t relPos = std::string::npos;
    std::size_t relLen = 0;
    bool flip = false;
    for (std::size_t i = 0; i + 1 <= line.size(); ++i) {
      if (line[i] == '<' || line[i] == '>') {
        relPos = i;
        flip = line[i] == '>';
        relLen = (i + 1 < line.size() && line[i + 1] == '=') ? 2 : 1;
        break;
      }
    }
    if (relPos == std::string::npos) fail(lineNo, line, "no relation (<=, >=, <, >)");

    LinearExpr lhs = parse_side(line.substr(0, relPos), dim, lineNo, line);
    LinearExpr rhs = parse_side(line.substr(relPos + relLen), dim, lineNo, line);

    // Everything to the left, constants to the right: (lhs - rhs) <= c.
    LinearConstraint c;
    c.coeffs.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      c.coeffs[i] = flip ? rhs.coeffs[i] - lhs.coeffs[i] : lhs.coeffs[i] - rhs.coeffs[i];
    }
    c.bound = flip ? lhs.constant - rhs.constant : rhs.constant - lhs.constant;

    bool allZero = true;
    for (double v : c.coeffs) allZero = allZero && v == 0.0;
    if (allZero) fail(lineNo, line, "no variables");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LinearConstraint> load_constraints(const std::string& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_constraint_text(in, dim);
}

}  // namespace moquery
