#include "moquery/model.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "moquery/errors.hpp"

namespace moquery {

void validate_scoring(const ScoringFunction& f, std::size_t arity) {
  if (f.weights.size() != arity) {
    throw ContractError("scoring function arity " + std::to_string(f.weights.size()) +
                        " does not match dataset arity " + std::to_string(arity));
  }
  bool anyPositive = false;
  for (double w : f.weights) {
    if (w < 0.0) throw ContractError("scoring function has a negative weight");
    if (w > 0.0) anyPositive = true;
  }
  if (!anyPositive) throw ContractError("scoring function has no positive weight");
}

double score(const ScoringFunction& f, const Tuple& t) {
  if (f.weights.size() != t.values.size()) {
    throw ContractError("scoring function arity " + std::to_string(f.weights.size()) +
                        " does not match tuple arity " + std::to_string(t.values.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < t.values.size(); ++i) s += f.weights[i] * t.values[i];
  return s;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& cell, std::size_t lineNo, const std::string& column) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || cell.empty()) {
    throw DataError("line " + std::to_string(lineNo) + ", column '" + column +
                    "': malformed number '" + cell + "'");
  }
  return v;
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::set<std::string>& minimized) {
  std::string line;
  std::size_t lineNo = 0;

  // Header.
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) continue;
    header = split_fields(line);
    break;
  }
  if (header.empty()) throw DataError("empty dataset: no header row");
  if (header.size() < 2) throw DataError("header must name an id column and at least one attribute");
  if (header[0] != "id") throw DataError("first header column must be 'id', got '" + header[0] + "'");

  Dataset d;
  d.attributes.reserve(header.size() - 1);
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i].empty()) throw DataError("header column " + std::to_string(i + 1) + " is empty");
    Direction dir = minimized.count(header[i]) ? Direction::Min : Direction::Max;
    d.attributes.push_back({header[i], dir});
  }
  for (const auto& name : minimized) {
    bool known = false;
    for (const auto& a : d.attributes) known = known || a.name == name;
    if (!known) throw DataError("minimized column '" + name + "' not present in header");
  }

  std::unordered_set<std::string> seenIds;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw DataError("line " + std::to_string(lineNo) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    Tuple t;
    t.id = fields[0];
    if (t.id.empty()) throw DataError("line " + std::to_string(lineNo) + ": empty id");
    if (!seenIds.insert(t.id).second) {
      throw DataError("line " + std::to_string(lineNo) + ": duplicate id '" + t.id + "'");
    }
    t.values.reserve(d.arity());
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double v = parse_number(fields[i], lineNo, d.attributes[i - 1].name);
      if (d.attributes[i - 1].direction == Direction::Min) v = -v;
      t.values.push_back(v);
    }
    d.tuples.push_back(std::move(t));
  }
  if (d.tuples.empty()) throw DataError("empty dataset: header but no rows");
  return d;
}

Dataset load_csv(const std::string& path, const std::set<std::string>& minimized) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_csv(in, minimized);
}

std::string dataset_to_csv(const Dataset& d) {
  std::ostringstream out;
  out << "id";
  for (const auto& a : d.attributes) out << ',' << a.name;
  out << '\n';
  char buf[64];
  for (const auto& t : d.tuples) {
    out << t.id;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      double v = t.values[i];
      if (d.attributes[i].direction == Direction::Min) v = -v;
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace moquery
