#include "jostlt/operator_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace jostlt {

namespace {

using nlohmann::json;

double number_field(const json& obj, const char* key, double fallback, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw OperatorFormatError(where + "." + key, "expected a number");
  return it->get<double>();
}

JacobiCoefficients parse_step(const json& step) {
  if (!step.is_object()) throw OperatorFormatError("step", "expected an object");
  const auto n_it = step.find("n");
  if (n_it == step.end() || !n_it->is_number_integer()) {
    throw OperatorFormatError("step.n", "expected an integer");
  }
  const long long n = n_it->get<long long>();
  if (n < 0 || n > 100000000) throw OperatorFormatError("step.n", "out of range");
  const cplx h{number_field(step, "h_re", 0.0, "step"), number_field(step, "h_im", 0.0, "step")};
  return JacobiCoefficients::step(static_cast<int>(n), h);
}

JacobiCoefficients parse_entries(const json& entries) {
  if (!entries.is_array()) throw OperatorFormatError("entries", "expected an array");
  std::map<int, JacobiEntry> rows;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "entries[" + std::to_string(i) + "]";
    const json& e = entries[i];
    if (!e.is_object()) throw OperatorFormatError(where, "expected an object");
    const auto j_it = e.find("j");
    if (j_it == e.end() || !j_it->is_number_integer()) {
      throw OperatorFormatError(where + ".j", "expected an integer");
    }
    const long long j = j_it->get<long long>();
    if (j < 1 || j > 100000000) throw OperatorFormatError(where + ".j", "index must be >= 1");
    JacobiEntry row;
    row.a = {number_field(e, "a_re", 1.0, where), number_field(e, "a_im", 0.0, where)};
    row.b = {number_field(e, "b_re", 0.0, where), number_field(e, "b_im", 0.0, where)};
    row.c = {number_field(e, "c_re", 1.0, where), number_field(e, "c_im", 0.0, where)};
    if (row.a * row.c == cplx{0.0}) throw OperatorFormatError(where, "a_j c_j must be nonzero");
    if (!rows.emplace(static_cast<int>(j), row).second) {
      throw OperatorFormatError(where + ".j", "duplicate index " + std::to_string(j));
    }
  }
  return JacobiCoefficients::from_map(rows);
}

}  // namespace

JacobiCoefficients parse_operator(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream where;
    where << "line " << line << ", column " << column;
    throw OperatorFormatError(where.str(), "invalid JSON");
  }
  if (!doc.is_object()) throw OperatorFormatError("document", "expected an object");
  const bool has_step = doc.contains("step");
  const bool has_entries = doc.contains("entries");
  if (has_step && has_entries) {
    throw OperatorFormatError("document", "give either 'entries' or 'step', not both");
  }
  if (has_step) return parse_step(doc["step"]);
  if (has_entries) return parse_entries(doc["entries"]);
  throw OperatorFormatError("document", "missing 'entries' or 'step'");
}

JacobiCoefficients load_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw OperatorFormatError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_operator(buffer.str());
}

std::string operator_to_json(const JacobiCoefficients& op) {
  json entries = json::array();
  for (const auto& [j, e] : op.to_map()) {
    entries.push_back({{"j", j},
                       {"a_re", e.a.real()}, {"a_im", e.a.imag()},
                       {"b_re", e.b.real()}, {"b_im", e.b.imag()},
                       {"c_re", e.c.real()}, {"c_im", e.c.imag()}});
  }
  return json{{"entries", entries}}.dump(2);
}

}  // namespace jostlt
