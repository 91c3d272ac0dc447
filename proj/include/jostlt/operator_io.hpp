#pragma once

#include <stdexcept>
#include <string>

#include "jostlt/operator.hpp"

namespace jostlt {

/// Malformed operator description. `where()` names the offending field,
/// e.g. "entries[2].b_re".
class OperatorFormatError : public std::runtime_error {
 public:
  OperatorFormatError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Parses an operator document:
///   {"entries": [{"j": 1, "a_re": .., "a_im": .., "b_re": .., ...}, ...]}
/// or the shorthand {"step": {"n": 3, "h_re": 0.5, "h_im": 0}} for b_j = i h,
/// j = 1..n. Omitted components default to the free row (1, 0, 1).
JacobiCoefficients parse_operator(const std::string& text);
JacobiCoefficients load_operator(const std::string& path);

/// Canonical "entries" document for `op`.
std::string operator_to_json(const JacobiCoefficients& op);

}  // namespace jostlt
