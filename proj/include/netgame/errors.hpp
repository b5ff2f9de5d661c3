#pragma once

#include <stdexcept>
#include <string>

namespace netgame {

enum class Errc {
  disconnected_graph,
  duplicate_valuation,
  invalid_cost,
  non_positive_parameter,
  node_absent,
  cannot_remove_attacker,
  no_such_path,
  not_proper,
  no_mixed_support,
  bracket_failure,
  domain_error,
  normalization_failure,
  structural_mismatch,
  parse_error,
  invalid_flag,
};

const char* errc_name(Errc code);

/// Single exception type used across the library; `code()` tells callers
/// which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace netgame
