#include "netgame/errors.hpp"

namespace netgame {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::disconnected_graph: return "disconnected_graph";
    case Errc::duplicate_valuation: return "duplicate_valuation";
    case Errc::invalid_cost: return "invalid_cost";
    case Errc::non_positive_parameter: return "non_positive_parameter";
    case Errc::node_absent: return "node_absent";
    case Errc::cannot_remove_attacker: return "cannot_remove_attacker";
    case Errc::no_such_path: return "no_such_path";
    case Errc::not_proper: return "not_proper";
    case Errc::no_mixed_support: return "no_mixed_support";
    case Errc::bracket_failure: return "bracket_failure";
    case Errc::domain_error: return "domain_error";
    case Errc::normalization_failure: return "normalization_failure";
    case Errc::structural_mismatch: return "structural_mismatch";
    case Errc::parse_error: return "parse_error";
    case Errc::invalid_flag: return "invalid_flag";
  }
  return "unknown_error";
}

}  // namespace netgame
