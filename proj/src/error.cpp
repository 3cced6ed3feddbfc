#include "scdkit/error.hpp"

namespace scdkit {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::out_of_range: return "out-of-range";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::size_limit: return "size-limit";
    case Errc::foreign_element: return "foreign-element";
    case Errc::not_regular: return "not-regular";
    case Errc::not_snmf: return "not-an-snmf";
    case Errc::not_perfect_matching: return "not-a-perfect-matching";
    case Errc::invalid_scd: return "invalid-scd";
    case Errc::zero_degree: return "zero-degree";
    case Errc::zero_count: return "zero-count";
    case Errc::io: return "io";
  }
  return "unknown";
}

}  // namespace scdkit
