#pragma once

#include <stdexcept>
#include <string>

namespace scdkit {

enum class Errc {
  invalid_parameter,
  out_of_range,
  budget_exceeded,
  size_limit,
  foreign_element,
  not_regular,
  not_snmf,
  not_perfect_matching,
  invalid_scd,
  zero_degree,
  zero_count,
  io,
};

const char* errc_name(Errc c);

class ScdError : public std::runtime_error {
 public:
  ScdError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw ScdError(code, message);
}

inline void require(bool cond, Errc code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace scdkit
