#pragma once

#include <stdexcept>
#include <string>

namespace orbitforge {

enum class Errc {
  parse_error,
  invalid_sequence,
  sequence_too_short,
  repeated_node,
  unit_modulus,
  zero_modulus,
  precision_cap_exceeded,
  non_decreasing_moduli,
  hypothesis_violated,
  out_of_range,
  empty_selection,
  degenerate_data,
  internal
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace orbitforge
