#pragma once

#include <stdexcept>
#include <string>

namespace credalkit {

// Error taxonomy shared by the library and the CLI diagnostics.
enum class errc {
  empty_input,
  dimension_mismatch,
  context_mismatch,
  empty_set,
  invalid_bounds,
  total_conflict,
  frame_too_large,
  invalid_input,
  numeric_failure,
  parse_error,
  unknown_reference,
  vector_length_mismatch,
  bound_violated,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        detail_(what) {}
  errc code() const noexcept { return code_; }
  // Message without the code prefix, for rewrapping with more context.
  const std::string& detail() const noexcept { return detail_; }

 private:
  errc code_;
  std::string detail_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace credalkit
