#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

// Error taxonomy shared by the whole library. Codes are stable identifiers
// surfaced in CLI diagnostics; the what() string carries context.
enum class errc {
  invalid_window,
  grid_mismatch,
  out_of_domain,
  not_painless,
  incommensurate_lattice,
  zero_signal,
  not_hardy,
  degenerate_v,
  lambda_too_large,
  index_mismatch,
  parse_error,
  validation_error,
};

const char* errc_name(errc code) noexcept;

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace framelab
