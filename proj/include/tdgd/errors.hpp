#pragma once

#include <stdexcept>
#include <string>

namespace tdgd {

enum class Errc {
  stream_exhausted,
  rank_out_of_range,
  c_out_of_range,
  not_four_uniform,
  q_out_of_range,
  no_convergence,
  no_sign_change,
  empty_source,
  source_too_large,
  malformed_run,
  odd_symbol_count,
  parse_error,
  invalid_family_param,
  bad_magic,
  trailing_garbage,
};

const char* to_string(Errc code) noexcept;

// Single exception type for all library failures; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tdgd
