#pragma once

#include <stdexcept>
#include <string>

namespace barypade {

enum class errc {
  degree_zero,
  non_convergence,
  derivative_underflow,
  insufficient_truncation,
  node_collision,
  alpha_on_node,
  degenerate_system,
  pole_hit,
  no_pole,
  block_overlap,
  search_exhausted,
  parse_error,
  io_error,
};

/// All library failures are thrown as `error`; the code tells callers (and
/// the CLI exit-code mapping) which contract was violated.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace barypade
