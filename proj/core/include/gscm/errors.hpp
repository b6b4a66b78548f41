#pragma once

#include <stdexcept>
#include <string>

namespace gscm {

enum class errc {
  not_positive_definite,
  budget_exceeded,
  singular_basis,
  not_invertible,
  no_involution,
  invalid_involution,
  no_invertible_combination,
  non_invertible_base,
  zero_ideal,
  bad_prime,
  not_monogenic,
  height_overflow,
  decode_failed,
  prime_divides_generator,
  search_exhausted,
  no_root,
  no_match,
  no_solution,
  insufficient_primes,
  no_square_unit,
  degenerate_tie,
  ideal_not_principal_witness,
  usage_error,
};

const char* to_string(errc c) noexcept;

/* All library failures are reported through this exception; code() gives the
 * machine-readable kind, what() carries context. */
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace gscm
