#ifndef JPMONO_ERROR_HPP
#define JPMONO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace jpmono {

// Domain errors carry a stable machine-readable code plus a human message.
// The CLI maps any Error to exit status 1 and a JSON {"error": code} report.
enum class errc {
  non_prime,
  bad_modulus,
  non_unit,
  not_a_field,
  singular,
  bad_weights,
  bad_weight,
  degenerate_parameter,
  degenerate_params,
  degenerate_restriction,
  no_solution,
  dimension_mismatch,
  too_large,
  not_normal,
  no_form,
  non_unique,
  ill_conditioned,
  non_integral,
  negative_rank,
  rank_too_small,
  bad_target,
  unsupported,
  bad_input,
  cap_exceeded,
};

const char *errc_name(errc c);

struct Error : std::runtime_error {
  errc code;
  Error(errc c, const std::string &msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string &msg) { throw Error(c, msg); }

} // namespace jpmono

#endif
