#pragma once

#include <stdexcept>
#include <string>

namespace shimura {

// Every failure mode exposed by the library. Input-shaped failures throw
// invalid_input (CLI exit code 2); failures that can only mean a bug in the
// library itself throw internal_error (CLI exit code 1).
enum class errc {
  zero_input,
  bound_exceeded,
  not_prime,
  not_odd_prime,
  zero_modulus,
  zero_argument,
  oracle_bound_exceeded,
  not_squarefree,
  degenerate_radicand,
  search_bound_exceeded,
  symbol_mismatch,
  basis_mismatch,
  odd_ramification,
  place_inconsistent_with_splitting,
  not_totally_real,
  not_admissible,
  not_imaginary,
  not_representable,
  field_mismatch,
  not_totally_positive,
  precondition_violation,
  unsupported_desk_scale,
  internal_inconsistency,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

class invalid_input : public error {
 public:
  using error::error;
};

class internal_error : public error {
 public:
  using error::error;
};

}  // namespace shimura
