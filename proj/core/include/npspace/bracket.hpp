#pragma once

#include <string>
#include <string_view>

#include "npspace/interval.hpp"
#include "npspace/types.hpp"

namespace npspace {

/// Where a bound in a NormBracket came from.
enum class BoundSource {
  exact_svd,           // spectral norm of an explicit matrix (witness or phi(I))
  optimizer,           // alternating ascent witness
  n_times_norm_bound,  // ||phi_n|| <= n ||phi||
  smith_stabilization, // ||phi_n|| = ||phi_m|| for n >= m, codomain inside M_m
  cb_cap,              // Haagerup factorization bound on ||phi||_cb
  monotonicity,        // ||phi_1|| <= ||phi_2|| <= ...
  trivial_zero,        // phi == 0
  coeff_relaxation,    // Frobenius-norm relaxation of the coefficient matrix
};

std::string_view to_string(BoundSource source);
BoundSource bound_source_from_string(std::string_view name);

/// Certified enclosure [lo, hi] of a nonnegative norm value.
struct NormBracket {
  double lo = 0.0;
  double hi = kInf;
  BoundSource lo_source = BoundSource::trivial_zero;
  BoundSource hi_source = BoundSource::trivial_zero;

  static NormBracket zero();

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  /// hi - lo <= tol * max(1, hi).
  bool is_exact(double tol = 1e-9) const;
  /// hi - lo <= tol * hi (or both zero).
  bool is_tight(double rel_tol) const;
  bool contains(double v, double slack = 0.0) const;
  Interval interval() const { return {lo, hi}; }

  /// Raise lo to `value` if larger.
  bool raise_lo(double value, BoundSource source);
  /// Lower hi to `value` if smaller.
  bool lower_hi(double value, BoundSource source);

  /// Checks 0 <= lo <= hi. A crossing within `rel_tol` of hi (floating-point
  /// noise between an exact witness and an analytic bound) is repaired by
  /// setting hi = lo; anything larger throws InvariantViolation.
  void validate(double rel_tol = 1e-10);

  NormBracket scaled(double factor) const;

  std::string to_string() const;
};

}  // namespace npspace
