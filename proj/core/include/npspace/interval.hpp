#pragma once

#include <string>

namespace npspace {

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
///
/// Every operation widens its result by one ulp on each side, so a chain of
/// additions and multiplications over exact inputs encloses the exact real
/// result. Endpoints may be infinite; 0 * inf is taken as 0, matching the use
/// of intervals as enclosures of nonnegative series terms.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  /// Encloses a value known only to a few ulps, e.g. the result of std::pow.
  static Interval around(double v, int ulps = 4);
  static Interval entire();

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  bool intersects(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }
  bool is_finite() const;

  Interval& operator+=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);

  std::string to_string() const;
};

Interval operator+(Interval a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(Interval a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

/// Intersection; throws InvariantViolation when the operands are disjoint.
Interval intersect(const Interval& a, const Interval& b);

double round_down(double v);
double round_up(double v);

/// Enclosure of n^{-p} for integer n >= 1.
Interval inverse_power(long n, double p);

}  // namespace npspace
