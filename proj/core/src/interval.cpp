#include "npspace/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "npspace/errors.hpp"

namespace npspace {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double mul_or_zero(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

}  // namespace

double round_down(double v) {
  if (std::isinf(v) || v == 0.0) return v;
  return std::nextafter(v, -kInfinity);
}

double round_up(double v) {
  if (std::isinf(v) || v == 0.0) return v;
  return std::nextafter(v, kInfinity);
}

Interval Interval::around(double v, int ulps) {
  Interval out{v, v};
  for (int i = 0; i < ulps; ++i) {
    out.lo = std::nextafter(out.lo, -kInfinity);
    out.hi = std::nextafter(out.hi, kInfinity);
  }
  return out;
}

Interval Interval::entire() { return {-kInfinity, kInfinity}; }

bool Interval::is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }

Interval& Interval::operator+=(const Interval& rhs) {
  // Exact zero sums stay exact so that the zero map keeps a [0, 0] bracket.
  const double l = lo + rhs.lo;
  const double h = hi + rhs.hi;
  lo = (rhs.lo == 0.0 || lo == 0.0) ? l : round_down(l);
  hi = (rhs.hi == 0.0 || hi == 0.0) ? h : round_up(h);
  return *this;
}

Interval& Interval::operator*=(const Interval& rhs) {
  const double c[4] = {mul_or_zero(lo, rhs.lo), mul_or_zero(lo, rhs.hi),
                       mul_or_zero(hi, rhs.lo), mul_or_zero(hi, rhs.hi)};
  const double l = *std::min_element(c, c + 4);
  const double h = *std::max_element(c, c + 4);
  lo = l == 0.0 ? 0.0 : round_down(l);
  hi = h == 0.0 ? 0.0 : round_up(h);
  return *this;
}

Interval operator+(Interval a, const Interval& b) { return a += b; }

Interval operator-(const Interval& a, const Interval& b) {
  return a + Interval{-b.hi, -b.lo};
}

Interval operator*(Interval a, const Interval& b) { return a *= b; }

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) return Interval::entire();
  Interval recip{round_down(1.0 / b.hi), round_up(1.0 / b.lo)};
  return a * recip;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (!a.intersects(b)) {
    throw InvariantViolation("disjoint enclosures " + a.to_string() + " and " + b.to_string());
  }
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval inverse_power(long n, double p) {
  if (n == 1) return Interval::point(1.0);
  // std::pow is accurate to within a couple of ulps on glibc; widen by four.
  return Interval::around(std::pow(static_cast<double>(n), -p), 4);
}

std::string Interval::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '[' << lo << ", " << hi << ']';
  return os.str();
}

}  // namespace npspace
