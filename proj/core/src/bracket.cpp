#include "npspace/bracket.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "npspace/errors.hpp"

namespace npspace {

namespace {

constexpr std::array<std::pair<BoundSource, std::string_view>, 8> kSourceNames{{
    {BoundSource::exact_svd, "exact_svd"},
    {BoundSource::optimizer, "optimizer"},
    {BoundSource::n_times_norm_bound, "n_times_norm_bound"},
    {BoundSource::smith_stabilization, "smith_stabilization"},
    {BoundSource::cb_cap, "cb_cap"},
    {BoundSource::monotonicity, "monotonicity"},
    {BoundSource::trivial_zero, "trivial_zero"},
    {BoundSource::coeff_relaxation, "coeff_relaxation"},
}};

}  // namespace

std::string_view to_string(BoundSource source) {
  for (const auto& [s, name] : kSourceNames) {
    if (s == source) return name;
  }
  return "unknown";
}

BoundSource bound_source_from_string(std::string_view name) {
  for (const auto& [s, n] : kSourceNames) {
    if (n == name) return s;
  }
  throw ParseError("unknown bound source '" + std::string(name) + "'");
}

NormBracket NormBracket::zero() {
  return {0.0, 0.0, BoundSource::trivial_zero, BoundSource::trivial_zero};
}

bool NormBracket::is_exact(double tol) const {
  return std::isfinite(hi) && hi - lo <= tol * std::max(1.0, hi);
}

bool NormBracket::is_tight(double rel_tol) const {
  if (!std::isfinite(hi)) return false;
  if (hi == 0.0) return lo == 0.0;
  return hi - lo <= rel_tol * hi;
}

bool NormBracket::contains(double v, double slack) const {
  return lo - slack <= v && v <= hi + slack;
}

bool NormBracket::raise_lo(double value, BoundSource source) {
  if (value > lo) {
    lo = value;
    lo_source = source;
    return true;
  }
  return false;
}

bool NormBracket::lower_hi(double value, BoundSource source) {
  if (value < hi) {
    hi = value;
    hi_source = source;
    return true;
  }
  return false;
}

void NormBracket::validate(double rel_tol) {
  if (std::isnan(lo) || std::isnan(hi) || lo < 0.0) {
    throw InvariantViolation("malformed bracket " + to_string());
  }
  if (lo > hi) {
    if (lo - hi <= rel_tol * std::max(1.0, hi)) {
      hi = lo;
    } else {
      throw InvariantViolation("lower bound exceeds certified upper bound: " + to_string());
    }
  }
}

NormBracket NormBracket::scaled(double factor) const {
  NormBracket out = *this;
  out.lo = lo * factor;
  out.hi = hi * factor;
  return out;
}

std::string NormBracket::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '[' << lo << " (" << npspace::to_string(lo_source) << "), " << hi << " ("
     << npspace::to_string(hi_source) << ")]";
  return os.str();
}

}  // namespace npspace
