#include "npspace/npnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "npspace/errors.hpp"

namespace npspace {

NpParameter::NpParameter(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "N^p exponent must satisfy 1 <= p < inf, got " << p;
    throw InvalidParameter(os.str());
  }
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::member: return "member";
    case Verdict::not_member: return "not_member";
    case Verdict::member_by_theory: return "member_by_theory";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(ClosedForm c) {
  switch (c) {
    case ClosedForm::none: return "none";
    case ClosedForm::functional: return "functional";
    case ClosedForm::stabilized: return "stabilized";
    case ClosedForm::zero: return "zero";
  }
  return "none";
}

Interval zeta_tail(double p, long truncation) {
  if (truncation < 0) throw InvalidParameter("truncation level must be >= 0");
  if (!(p > 1.0)) return {kInf, kInf};
  const double n = static_cast<double>(truncation) + 1.0;
  const Interval big_n = Interval::point(n);
  const Interval f = Interval::around(std::pow(n, -p));  // N^{-p}
  const Interval pp = Interval::point(p);
  const Interval p_minus_1 = pp - Interval::point(1.0);

  const Interval integral = big_n * f / p_minus_1;              // N^{1-p} / (p - 1)
  const Interval half_f = f * Interval::point(0.5);               // f(N) / 2
  const Interval first = pp * f / big_n / Interval::point(12.0);  // -f'(N) / 12
  const Interval second = pp * (pp + Interval::point(1.0)) * (pp + Interval::point(2.0)) * f /
                          (big_n * big_n * big_n) / Interval::point(720.0);  // -f'''(N) / 720

  const Interval upper = integral + half_f + first;
  const Interval lower = upper - second;
  return {std::max(0.0, lower.lo), upper.hi};
}

Interval zeta_enclosure(double p, long truncation) {
  Interval sum = Interval::point(0.0);
  for (long n = truncation; n >= 1; --n) sum += inverse_power(n, p);
  return sum + zeta_tail(p, truncation);
}

long default_truncation(const LevelNormTable& table) {
  const int s = table.stabilization_level.value_or(table.smith_level.value_or(table.max_level()));
  return std::max<long>(64, 4L * s);
}

NpResult np_norm(const LevelNormTable& table, NpParameter param, std::optional<long> truncation) {
  const double p = param.value();
  NpResult r;
  r.p = p;
  r.truncation = truncation.value_or(default_truncation(table));
  if (r.truncation < 1) throw InvalidParameter("truncation level must be >= 1");
  const long k_max = r.truncation;
  if (table.max_level() == 0) throw InsufficientTable("empty level table");

  if (table.is_zero()) {
    r.bracket = {0.0, 0.0};
    r.partial = {0.0, 0.0};
    r.verdict = Verdict::member;
    r.closed_form = ClosedForm::zero;
    return r;
  }

  const bool stable = table.stabilized();

  if (p == 1.0) {
    const long covered = stable ? k_max : std::min<long>(k_max, table.max_level());
    Interval partial_lo = Interval::point(0.0);
    std::optional<std::pair<int, double>> positive;
    for (long n = 1; n <= covered; ++n) {
      const NormBracket b = table.bracket(static_cast<int>(n));
      partial_lo += Interval::point(b.lo) * inverse_power(n, 1.0);
      if (!positive && b.lo > 0.0) positive = {static_cast<int>(n), b.lo};
    }
    r.partial = {partial_lo.lo, kInf};
    r.bracket = {partial_lo.lo, kInf};
    r.tail_lo = 0.0;
    r.tail_hi = kInf;
    if (positive) {
      std::ostringstream proof;
      proof.precision(17);
      proof << "||phi_n|| >= ||phi_" << positive->first << "|| >= " << positive->second
            << " > 0 for all n >= " << positive->first
            << " (monotonicity), and the harmonic series sum 1/n diverges";
      r.verdict = Verdict::not_member;
      r.divergence_proof = proof.str();
    } else {
      r.verdict = Verdict::unknown;
    }
    return r;
  }

  if (!stable && k_max > table.max_level()) {
    throw InsufficientTable("truncation K = " + std::to_string(k_max) + " exceeds table max level " +
                            std::to_string(table.max_level()) + " and the table is not stabilized");
  }

  double cap = table.uniform_hi.value_or(kInf);
  if (stable) cap = std::min(cap, table.stable_bracket().hi);
  const double hi1 = table.bracket(1).hi;

  Interval partial_lo = Interval::point(0.0);
  Interval partial_hi = Interval::point(0.0);
  Interval running{0.0, kInf};
  for (long k = 1; k <= k_max; ++k) {
    const NormBracket b = table.bracket(static_cast<int>(k));
    const Interval w = inverse_power(k, p);
    partial_lo += Interval::point(b.lo) * w;
    partial_hi += Interval::point(b.hi) * w;

    const Interval tail = zeta_tail(p, k);
    // lo(n) >= lo(k) for n > k after monotonicity propagation.
    const double tail_lo = (Interval::point(b.lo) * tail).lo;
    double tail_hi = kInf;
    if (std::isfinite(cap)) tail_hi = (Interval::point(cap) * tail).hi;
    if (p > 2.0 && std::isfinite(hi1)) {
      // ||phi_n|| <= n ||phi||, so the tail is at most hi(1) * sum n^{1-p}.
      tail_hi = std::min(tail_hi, (Interval::point(hi1) * zeta_tail(p - 1.0, k)).hi);
    }
    const Interval enclosure{(partial_lo + Interval::point(tail_lo)).lo,
                             (partial_hi + Interval::point(tail_hi)).hi};
    running = intersect(running, enclosure);
  }

  r.partial = {partial_lo.lo, partial_hi.hi};
  r.bracket = running;
  r.tail_lo = std::max(0.0, round_down(running.lo - partial_lo.lo));
  r.tail_hi = std::isfinite(running.hi) ? std::max(0.0, round_up(running.hi - partial_hi.hi)) : kInf;
  r.verdict = membership(table, param).verdict;
  if (r.verdict == Verdict::unknown && std::isfinite(running.hi)) r.verdict = Verdict::member;

  if (stable) {
    const bool functional = table.map && table.map->codomain()->ambient_dim() == 1;
    if (functional) {
      r.closed_form = ClosedForm::functional;
    } else if (table.stable_bracket().is_exact()) {
      r.closed_form = ClosedForm::stabilized;
    }
  }
  return r;
}

bool growth_certificate(const LevelNormTable& table, double p, double eps) {
  if (!(eps > 0.0) || table.max_level() == 0) return false;
  const double exponent = p - 1.0 - eps;
  for (int n = 1; n <= table.max_level(); ++n) {
    if (!(table.bracket(n).hi <= std::pow(static_cast<double>(n), exponent))) return false;
  }
  const double next = static_cast<double>(table.max_level()) + 1.0;
  // Beyond the table: a uniform cap works when n^exponent is nondecreasing,
  // n * hi(1) when n^(exponent - 1) is.
  double cap = table.uniform_hi.value_or(kInf);
  if (table.stabilized()) cap = std::min(cap, table.stable_bracket().hi);
  if (exponent >= 0.0 && cap <= std::pow(next, exponent)) return true;
  if (exponent - 1.0 >= 0.0 && table.bracket(1).hi <= std::pow(next, exponent - 1.0)) return true;
  return false;
}

MembershipDecision membership(const LevelNormTable& table, NpParameter param) {
  const double p = param.value();
  if (table.max_level() == 0) return {Verdict::unknown, "empty table"};
  if (table.is_zero()) return {Verdict::member, "phi = 0 has ||phi||_p = 0 for every p"};
  if (p > 2.0 && std::isfinite(table.bracket(1).hi)) {
    return {Verdict::member_by_theory, "bounded map and p > 2: ||phi_n|| / n^p <= ||phi|| / n^(p-1)"};
  }
  if (p > 1.0 && table.stabilized()) {
    return {Verdict::member, "level norms stabilize (completely bounded) and p > 1"};
  }
  if (p > 1.0 && table.uniform_hi && std::isfinite(*table.uniform_hi)) {
    return {Verdict::member, "certified cb bound (completely bounded) and p > 1"};
  }
  if (p > 1.0) {
    const double eps = std::min(1e-3, 0.5 * (p - 1.0));
    if (growth_certificate(table, p, eps)) {
      return {Verdict::member, "growth certificate ||phi_n|| <= n^(p-1-eps)"};
    }
  }
  if (p == 1.0 && table.has_positive_lower_bound()) {
    return {Verdict::not_member, "nonzero map: ||phi_n|| >= ||phi_1|| > 0 and sum 1/n diverges"};
  }
  return {Verdict::unknown, "no certificate available"};
}

IndexEstimate index_estimate(std::span<const std::pair<int, double>> sequence,
                             std::optional<std::pair<int, int>> window) {
  std::vector<std::pair<int, double>> points(sequence.begin(), sequence.end());
  std::sort(points.begin(), points.end());
  if (points.size() < 3) throw InsufficientData("index estimate needs at least three levels");
  for (const auto& [n, value] : points) {
    if (n < 1 || !(value > 0.0) || !std::isfinite(value)) {
      throw InsufficientData("index estimate needs positive finite values at levels >= 1");
    }
  }

  int first = 0;
  int last = 0;
  if (window) {
    std::tie(first, last) = *window;
  } else {
    const std::size_t count = std::max<std::size_t>(3, (points.size() + 1) / 2);
    first = points[points.size() - count].first;
    last = points.back().first;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [n, value] : points) {
    if (n >= first && n <= last) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(value));
    }
  }
  if (xs.size() < 3) throw InsufficientData("fit window holds fewer than three levels");

  const double count = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / count;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("fit window has a single distinct level");

  IndexEstimate est;
  est.alpha_hat = sxy / sxx;
  const double intercept = my - est.alpha_hat * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + est.alpha_hat * xs[i]);
    sse += r * r;
  }
  est.residual = std::sqrt(sse / count);
  est.r_hat = std::max(1.0, est.alpha_hat + 1.0);
  est.fit_first = first;
  est.fit_last = last;
  return est;
}

IndexEstimate index_estimate(const LevelNormTable& table) {
  if (table.is_zero() || table.stabilized()) {
    IndexEstimate est;
    est.stabilized = true;
    est.fit_first = table.stabilization_level.value_or(table.smith_level.value_or(1));
    est.fit_last = std::max(est.fit_first, table.max_level());
    return est;
  }
  std::vector<std::pair<int, double>> points;
  for (int n = 1; n <= table.max_level(); ++n) {
    const NormBracket b = table.bracket(n);
    if (b.is_tight(1e-3) && b.mid() > 0.0) points.emplace_back(n, b.mid());
  }
  if (points.size() < 3) {
    throw InsufficientData("index estimate needs at least three levels with tight brackets");
  }
  return index_estimate(points);
}

InclusionReport inclusion_check(const LevelNormTable& table, double p, double q,
                                std::optional<long> truncation, double slack) {
  if (!(p >= 1.0) || !(q >= p)) throw InvalidParameter("inclusion check needs 1 <= p <= q");
  InclusionReport report;
  report.slack = slack;
  report.at_p = np_norm(table, NpParameter(p), truncation);
  report.at_q = np_norm(table, NpParameter(q), truncation);
  report.bracket_ok = report.at_q.bracket.lo <= report.at_p.bracket.hi + slack;
  const auto tight = [](const Interval& b) {
    return std::isfinite(b.hi) && b.hi - b.lo <= 1e-6 * std::max(1.0, b.hi);
  };
  if (tight(report.at_p.bracket) && tight(report.at_q.bracket)) {
    report.value_ok = report.at_q.bracket.mid() <= report.at_p.bracket.mid() + slack;
  }
  return report;
}

}  // namespace npspace
