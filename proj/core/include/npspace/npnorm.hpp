#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "npspace/interval.hpp"
#include "npspace/level_table.hpp"

namespace npspace {

/// Exponent p >= 1 of the N^p norm sum_n ||phi_n|| / n^p.
class NpParameter {
 public:
  /// Throws InvalidParameter unless 1 <= p < inf.
  explicit NpParameter(double p);
  double value() const { return p_; }

 private:
  double p_;
};

enum class Verdict { member, not_member, member_by_theory, unknown };
enum class ClosedForm { none, functional, stabilized, zero };

std::string_view to_string(Verdict v);
std::string_view to_string(ClosedForm c);

/// Enclosure of sum_{n > K} n^{-p}.
///
/// Uses the Euler-Maclaurin expansion at N = K + 1 truncated after the
/// f'(N) and f'''(N) terms; for the completely monotone n^{-p} the two
/// truncations bracket the tail. Returns [inf, inf] when p <= 1 (divergent).
Interval zeta_tail(double p, long truncation);

/// Enclosure of zeta(p) = sum_{n >= 1} n^{-p}: partial sum to K plus tail.
Interval zeta_enclosure(double p, long truncation = 64);

struct NpResult {
  double p = 1.0;
  Interval bracket;  // hi may be +inf
  Verdict verdict = Verdict::unknown;
  long truncation = 0;  // K
  /// Effective tail: bracket minus the partial sums over levels 1..K.
  double tail_lo = 0.0;
  double tail_hi = 0.0;
  Interval partial;
  ClosedForm closed_form = ClosedForm::none;
  std::optional<std::string> divergence_proof;
};

/// max(64, 4 * stabilization level).
long default_truncation(const LevelNormTable& table);

/// Certified enclosure of ||phi||_p from a level table.
/// Throws InsufficientTable when the table neither covers 1..K nor stabilizes.
NpResult np_norm(const LevelNormTable& table, NpParameter p, std::optional<long> truncation = {});

struct MembershipDecision {
  Verdict verdict = Verdict::unknown;
  std::string reason;
};

/// Decision chain: p > 2 (bounded maps), completely bounded with p > 1,
/// growth certificate, divergence at p = 1.
MembershipDecision membership(const LevelNormTable& table, NpParameter p);

/// hi(n) <= n^{p - 1 - eps} for every n: on the table, and past it through
/// the uniform cap or n * hi(1).
bool growth_certificate(const LevelNormTable& table, double p, double eps);

struct IndexEstimate {
  double r_hat = 1.0;
  double alpha_hat = 0.0;
  int fit_first = 0;  // first level in the fit window
  int fit_last = 0;
  double residual = 0.0;  // RMS of the log-log fit
  bool stabilized = false;
};

/// Log-log least squares on (n, value) pairs; default window is the upper
/// half of the levels (at least three). Throws InsufficientData.
IndexEstimate index_estimate(std::span<const std::pair<int, double>> sequence,
                             std::optional<std::pair<int, int>> window = {});

/// Stabilized tables give alpha = 0, r = 1; otherwise fits the tight levels.
IndexEstimate index_estimate(const LevelNormTable& table);

struct InclusionReport {
  NpResult at_p;
  NpResult at_q;
  double slack = 1e-9;
  bool bracket_ok = false;
  /// Set when both brackets are tight enough to compare midpoints.
  std::optional<bool> value_ok;
  bool passed() const { return bracket_ok && value_ok.value_or(true); }
};

/// Checks ||phi||_q <= ||phi||_p for 1 <= p <= q on certified brackets.
InclusionReport inclusion_check(const LevelNormTable& table, double p, double q,
                                std::optional<long> truncation = {}, double slack = 1e-9);

}  // namespace npspace
