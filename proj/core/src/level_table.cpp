#include "npspace/level_table.hpp"

#include <algorithm>
#include <cmath>

#include "npspace/errors.hpp"

namespace npspace {

NormBracket LevelNormTable::bracket(int n) const {
  if (n < 1) throw InvalidLevel("level must be >= 1");
  if (n <= max_level()) return entries[n - 1].bracket;
  if (stabilized()) return stable_bracket();
  throw InsufficientTable("level " + std::to_string(n) + " is beyond the table (max level " +
                          std::to_string(max_level()) + ") and no stabilization is known");
}

NormBracket LevelNormTable::stable_bracket() const {
  if (!stabilized()) throw InsufficientTable("table does not reach its stabilization level");
  return entries[*smith_level - 1].bracket;
}

bool LevelNormTable::is_zero() const {
  if (uniform_hi && *uniform_hi == 0.0) return true;
  if (!stabilized()) return false;
  return std::all_of(entries.begin(), entries.end(),
                     [](const LevelEstimate& e) { return e.bracket.hi == 0.0; });
}

bool LevelNormTable::has_positive_lower_bound() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const LevelEstimate& e) { return e.bracket.lo > 0.0; });
}

void propagate_bounds(LevelNormTable& table) {
  const int n_levels = table.max_level();
  if (n_levels == 0) return;
  auto& e = table.entries;

  for (int pass = 0; pass < 16; ++pass) {
    bool changed = false;

    if (table.uniform_hi) {
      for (auto& entry : e) changed |= entry.bracket.lower_hi(*table.uniform_hi, BoundSource::cb_cap);
    }

    const double hi1 = e[0].bracket.hi;
    for (int n = 2; n <= n_levels; ++n) {
      changed |= e[n - 1].bracket.lower_hi(round_up(n * hi1), BoundSource::n_times_norm_bound);
    }

    if (table.stabilized()) {
      const int m = *table.smith_level;
      double lo = 0.0;
      double hi = kInf;
      for (int n = m; n <= n_levels; ++n) {
        lo = std::max(lo, e[n - 1].bracket.lo);
        hi = std::min(hi, e[n - 1].bracket.hi);
      }
      for (int n = m; n <= n_levels; ++n) {
        changed |= e[n - 1].bracket.raise_lo(lo, BoundSource::smith_stabilization);
        changed |= e[n - 1].bracket.lower_hi(hi, BoundSource::smith_stabilization);
      }
    }

    for (int n = 2; n <= n_levels; ++n) {
      changed |= e[n - 1].bracket.raise_lo(e[n - 2].bracket.lo, BoundSource::monotonicity);
    }
    for (int n = n_levels - 1; n >= 1; --n) {
      changed |= e[n - 1].bracket.lower_hi(e[n].bracket.hi, BoundSource::monotonicity);
    }
    if (!changed) break;
  }

  for (auto& entry : e) entry.bracket.validate();

  table.stabilization_level.reset();
  if (table.stabilized()) {
    const NormBracket stable = table.stable_bracket();
    int s = *table.smith_level;
    for (int n = 1; n <= *table.smith_level; ++n) {
      const NormBracket& b = e[n - 1].bracket;
      const double scale = std::max(1.0, stable.hi);
      if (std::abs(b.lo - stable.lo) <= 1e-9 * scale && std::abs(b.hi - stable.hi) <= 1e-9 * scale &&
          stable.is_exact()) {
        s = n;
        break;
      }
    }
    table.stabilization_level = s;
  }
}

LevelNormTable build_level_table(const MapPtr& phi, int max_level, const OptBudget& budget) {
  if (!phi) throw SpaceMismatch("build_level_table needs a map");
  if (max_level < 1) throw InvalidLevel("max_level must be >= 1");
  LevelNormTable table;
  table.map = phi;
  table.label = phi->label();
  table.full_codomain = phi->codomain()->is_full();
  table.smith_level = phi->codomain()->ambient_dim();
  table.uniform_hi = phi->certificates().cb_cap;
  if (phi->is_zero()) {
    table.smith_level = 1;
    table.uniform_hi = 0.0;
  }
  table.entries.reserve(static_cast<std::size_t>(max_level));
  for (int n = 1; n <= max_level; ++n) table.entries.push_back(level_norm_bracket(*phi, n, budget));
  propagate_bounds(table);
  return table;
}

}  // namespace npspace
