#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npspace/bracket.hpp"
#include "npspace/linmap.hpp"

namespace npspace {

/// Brackets for ||phi_1||, ..., ||phi_N|| after bound propagation.
///
/// Past the computed range the table still answers bracket(n) when the
/// sequence is known to be constant from smith_level on (codomain inside
/// M_m, so ||phi_n|| = ||phi_m|| for n >= m).
struct LevelNormTable {
  MapPtr map;  // null for hand-built tables
  std::string label;
  std::vector<LevelEstimate> entries;  // entries[n - 1] is level n
  /// m such that ||phi_n|| = ||phi_m|| for every n >= m.
  std::optional<int> smith_level;
  /// Smallest level whose bracket already agrees with the stable one.
  std::optional<int> stabilization_level;
  /// sup_n ||phi_n|| <= uniform_hi.
  std::optional<double> uniform_hi;
  bool full_codomain = false;

  int max_level() const { return static_cast<int>(entries.size()); }
  /// True when levels from smith_level on are all covered by the table.
  bool stabilized() const { return smith_level.has_value() && *smith_level <= max_level(); }
  /// Bracket for ||phi_n||; past max_level only when stabilized().
  /// Throws InsufficientTable otherwise and InvalidLevel for n < 1.
  NormBracket bracket(int n) const;
  /// The common bracket of every level >= smith_level (requires stabilized()).
  NormBracket stable_bracket() const;
  /// True when the table certifies phi = 0 (every bound is exactly zero).
  bool is_zero() const;
  /// Some level has a strictly positive lower bound.
  bool has_positive_lower_bound() const;
};

/// Computes brackets for levels 1..max_level and propagates them:
/// monotonicity, ||phi_n|| <= n ||phi||, and stabilization from the ambient
/// size of the codomain.
LevelNormTable build_level_table(const MapPtr& phi, int max_level, const OptBudget& budget = {});

/// Re-applies every propagation rule until nothing changes, then validates
/// 0 <= lo <= hi and recomputes stabilization_level.
void propagate_bounds(LevelNormTable& table);

}  // namespace npspace
