#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "npspace/level_table.hpp"
#include "npspace/linmap.hpp"

namespace npspace {

struct BruteResult {
  double value = 0.0;
  std::optional<SpaceElement> witness;
};

/// Sampling lower bound for ||phi_n||: random unit elements of M_n(V), then
/// hill climbing by random perturbation from the best few samples. On a full
/// matrix domain the samples and moves stay on the unitaries of M_{nd}.
/// `start`, when given, joins the climbers (e.g. a padded lower-level witness).
/// Uses only amplify and level_norm, never the optimizer.
BruteResult brute_level_norm(const LinearMapRep& phi, int level, int trials, std::uint64_t seed,
                             int climb_steps = 1000, double step_decay = 0.95,
                             const SpaceElement* start = nullptr);

struct CrossLevel {
  int level = 1;
  double brute_lo = 0.0;
  double table_lo = 0.0;
  double table_hi = 0.0;
  std::optional<SpaceElement> witness;
  bool upper_ok = false;  // brute <= table hi + 1e-9
  bool lower_ok = false;  // table lo >= brute - 5e-3 relative
};

struct CrossReport {
  std::string label;
  std::vector<CrossLevel> levels;
  bool passed() const;
};

/// Compares a table with oracle lower bounds for levels <= max_level; each
/// level also climbs from the padded witness of the level below.
CrossReport cross_validate(const LevelNormTable& table, int trials, std::uint64_t seed, int max_level = 4);

}  // namespace npspace
