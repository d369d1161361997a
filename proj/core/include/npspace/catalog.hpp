#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "npspace/interval.hpp"
#include "npspace/linmap.hpp"

namespace npspace {

enum class Provenance { theory, oracle, trivial };

std::string_view to_string(Provenance p);

/// A built-in map with a known level-norm sequence.
struct CatalogEntry {
  std::string name;
  std::string description;
  MapPtr map;
  /// n -> ||phi_n||, when known in closed form.
  std::function<double(int)> expected_level_norms;
  /// The closed-form sequence is constant from this level on.
  int constant_from = 1;
  Provenance provenance = Provenance::trivial;

  bool has_closed_form() const { return static_cast<bool>(expected_level_norms); }
};

/// Registry of built-in maps; built once, read-only afterwards.
const std::vector<CatalogEntry>& list_entries();

/// Throws ParseError for an unknown name.
const CatalogEntry& find_entry(std::string_view name);

/// Enclosure of sum_n rule(n) / n^p: termwise to K, then the constant tail
/// times zeta_tail(p, K). Throws NoClosedForm when the entry has no rule.
Interval expected_np_bracket(const CatalogEntry& entry, double p, long truncation);

// Building blocks, also used by tests and the CLI.

/// C = M_1 as an operator space.
SpacePtr scalar_space();
/// span{E_11, ..., E_dd} inside M_d.
SpacePtr diagonal_space(int d);
MapPtr zero_map(int d);
MapPtr identity_map(int d);
MapPtr transpose_map(int d);
/// X -> tr(X) into C.
MapPtr trace_functional(int d);
/// X -> <a, X b> = a^* X b into C.
MapPtr rank_one_functional(const Vector& a, const Vector& b);
/// X -> A o X (entrywise product).
MapPtr schur_multiplier(const Matrix& a);
/// X -> diag(X) from M_d onto the diagonal subspace.
MapPtr diagonal_restriction(int d);

/// A random k-dimensional subspace of M_d with Gaussian basis.
SpacePtr random_subspace(int d, int k, std::uint64_t seed, std::string label = {});
/// A map M_d -> M_d with Gaussian coefficients, scaled so the coefficient
/// matrix has spectral norm 1.
MapPtr random_map(int d, std::uint64_t seed, std::string label = {});

}  // namespace npspace
