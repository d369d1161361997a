#include "npspace/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "npspace/errors.hpp"
#include "npspace/npnorm.hpp"

namespace npspace {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::theory: return "theory";
    case Provenance::oracle: return "oracle";
    case Provenance::trivial: return "trivial";
  }
  return "trivial";
}

SpacePtr scalar_space() { return make_space(1, {Matrix::Identity(1, 1)}, "C"); }

SpacePtr diagonal_space(int d) {
  std::vector<Matrix> basis;
  for (int i = 0; i < d; ++i) basis.push_back(matrix_unit(d, i, i));
  return make_space(d, std::move(basis), "D" + std::to_string(d));
}

MapPtr zero_map(int d) {
  const SpacePtr m = full_matrix_space(d);
  return make_map_from_coeff(m, m, Matrix::Zero(d * d, d * d), "zero_M" + std::to_string(d));
}

MapPtr identity_map(int d) {
  const SpacePtr m = full_matrix_space(d);
  return make_map_from_coeff(m, m, Matrix::Identity(d * d, d * d), "identity_M" + std::to_string(d));
}

MapPtr transpose_map(int d) {
  const SpacePtr m = full_matrix_space(d);
  std::vector<Matrix> images;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) images.push_back(matrix_unit(d, j, i));
  }
  return make_map_from_images(m, m, images, "transpose_M" + std::to_string(d));
}

MapPtr trace_functional(int d) {
  const SpacePtr m = full_matrix_space(d);
  Matrix coeff = Matrix::Zero(1, d * d);
  for (int i = 0; i < d; ++i) coeff(0, i * d + i) = 1.0;
  return make_map_from_coeff(m, scalar_space(), std::move(coeff), "trace_M" + std::to_string(d));
}

MapPtr rank_one_functional(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("rank-one functional needs equal-length vectors");
  const int d = static_cast<int>(a.size());
  const SpacePtr m = full_matrix_space(d);
  Matrix coeff(1, d * d);
  // <a, E_ij b> = conj(a_i) b_j
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) coeff(0, i * d + j) = std::conj(a(i)) * b(j);
  }
  return make_map_from_coeff(m, scalar_space(), std::move(coeff), "rank_one_M" + std::to_string(d));
}

MapPtr schur_multiplier(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("Schur multiplier symbol must be square");
  const int d = static_cast<int>(a.rows());
  const SpacePtr m = full_matrix_space(d);
  Matrix coeff = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) coeff(i * d + j, i * d + j) = a(i, j);
  }
  return make_map_from_coeff(m, m, std::move(coeff), "schur_M" + std::to_string(d));
}

MapPtr diagonal_restriction(int d) {
  const SpacePtr m = full_matrix_space(d);
  Matrix coeff = Matrix::Zero(d, d * d);
  for (int i = 0; i < d; ++i) coeff(i, i * d + i) = 1.0;
  return make_map_from_coeff(m, diagonal_space(d), std::move(coeff), "diag_restriction_M" + std::to_string(d));
}

SpacePtr random_subspace(int d, int k, std::uint64_t seed, std::string label) {
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k)}));
  std::vector<Matrix> basis;
  for (int t = 0; t < k; ++t) basis.push_back(random_gaussian(rng, d, d));
  if (label.empty()) label = "random_" + std::to_string(k) + "d_in_M" + std::to_string(d);
  return make_space(d, std::move(basis), std::move(label));
}

MapPtr random_map(int d, std::uint64_t seed, std::string label) {
  const SpacePtr m = full_matrix_space(d);
  Rng rng(derive_seed(seed, {0x6d6170, static_cast<std::uint64_t>(d)}));
  Matrix coeff = random_gaussian(rng, d * d, d * d);
  coeff /= spectral_norm(coeff);
  if (label.empty()) label = "random_map_M" + std::to_string(d) + "_" + std::to_string(seed);
  return make_map_from_coeff(m, m, std::move(coeff), std::move(label));
}

namespace {

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  auto constant = [](double v) { return [v](int) { return v; }; };

  out.push_back({"zero_M2", "zero map on M2", zero_map(2), constant(0.0), 1, Provenance::trivial});
  out.push_back({"identity_M2", "identity on M2 (complete isometry)", identity_map(2), constant(1.0), 1,
                 Provenance::trivial});
  out.push_back({"identity_M3", "identity on M3 (complete isometry)", identity_map(3), constant(1.0), 1,
                 Provenance::trivial});
  out.push_back({"transpose_M2", "transpose on M2", transpose_map(2),
                 [](int n) { return static_cast<double>(std::min(n, 2)); }, 2, Provenance::oracle});
  out.push_back({"transpose_M3", "transpose on M3", transpose_map(3),
                 [](int n) { return static_cast<double>(std::min(n, 3)); }, 3, Provenance::oracle});
  out.push_back({"trace_M2", "trace functional M2 -> C", trace_functional(2), constant(2.0), 1,
                 Provenance::theory});

  Vector a(2);
  a << cdouble(1.0, 0.0), cdouble(0.0, 1.0);
  Vector b(2);
  b << cdouble(1.0, 0.0), cdouble(2.0, 0.0);
  out.push_back({"rank_one_M2", "X -> <a, X b> with a = (1, i), b = (1, 2)", rank_one_functional(a, b),
                 constant(std::sqrt(10.0)), 1, Provenance::theory});

  Matrix symbol(2, 2);
  symbol << 1.0, 1.0, 1.0, -1.0;
  out.push_back({"schur_M2", "Schur multiplier X -> [[1,1],[1,-1]] o X", schur_multiplier(symbol),
                 constant(std::sqrt(2.0)), 1, Provenance::oracle});
  out.push_back({"diag_restriction_M2", "X -> diag(X), M2 -> span{E11, E22}", diagonal_restriction(2),
                 constant(1.0), 1, Provenance::trivial});
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& list_entries() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& find_entry(std::string_view name) {
  for (const auto& e : list_entries()) {
    if (e.name == name) return e;
  }
  throw ParseError("unknown catalog entry '" + std::string(name) + "'");
}

Interval expected_np_bracket(const CatalogEntry& entry, double p, long truncation) {
  if (!entry.has_closed_form()) throw NoClosedForm("catalog entry '" + entry.name + "' has no closed form");
  if (truncation < entry.constant_from) {
    throw InvalidParameter("truncation must reach the level where the closed form is constant");
  }
  const auto value = [&](long n) {
    const double v = entry.expected_level_norms(static_cast<int>(n));
    return v == 0.0 ? Interval::point(0.0) : Interval::around(v, 2);
  };
  Interval sum = Interval::point(0.0);
  for (long n = 1; n <= truncation; ++n) sum += value(n) * inverse_power(n, p);
  const Interval tail_value = value(truncation + 1);
  if (tail_value.hi == 0.0) return sum;
  if (!(p > 1.0)) return {sum.lo, kInf};
  return sum + tail_value * zeta_tail(p, truncation);
}

}  // namespace npspace
