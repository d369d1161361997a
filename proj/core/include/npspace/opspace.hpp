#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "npspace/random.hpp"
#include "npspace/types.hpp"

namespace npspace {

/// A concrete operator space V inside M_d, presented by an ordered basis.
///
/// Matrix levels M_n(V) carry the norm inherited from M_n(M_d) = M_{nd}. The
/// object is immutable; share it through SpacePtr.
class OperatorSpace {
 public:
  /// Relative cutoff on the singular values of the basis Gram matrix.
  static constexpr double kIndependenceTol = 1e-10;

  int ambient_dim() const { return ambient_dim_; }
  /// Number of basis elements k.
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const std::string& label() const { return label_; }
  /// True when V is all of M_d.
  bool is_full() const { return dim() == ambient_dim_ * ambient_dim_; }

  /// Sum_t coords[t] * basis[t].
  Matrix realize(const Vector& coords) const;
  /// Coordinates of the Frobenius-orthogonal projection of m onto V.
  Vector coordinates(const Matrix& m) const;
  /// Frobenius-orthogonal projection of m onto V.
  Matrix project(const Matrix& m) const;
  /// ||m - project(m)||_F.
  double distance(const Matrix& m) const;
  /// Solves Gram * a = h, i.e. converts a coordinate gradient into the
  /// coordinates of the element of V that represents it in the Frobenius
  /// inner product.
  Vector solve_gram(const Vector& h) const;
  const Matrix& gram() const { return gram_; }
  /// Largest and smallest singular values of the Gram matrix.
  double gram_sigma_max() const { return gram_sigma_max_; }
  double gram_sigma_min() const { return gram_sigma_min_; }
  /// Coordinates of the identity of M_d when it lies in V.
  const std::optional<Vector>& identity_coordinates() const { return identity_coords_; }

 private:
  friend std::shared_ptr<const OperatorSpace> make_space(int, std::vector<Matrix>, std::string);
  OperatorSpace() = default;

  int ambient_dim_ = 0;
  std::vector<Matrix> basis_;
  std::string label_;
  Matrix vec_basis_;  // d^2 x k, column t = vec(basis[t])
  Matrix q_;          // thin Q of vec_basis_
  Matrix r_;          // k x k upper triangular
  Matrix gram_;
  double gram_sigma_max_ = 0.0;
  double gram_sigma_min_ = 0.0;
  std::optional<Vector> identity_coords_;
};

using SpacePtr = std::shared_ptr<const OperatorSpace>;

/// Validates and builds an operator space.
/// Throws DimensionMismatch for non d x d matrices (or an empty list) and
/// DependentBasis when the basis is rank deficient.
SpacePtr make_space(int ambient_dim, std::vector<Matrix> basis, std::string label);

/// M_d with the matrix-unit basis E_11, E_12, ..., E_dd (row-major order).
SpacePtr full_matrix_space(int d, std::string label = {});

/// The matrix unit E_{ij} (zero-based) in M_d.
Matrix matrix_unit(int d, int i, int j);

/// Same object, or same ambient dimension and identical basis.
bool same_space(const OperatorSpace& a, const OperatorSpace& b);

/// An element (v_ij) of M_n(V), stored as coordinates over the basis of V.
/// Column i * n + j of coords() holds the coordinates of v_ij.
class SpaceElement {
 public:
  SpaceElement(SpacePtr space, int level, Matrix coords);

  static SpaceElement zero(SpacePtr space, int level);
  static SpaceElement random(SpacePtr space, int level, Rng& rng);

  const SpacePtr& space() const { return space_; }
  int level() const { return level_; }
  const Matrix& coords() const { return coords_; }
  Vector entry(int i, int j) const { return coords_.col(i * level_ + j); }

  SpaceElement& operator+=(const SpaceElement& rhs);
  SpaceElement& operator*=(cdouble scalar);

 private:
  SpacePtr space_;
  int level_;
  Matrix coords_;
};

SpaceElement operator+(SpaceElement a, const SpaceElement& b);
SpaceElement operator*(cdouble scalar, SpaceElement x);

/// The (nd) x (nd) block matrix whose (i, j) block is v_ij.
Matrix realize(const SpaceElement& x);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// ||x||_{M_n(V)}: spectral norm of realize(x).
double level_norm(const SpaceElement& x);

/// v (+) w in M_{m+n}(V).
SpaceElement direct_sum(const SpaceElement& v, const SpaceElement& w);

/// alpha * x * beta for scalar matrices alpha (n x m), beta (m x n) and
/// x in M_m(V); the result lies in M_n(V).
SpaceElement sandwich(const Matrix& alpha, const SpaceElement& x, const Matrix& beta);

/// Embeds x into M_{n+extra}(V) with zero rows and columns appended.
SpaceElement pad(const SpaceElement& x, int extra = 1);

/// Outcome of one axiom family over all samples.
struct AxiomCheck {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst_violation = 0.0;  // relative, for M1; absolute excess over 1e-9 slack for M2
};

struct AxiomReport {
  std::string space_label;
  std::vector<AxiomCheck> checks;
  bool passed() const;
};

using MatrixNormFn = std::function<double(const SpaceElement&)>;

/// Samples random elements at levels <= 4 and checks M1 (direct sums) and M2
/// (scalar-matrix contraction) for the matrix norm of V.
AxiomReport verify_axioms(const SpacePtr& space, int samples, std::uint64_t seed);

/// Same, with a caller-supplied matrix norm in place of level_norm.
AxiomReport verify_axioms(const SpacePtr& space, int samples, std::uint64_t seed,
                          const MatrixNormFn& norm);

}  // namespace npspace
