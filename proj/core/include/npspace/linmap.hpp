#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "npspace/bracket.hpp"
#include "npspace/opspace.hpp"
#include "npspace/types.hpp"

namespace npspace {

/// Upper bounds that hold for the map itself, computed once at construction.
struct MapCertificates {
  /// Haagerup factorization bound on ||phi o P_V||_cb, hence on every ||phi_n||.
  double cb_cap = kInf;
  /// Level-1 bound from the Frobenius relaxation of the coefficient matrix.
  double coeff_relaxation = kInf;
  /// ||phi(I)|| plus a positivity-defect correction, when the domain is all of
  /// M_d and phi is a unimodular multiple of a completely positive or
  /// completely copositive map (Russo-Dye).
  std::optional<double> positive_norm;
  /// Completely positive up to a unimodular factor.
  bool completely_positive = false;
};

/// Explicit factorization phi o P_V (X) = sum_r left[r] * X * right[r].
struct Factorization {
  std::vector<Matrix> left;   // d_W x d_V
  std::vector<Matrix> right;  // d_V x d_W
};

/// A linear map phi: V -> W acting on coordinates through coeff (k_W x k_V).
class LinearMapRep {
 public:
  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  const Matrix& coeff() const { return coeff_; }
  const std::string& label() const { return label_; }
  const MapCertificates& certificates() const { return certs_; }
  bool is_zero() const { return is_zero_; }

  /// phi applied to an element of V given as a matrix; the input is first
  /// projected onto V, so this is the canonical extension phi o P_V.
  Matrix apply(const Matrix& v) const;

 private:
  friend std::shared_ptr<const LinearMapRep> make_map_from_coeff(SpacePtr, SpacePtr, Matrix,
                                                                 std::string);
  LinearMapRep() = default;

  SpacePtr domain_;
  SpacePtr codomain_;
  Matrix coeff_;
  std::string label_;
  MapCertificates certs_;
  bool is_zero_ = false;
};

using MapPtr = std::shared_ptr<const LinearMapRep>;

/// action[t] holds the W-coordinates of phi(basis_V[t]).
/// Throws DimensionMismatch on wrong counts or lengths and InconsistentAction
/// when an entry is not finite.
MapPtr make_map(SpacePtr domain, SpacePtr codomain, const std::vector<Vector>& action,
                std::string label);

/// images[t] is the matrix phi(basis_V[t]) in M_{d_W}; each must lie in W
/// (relative residual <= 1e-12), otherwise InconsistentAction.
MapPtr make_map_from_images(SpacePtr domain, SpacePtr codomain, const std::vector<Matrix>& images,
                            std::string label);

MapPtr make_map_from_coeff(SpacePtr domain, SpacePtr codomain, Matrix coeff, std::string label);

MapPtr scale(const LinearMapRep& phi, cdouble c);
MapPtr add(const LinearMapRep& phi, const LinearMapRep& psi);

/// phi_n((v_ij)) = (phi(v_ij)). Throws SpaceMismatch when x is not over the domain.
SpaceElement amplify(const LinearMapRep& phi, const SpaceElement& x);

/// Choi-matrix SVD factorization of phi o P_V.
Factorization factorize(const LinearMapRep& phi);

/// Search budget for the level-norm optimizer.
struct OptBudget {
  int restarts = 20;
  int max_iter = 200;
  double tol = 1e-11;
  int stall_window = 5;
  int projection_rounds = 100;
  double projection_tol = 1e-12;
  std::uint64_t seed = 0;
};

/// A bracket for ||phi_n|| together with the element achieving its lower bound.
struct LevelEstimate {
  int level = 1;
  NormBracket bracket;
  std::optional<SpaceElement> witness;
  /// Value found by the ascent alone, before any other lower bound is merged.
  double optimizer_value = 0.0;
};

struct AscentResult {
  double value = 0.0;
  std::optional<SpaceElement> witness;
  int iterations = 0;
};

/// Multi-restart alternating ascent for sup { ||phi_n(x)|| : ||x||_{M_n(V)} <= 1 }.
/// Deterministic for a fixed budget.seed regardless of thread count.
AscentResult maximize_level_norm(const LinearMapRep& phi, int level, const OptBudget& budget);

/// Upper bound for ||phi_n|| from certificates alone (no search).
NormBracket level_upper_bound(const LinearMapRep& phi, int level);

/// Bracket for ||phi_n||. Throws InvalidLevel for level < 1.
LevelEstimate level_norm_bracket(const LinearMapRep& phi, int level, const OptBudget& budget = {});

/// ||phi|| = ||phi_1||.
LevelEstimate base_norm(const LinearMapRep& phi, const OptBudget& budget = {});

struct CbEstimate {
  LevelEstimate estimate;
  /// Level m at which the sequence is constant from then on (ambient size of W).
  int stabilization_level = 1;
  /// True when W is all of M_m; otherwise m is the ambient size of W and the
  /// estimate relies on the ambient inclusion W in M_m.
  bool full_codomain = false;
};

CbEstimate cb_norm(const LinearMapRep& phi, const OptBudget& budget = {});

}  // namespace npspace
