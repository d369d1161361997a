// Alternating ascent for ||phi_n|| = sup { ||phi_n(x)|| : ||x||_{M_n(V)} <= 1 }.
//
// With (u, v) the top singular pair of phi_n(x), the objective
// Re <u, phi_n(y) v> is real-linear in y. Its gradient is pulled back to an
// element G of M_n(V); the maximizer over the full unit ball of M_{nd} is the
// polar factor of G, which is then pushed into the unit ball of M_n(V) by
// alternating subspace projection and singular-value clipping. When V = M_d
// the polar factor is already feasible and each half-step is exact.

#include <algorithm>
#include <cmath>
#include <vector>

#include "npspace/errors.hpp"
#include "npspace/linmap.hpp"
#include "npspace/parallel.hpp"

namespace npspace {

namespace {

Matrix block_coordinates(const OperatorSpace& space, const Matrix& big, int n) {
  const int d = space.ambient_dim();
  Matrix coords(space.dim(), n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) coords.col(i * n + j) = space.coordinates(big.block(i * d, j * d, d, d));
  }
  return coords;
}

// Feasible point of M_n(V) near z, with norm at most one up to the final
// normalization done by the caller.
SpaceElement into_unit_ball(const SpacePtr& space, const Matrix& z, int n, const OptBudget& budget) {
  if (space->is_full()) return SpaceElement(space, n, block_coordinates(*space, z, n));

  Matrix current = z;
  Matrix coords = block_coordinates(*space, current, n);
  for (int round = 0; round < budget.projection_rounds; ++round) {
    const Matrix in_space = realize(SpaceElement(space, n, coords));
    Eigen::JacobiSVD<Matrix> svd(in_space, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd sigma = svd.singularValues();
    if (sigma(0) <= 1.0) break;
    sigma = sigma.cwiseMin(1.0);
    const Matrix clipped = svd.matrixU() * sigma.cast<cdouble>().asDiagonal() * svd.matrixV().adjoint();
    const double displacement = (clipped - in_space).norm();
    current = clipped;
    coords = block_coordinates(*space, current, n);
    if (displacement <= budget.projection_tol) break;
  }
  return SpaceElement(space, n, std::move(coords));
}

// Gradient of y -> Re <u, phi_n(y) v> represented as an element of M_n(V).
SpaceElement ascent_direction(const LinearMapRep& phi, int n, const Vector& u, const Vector& v) {
  const OperatorSpace& w = *phi.codomain();
  const int dw = w.ambient_dim();
  const int kw = w.dim();

  // w_basis_v[j * kw + s] = W_s v_j
  std::vector<Vector> w_basis_v(static_cast<std::size_t>(n) * kw);
  for (int j = 0; j < n; ++j) {
    for (int s = 0; s < kw; ++s) w_basis_v[j * kw + s] = w.basis()[s] * v.segment(j * dw, dw);
  }
  Matrix coords(phi.domain()->dim(), n * n);
  Vector g(kw);
  for (int i = 0; i < n; ++i) {
    const auto ui = u.segment(i * dw, dw);
    for (int j = 0; j < n; ++j) {
      for (int s = 0; s < kw; ++s) g(s) = ui.dot(w_basis_v[j * kw + s]);
      const Vector h = phi.coeff().adjoint() * g.conjugate();
      coords.col(i * n + j) = phi.domain()->solve_gram(h);
    }
  }
  return SpaceElement(phi.domain(), n, std::move(coords));
}

AscentResult run_restart(const LinearMapRep& phi, int n, const OptBudget& budget, int restart) {
  Rng rng(derive_seed(budget.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(restart)}));
  SpaceElement x = SpaceElement::random(phi.domain(), n, rng);
  const double x_norm = level_norm(x);
  if (x_norm == 0.0) return {};
  x *= 1.0 / x_norm;

  AscentResult result;
  std::vector<double> best_history;
  best_history.reserve(static_cast<std::size_t>(budget.max_iter));
  for (int iter = 0; iter < budget.max_iter; ++iter) {
    Eigen::JacobiSVD<Matrix> svd(realize(amplify(phi, x)), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double value = svd.singularValues()(0);
    if (value > result.value || !result.witness) {
      result.value = value;
      result.witness = x;
    }
    result.iterations = iter + 1;
    best_history.push_back(result.value);
    const int window = budget.stall_window;
    if (iter >= window &&
        best_history[iter] - best_history[iter - window] < budget.tol * std::max(1.0, result.value)) {
      break;
    }
    if (value == 0.0) break;

    const SpaceElement direction =
        ascent_direction(phi, n, svd.matrixU().col(0), svd.matrixV().col(0));
    Eigen::JacobiSVD<Matrix> polar(realize(direction), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (polar.singularValues()(0) == 0.0) break;
    const Matrix z = polar.matrixU() * polar.matrixV().adjoint();

    SpaceElement next = into_unit_ball(phi.domain(), z, n, budget);
    const double next_norm = level_norm(next);
    if (!(next_norm > 0.0)) break;
    next *= 1.0 / next_norm;
    x = std::move(next);
  }
  return result;
}

}  // namespace

AscentResult maximize_level_norm(const LinearMapRep& phi, int level, const OptBudget& budget) {
  if (level < 1) throw InvalidLevel("level must be >= 1");
  if (budget.restarts < 1 || budget.max_iter < 1 || budget.stall_window < 1) {
    throw InvalidParameter("optimizer budget needs restarts, max_iter and stall_window >= 1");
  }
  if (phi.is_zero()) {
    return {0.0, SpaceElement::zero(phi.domain(), level), 0};
  }

  std::vector<AscentResult> results(static_cast<std::size_t>(budget.restarts));
  parallel_for(budget.restarts, [&](int r) { results[r] = run_restart(phi, level, budget, r); });

  AscentResult best;
  for (auto& r : results) {
    best.iterations += r.iterations;
    if (r.witness && (!best.witness || r.value > best.value)) {
      best.value = r.value;
      best.witness = std::move(r.witness);
    }
  }
  return best;
}

}  // namespace npspace
