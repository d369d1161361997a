#include "npspace/opspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "npspace/errors.hpp"

namespace npspace {

namespace {

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, int d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

}  // namespace

SpacePtr make_space(int ambient_dim, std::vector<Matrix> basis, std::string label) {
  if (ambient_dim < 1) throw DimensionMismatch("ambient dimension must be positive");
  if (basis.empty()) throw DimensionMismatch("operator space basis must be nonempty");
  const int d = ambient_dim;
  for (std::size_t t = 0; t < basis.size(); ++t) {
    if (basis[t].rows() != d || basis[t].cols() != d) {
      std::ostringstream os;
      os << "basis matrix " << t << " is " << basis[t].rows() << "x" << basis[t].cols()
         << ", expected " << d << "x" << d;
      throw DimensionMismatch(os.str());
    }
  }
  const int k = static_cast<int>(basis.size());
  if (k > d * d) throw DependentBasis("more basis matrices than dim M_d");

  std::shared_ptr<OperatorSpace> space(new OperatorSpace());
  space->ambient_dim_ = d;
  space->label_ = std::move(label);
  space->vec_basis_.resize(d * d, k);
  for (int t = 0; t < k; ++t) space->vec_basis_.col(t) = vec(basis[t]);
  space->basis_ = std::move(basis);

  space->gram_ = space->vec_basis_.adjoint() * space->vec_basis_;
  Eigen::JacobiSVD<Matrix> gram_svd(space->gram_);
  const auto& sv = gram_svd.singularValues();
  space->gram_sigma_max_ = sv(0);
  space->gram_sigma_min_ = sv(sv.size() - 1);
  if (!(space->gram_sigma_max_ > 0.0) ||
      space->gram_sigma_min_ <= OperatorSpace::kIndependenceTol * space->gram_sigma_max_) {
    std::ostringstream os;
    os.precision(3);
    os << "basis is linearly dependent (Gram singular values " << space->gram_sigma_min_ << " / "
       << space->gram_sigma_max_ << ")";
    throw DependentBasis(os.str());
  }

  Eigen::HouseholderQR<Matrix> qr(space->vec_basis_);
  space->q_ = qr.householderQ() * Matrix::Identity(d * d, k);
  space->r_ = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  const Matrix id = Matrix::Identity(d, d);
  if (space->distance(id) <= 1e-12 * std::sqrt(static_cast<double>(d))) {
    space->identity_coords_ = space->coordinates(id);
  }
  return space;
}

SpacePtr full_matrix_space(int d, std::string label) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) basis.push_back(matrix_unit(d, i, j));
  }
  if (label.empty()) label = "M" + std::to_string(d);
  return make_space(d, std::move(basis), std::move(label));
}

Matrix matrix_unit(int d, int i, int j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

bool same_space(const OperatorSpace& a, const OperatorSpace& b) {
  if (&a == &b) return true;
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (int t = 0; t < a.dim(); ++t) {
    if (a.basis()[t] != b.basis()[t]) return false;
  }
  return true;
}

Matrix OperatorSpace::realize(const Vector& coords) const {
  if (coords.size() != dim()) throw DimensionMismatch("coordinate vector has wrong length");
  return unvec(vec_basis_ * coords, ambient_dim_);
}

Vector OperatorSpace::coordinates(const Matrix& m) const {
  if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_) {
    throw DimensionMismatch("matrix does not match ambient dimension");
  }
  const Vector rhs = q_.adjoint() * vec(m);
  return r_.triangularView<Eigen::Upper>().solve(rhs);
}

Matrix OperatorSpace::project(const Matrix& m) const {
  if (is_full()) return m;
  const Vector v = vec(m);
  return unvec(q_ * (q_.adjoint() * v), ambient_dim_);
}

double OperatorSpace::distance(const Matrix& m) const { return (m - project(m)).norm(); }

Vector OperatorSpace::solve_gram(const Vector& h) const {
  // Gram = R^H R.
  const Vector y = r_.adjoint().triangularView<Eigen::Lower>().solve(h);
  return r_.triangularView<Eigen::Upper>().solve(y);
}

SpaceElement::SpaceElement(SpacePtr space, int level, Matrix coords)
    : space_(std::move(space)), level_(level), coords_(std::move(coords)) {
  if (!space_) throw SpaceMismatch("element has no space");
  if (level_ < 1) throw InvalidLevel("matrix level must be >= 1");
  if (coords_.rows() != space_->dim() || coords_.cols() != level_ * level_) {
    throw DimensionMismatch("element coordinates must be k x n^2");
  }
}

SpaceElement SpaceElement::zero(SpacePtr space, int level) {
  const int k = space->dim();
  return SpaceElement(std::move(space), level, Matrix::Zero(k, level * level));
}

SpaceElement SpaceElement::random(SpacePtr space, int level, Rng& rng) {
  Matrix coords = random_gaussian(rng, space->dim(), level * level);
  return SpaceElement(std::move(space), level, std::move(coords));
}

SpaceElement& SpaceElement::operator+=(const SpaceElement& rhs) {
  if (!same_space(*space_, *rhs.space_)) throw SpaceMismatch("adding elements of different spaces");
  if (level_ != rhs.level_) throw InvalidLevel("adding elements of different levels");
  coords_ += rhs.coords_;
  return *this;
}

SpaceElement& SpaceElement::operator*=(cdouble scalar) {
  coords_ *= scalar;
  return *this;
}

SpaceElement operator+(SpaceElement a, const SpaceElement& b) { return a += b; }

SpaceElement operator*(cdouble scalar, SpaceElement x) { return x *= scalar; }

Matrix realize(const SpaceElement& x) {
  const OperatorSpace& v = *x.space();
  const int n = x.level();
  const int d = v.ambient_dim();
  Matrix out(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.block(i * d, j * d, d, d) = v.realize(x.entry(i, j));
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double level_norm(const SpaceElement& x) { return spectral_norm(realize(x)); }

SpaceElement direct_sum(const SpaceElement& v, const SpaceElement& w) {
  if (!same_space(*v.space(), *w.space())) throw SpaceMismatch("direct sum across spaces");
  const int m = v.level();
  const int n = w.level();
  const int size = m + n;
  Matrix coords = Matrix::Zero(v.space()->dim(), size * size);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) coords.col(i * size + j) = v.entry(i, j);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) coords.col((m + i) * size + (m + j)) = w.entry(i, j);
  }
  return SpaceElement(v.space(), size, std::move(coords));
}

SpaceElement sandwich(const Matrix& alpha, const SpaceElement& x, const Matrix& beta) {
  const int m = x.level();
  const auto n = alpha.rows();
  if (alpha.cols() != m || beta.rows() != m || beta.cols() != n) {
    throw DimensionMismatch("sandwich requires alpha n x m and beta m x n");
  }
  const int nn = static_cast<int>(n);
  Matrix coords = Matrix::Zero(x.space()->dim(), nn * nn);
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      Vector acc = Vector::Zero(x.space()->dim());
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) acc += alpha(i, k) * beta(l, j) * x.entry(k, l);
      }
      coords.col(i * nn + j) = acc;
    }
  }
  return SpaceElement(x.space(), nn, std::move(coords));
}

SpaceElement pad(const SpaceElement& x, int extra) {
  if (extra < 0) throw InvalidLevel("padding must be nonnegative");
  if (extra == 0) return x;
  return direct_sum(x, SpaceElement::zero(x.space(), extra));
}

bool AxiomReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.failures == 0; });
}

AxiomReport verify_axioms(const SpacePtr& space, int samples, std::uint64_t seed) {
  return verify_axioms(space, samples, seed, [](const SpaceElement& x) { return level_norm(x); });
}

AxiomReport verify_axioms(const SpacePtr& space, int samples, std::uint64_t seed,
                          const MatrixNormFn& norm) {
  if (samples < 1) throw InvalidParameter("verify_axioms needs at least one sample");
  constexpr int kMaxLevel = 4;
  constexpr double kTol = 1e-9;

  AxiomReport report;
  report.space_label = space->label();
  AxiomCheck m1{"M1 direct sum", 0, 0, 0.0};
  AxiomCheck m2{"M2 contraction", 0, 0, 0.0};

  Rng rng(derive_seed(seed, {0x4d31}));
  std::uniform_int_distribution<int> level_dist(1, kMaxLevel);
  std::uniform_real_distribution<double> scale_dist(-3.0, 3.0);

  for (int s = 0; s < samples; ++s) {
    {
      const int m = level_dist(rng);
      const int n = level_dist(rng);
      const SpaceElement v =
          std::pow(10.0, scale_dist(rng)) * SpaceElement::random(space, m, rng);
      const SpaceElement w =
          std::pow(10.0, scale_dist(rng)) * SpaceElement::random(space, n, rng);
      const double lhs = norm(direct_sum(v, w));
      const double rhs = std::max(norm(v), norm(w));
      const double rel = std::abs(lhs - rhs) / std::max(1.0, rhs);
      ++m1.trials;
      m1.worst_violation = std::max(m1.worst_violation, rel);
      if (!(rel <= kTol)) ++m1.failures;
    }
    {
      const int m = level_dist(rng);
      const int n = level_dist(rng);
      const SpaceElement x = SpaceElement::random(space, m, rng);
      const Matrix alpha = random_gaussian(rng, n, m);
      const Matrix beta = random_gaussian(rng, m, n);
      const double lhs = norm(sandwich(alpha, x, beta));
      const double rhs = spectral_norm(alpha) * norm(x) * spectral_norm(beta);
      const double excess = std::max(0.0, lhs - rhs) / std::max(1.0, rhs);
      ++m2.trials;
      m2.worst_violation = std::max(m2.worst_violation, excess);
      if (!(excess <= kTol)) ++m2.failures;
    }
  }
  report.checks = {m1, m2};
  return report;
}

}  // namespace npspace
