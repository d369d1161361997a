#include "npspace/linmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "npspace/errors.hpp"

namespace npspace {

namespace {

// Relative outward padding applied to every computed bound; covers the
// rounding of the SVDs and eigensolves that produce it.
constexpr double kPad = 1e-13;

double pad_up(double v) { return std::isfinite(v) ? v * (1.0 + kPad) : v; }
double pad_down(double v) { return v * (1.0 - kPad); }

// Choi matrix of phi o P_V: block (a, b) is phi(P_V(E_ab)).
Matrix choi_matrix(const LinearMapRep& phi) {
  const int dv = phi.domain()->ambient_dim();
  const int dw = phi.codomain()->ambient_dim();
  Matrix choi(dv * dw, dv * dw);
  for (int a = 0; a < dv; ++a) {
    for (int b = 0; b < dv; ++b) choi.block(a * dw, b * dw, dw, dw) = phi.apply(matrix_unit(dv, a, b));
  }
  return choi;
}

// Swaps the domain indices of a Choi matrix: the Choi matrix of phi o transpose.
Matrix partial_transpose(const Matrix& choi, int dv, int dw) {
  Matrix out(choi.rows(), choi.cols());
  for (int a = 0; a < dv; ++a) {
    for (int b = 0; b < dv; ++b) out.block(a * dw, b * dw, dw, dw) = choi.block(b * dw, a * dw, dw, dw);
  }
  return out;
}

// Distance from positivity, as the amount delta such that the map with this
// Choi matrix differs from a completely positive one by a map of norm <= delta.
// Returns nullopt when the matrix is clearly not positive semidefinite.
std::optional<double> positivity_defect(const Matrix& choi, int dv) {
  const double scale = spectral_norm(choi);
  if (scale == 0.0) return 0.0;
  const Matrix herm = 0.5 * (choi + choi.adjoint());
  const Matrix anti = choi - herm;
  Eigen::JacobiSVD<Matrix> anti_svd(anti);
  const double anti_trace_norm = anti_svd.singularValues().sum();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  const double lambda_min = eig.eigenvalues()(0);
  constexpr double kAccept = 1e-9;
  if (lambda_min < -kAccept * scale || anti_trace_norm > kAccept * scale) return std::nullopt;
  const double solver_err = 1e-14 * scale * static_cast<double>(choi.rows());
  // A Choi defect of -lambda_min is a multiple of the map X -> tr(X) I, whose
  // norm is dv; the anti-Hermitian part is bounded by its trace norm.
  return 2.0 * dv * (std::max(0.0, -lambda_min) + solver_err) + anti_trace_norm;
}

// Unimodular factor w with tr(choi) = w |tr(choi)|; a unimodular multiple of
// a (co)positive map has w^{-1} * choi (partially transposed) positive.
cdouble choi_phase(const Matrix& choi) {
  const cdouble tr = choi.trace();
  return std::abs(tr) > 0.0 ? tr / std::abs(tr) : cdouble(1.0);
}

MapCertificates compute_certificates(const LinearMapRep& phi) {
  MapCertificates certs;
  const OperatorSpace& v = *phi.domain();
  const OperatorSpace& w = *phi.codomain();
  const int dv = v.ambient_dim();
  const int dw = w.ambient_dim();

  const double coeff_norm = spectral_norm(phi.coeff());
  certs.coeff_relaxation = pad_up(std::sqrt(static_cast<double>(dv)) * coeff_norm *
                                  std::sqrt(w.gram_sigma_max() / v.gram_sigma_min()));

  const Factorization f = factorize(phi);
  Matrix left = Matrix::Zero(dw, dw);
  Matrix right = Matrix::Zero(dw, dw);
  for (std::size_t r = 0; r < f.left.size(); ++r) {
    left += f.left[r] * f.left[r].adjoint();
    right += f.right[r].adjoint() * f.right[r];
  }
  certs.cb_cap = pad_up(std::sqrt(spectral_norm(left) * spectral_norm(right)));

  if (v.is_full()) {
    const Matrix raw = choi_matrix(phi);
    const Matrix choi = raw / choi_phase(raw);
    const double unit_image = spectral_norm(phi.apply(Matrix::Identity(dv, dv)));
    if (auto defect = positivity_defect(choi, dv)) {
      certs.completely_positive = true;
      certs.positive_norm = pad_up(unit_image + *defect);
      // Completely positive maps attain their cb norm at the identity.
      certs.cb_cap = std::min(certs.cb_cap, *certs.positive_norm);
    } else if (auto co_defect = positivity_defect(partial_transpose(choi, dv, dw), dv)) {
      certs.positive_norm = pad_up(unit_image + *co_defect);
    }
  }
  return certs;
}

}  // namespace

Matrix LinearMapRep::apply(const Matrix& v) const {
  return codomain_->realize(coeff_ * domain_->coordinates(v));
}

MapPtr make_map_from_coeff(SpacePtr domain, SpacePtr codomain, Matrix coeff, std::string label) {
  if (!domain || !codomain) throw SpaceMismatch("map needs a domain and a codomain");
  if (coeff.rows() != codomain->dim() || coeff.cols() != domain->dim()) {
    std::ostringstream os;
    os << "coefficient matrix is " << coeff.rows() << "x" << coeff.cols() << ", expected "
       << codomain->dim() << "x" << domain->dim();
    throw DimensionMismatch(os.str());
  }
  if (!coeff.allFinite()) throw InconsistentAction("coefficient matrix has non-finite entries");

  std::shared_ptr<LinearMapRep> phi(new LinearMapRep());
  phi->domain_ = std::move(domain);
  phi->codomain_ = std::move(codomain);
  phi->coeff_ = std::move(coeff);
  phi->label_ = std::move(label);
  phi->is_zero_ = phi->coeff_.isZero(0.0);
  if (phi->is_zero_) {
    phi->certs_.cb_cap = 0.0;
    phi->certs_.coeff_relaxation = 0.0;
    phi->certs_.positive_norm = 0.0;
    phi->certs_.completely_positive = true;
  } else {
    phi->certs_ = compute_certificates(*phi);
  }
  return phi;
}

MapPtr make_map(SpacePtr domain, SpacePtr codomain, const std::vector<Vector>& action,
                std::string label) {
  if (!domain || !codomain) throw SpaceMismatch("map needs a domain and a codomain");
  if (static_cast<int>(action.size()) != domain->dim()) {
    throw DimensionMismatch("action needs one image per domain basis element");
  }
  Matrix coeff(codomain->dim(), domain->dim());
  for (int t = 0; t < domain->dim(); ++t) {
    if (action[t].size() != codomain->dim()) {
      throw DimensionMismatch("image " + std::to_string(t) + " has the wrong number of coordinates");
    }
    if (!action[t].allFinite()) {
      throw InconsistentAction("image " + std::to_string(t) + " has non-finite coordinates");
    }
    coeff.col(t) = action[t];
  }
  return make_map_from_coeff(std::move(domain), std::move(codomain), std::move(coeff),
                             std::move(label));
}

MapPtr make_map_from_images(SpacePtr domain, SpacePtr codomain, const std::vector<Matrix>& images,
                            std::string label) {
  if (!domain || !codomain) throw SpaceMismatch("map needs a domain and a codomain");
  if (static_cast<int>(images.size()) != domain->dim()) {
    throw DimensionMismatch("action needs one image per domain basis element");
  }
  const int dw = codomain->ambient_dim();
  std::vector<Vector> action;
  action.reserve(images.size());
  for (std::size_t t = 0; t < images.size(); ++t) {
    if (images[t].rows() != dw || images[t].cols() != dw) {
      throw DimensionMismatch("image " + std::to_string(t) + " is not a codomain-sized matrix");
    }
    Vector c = codomain->coordinates(images[t]);
    const double residual = (codomain->realize(c) - images[t]).norm();
    if (residual > 1e-12 * std::max(1.0, images[t].norm())) {
      throw InconsistentAction("image " + std::to_string(t) + " does not lie in the codomain");
    }
    action.push_back(std::move(c));
  }
  return make_map(std::move(domain), std::move(codomain), action, std::move(label));
}

MapPtr scale(const LinearMapRep& phi, cdouble c) {
  std::ostringstream label;
  label << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*" << phi.label();
  return make_map_from_coeff(phi.domain(), phi.codomain(), c * phi.coeff(), label.str());
}

MapPtr add(const LinearMapRep& phi, const LinearMapRep& psi) {
  if (!same_space(*phi.domain(), *psi.domain()) || !same_space(*phi.codomain(), *psi.codomain())) {
    throw SpaceMismatch("adding maps between different spaces");
  }
  return make_map_from_coeff(phi.domain(), phi.codomain(), phi.coeff() + psi.coeff(),
                             phi.label() + "+" + psi.label());
}

SpaceElement amplify(const LinearMapRep& phi, const SpaceElement& x) {
  if (!same_space(*x.space(), *phi.domain())) {
    throw SpaceMismatch("element is not over the domain of '" + phi.label() + "'");
  }
  return SpaceElement(phi.codomain(), x.level(), phi.coeff() * x.coords());
}

Factorization factorize(const LinearMapRep& phi) {
  const int dv = phi.domain()->ambient_dim();
  const int dw = phi.codomain()->ambient_dim();
  Factorization f;
  if (phi.is_zero()) return f;
  const Matrix choi = choi_matrix(phi);
  Eigen::JacobiSVD<Matrix> svd(choi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = sigma(0) * 1e-15 * static_cast<double>(choi.rows());
  for (Eigen::Index r = 0; r < sigma.size(); ++r) {
    if (sigma(r) <= cutoff) break;
    const double w = std::sqrt(sigma(r));
    Matrix left(dw, dv);
    Matrix right_adj(dw, dv);
    for (int a = 0; a < dv; ++a) {
      for (int i = 0; i < dw; ++i) {
        left(i, a) = w * svd.matrixU()(a * dw + i, r);
        right_adj(i, a) = w * svd.matrixV()(a * dw + i, r);
      }
    }
    f.left.push_back(std::move(left));
    f.right.push_back(right_adj.adjoint());
  }
  return f;
}

NormBracket level_upper_bound(const LinearMapRep& phi, int level) {
  if (level < 1) throw InvalidLevel("level must be >= 1");
  if (phi.is_zero()) return NormBracket::zero();
  const MapCertificates& c = phi.certificates();

  NormBracket base{0.0, kInf, BoundSource::trivial_zero, BoundSource::coeff_relaxation};
  if (c.positive_norm) base.lower_hi(*c.positive_norm, BoundSource::exact_svd);
  base.lower_hi(c.cb_cap, BoundSource::cb_cap);
  base.lower_hi(c.coeff_relaxation, BoundSource::coeff_relaxation);
  if (level == 1) return base;

  NormBracket out{0.0, kInf, BoundSource::trivial_zero, BoundSource::n_times_norm_bound};
  const int m = phi.codomain()->ambient_dim();
  if (level > m) {
    const double smith_cap = std::min(round_up(static_cast<double>(m) * base.hi), c.cb_cap);
    out.lower_hi(smith_cap, BoundSource::smith_stabilization);
  }
  out.lower_hi(round_up(static_cast<double>(level) * base.hi), BoundSource::n_times_norm_bound);
  out.lower_hi(c.cb_cap, BoundSource::cb_cap);
  return out;
}

LevelEstimate level_norm_bracket(const LinearMapRep& phi, int level, const OptBudget& budget) {
  if (level < 1) throw InvalidLevel("level must be >= 1, got " + std::to_string(level));
  LevelEstimate est;
  est.level = level;
  if (phi.is_zero()) {
    est.bracket = NormBracket::zero();
    est.witness = SpaceElement::zero(phi.domain(), level);
    return est;
  }

  est.bracket = level_upper_bound(phi, level);
  AscentResult ascent = maximize_level_norm(phi, level, budget);
  est.optimizer_value = ascent.value;
  est.bracket.lo = pad_down(ascent.value);
  est.bracket.lo_source = BoundSource::optimizer;
  est.witness = std::move(ascent.witness);

  // I_n (x) I_d is a unit-norm element whenever I_d lies in V.
  if (const auto& id = phi.domain()->identity_coordinates()) {
    Matrix coords = Matrix::Zero(phi.domain()->dim(), level * level);
    for (int i = 0; i < level; ++i) coords.col(i * level + i) = *id;
    SpaceElement unit(phi.domain(), level, std::move(coords));
    const double scale_norm = level_norm(unit);
    if (scale_norm > 0.0) {
      unit *= 1.0 / scale_norm;
      const double value = pad_down(level_norm(amplify(phi, unit)));
      if (value > est.bracket.lo) {
        est.bracket.lo = value;
        est.bracket.lo_source = BoundSource::exact_svd;
        est.witness = std::move(unit);
      }
    }
  }
  est.bracket.validate();
  return est;
}

LevelEstimate base_norm(const LinearMapRep& phi, const OptBudget& budget) {
  return level_norm_bracket(phi, 1, budget);
}

CbEstimate cb_norm(const LinearMapRep& phi, const OptBudget& budget) {
  CbEstimate out;
  out.stabilization_level = phi.codomain()->ambient_dim();
  out.full_codomain = phi.codomain()->is_full();
  out.estimate = level_norm_bracket(phi, out.stabilization_level, budget);
  return out;
}

}  // namespace npspace
