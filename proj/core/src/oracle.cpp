#include "npspace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <Eigen/SVD>
#include <vector>

#include "npspace/errors.hpp"

namespace npspace {

namespace {

constexpr int kClimbers = 4;
constexpr double kStepGrowth = 1.5;

double ratio(const LinearMapRep& phi, const SpaceElement& x) {
  const double nx = level_norm(x);
  return nx > 0.0 ? level_norm(amplify(phi, x)) / nx : 0.0;
}

SpaceElement from_blocks(const SpacePtr& space, const Matrix& big, int n) {
  const int d = space->ambient_dim();
  Matrix coords(space->dim(), n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) coords.col(i * n + j) = space->coordinates(big.block(i * d, j * d, d, d));
  }
  return SpaceElement(space, n, std::move(coords));
}

Matrix polar_factor(const Matrix& z) {
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// On M_n(M_d) the unit ball is the spectral ball of M_{nd}, whose extreme
// points are the unitaries: sample those and walk along the unitary group.
// Elsewhere sample Gaussian coordinates and walk in coordinate space.
class Walker {
 public:
  Walker(const LinearMapRep& phi, int level) : phi_(phi), level_(level), unitary_(phi.domain()->is_full()) {}

  SpaceElement sample(Rng& rng) const {
    if (unitary_) {
      const int m = level_ * phi_.domain()->ambient_dim();
      return from_blocks(phi_.domain(), polar_factor(random_gaussian(rng, m, m)), level_);
    }
    return SpaceElement::random(phi_.domain(), level_, rng);
  }

  SpaceElement step(const SpaceElement& x, double size, Rng& rng) const {
    if (unitary_) {
      const Matrix big = realize(x);
      return from_blocks(phi_.domain(), polar_factor(big + size * random_gaussian(rng, big.rows(), big.cols())),
                         level_);
    }
    return SpaceElement(x.space(), level_,
                        x.coords() + size * random_gaussian(rng, x.coords().rows(), x.coords().cols()));
  }

 private:
  const LinearMapRep& phi_;
  int level_;
  bool unitary_;
};

}  // namespace

BruteResult brute_level_norm(const LinearMapRep& phi, int level, int trials, std::uint64_t seed,
                             int climb_steps, double step_decay, const SpaceElement* start) {
  if (level < 1) throw InvalidLevel("level must be >= 1");
  if (trials < 1) throw InvalidParameter("oracle needs at least one trial");
  BruteResult out;
  if (phi.is_zero()) {
    out.witness = SpaceElement::zero(phi.domain(), level);
    return out;
  }

  const Walker walker(phi, level);
  Rng rng(derive_seed(seed, {0x6f7261636c65, static_cast<std::uint64_t>(level)}));
  std::vector<std::pair<double, SpaceElement>> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    SpaceElement x = walker.sample(rng);
    const double nx = level_norm(x);
    if (nx == 0.0) continue;
    x *= 1.0 / nx;
    samples.emplace_back(level_norm(amplify(phi, x)), std::move(x));
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (samples.size() > kClimbers) samples.erase(samples.begin() + kClimbers, samples.end());
  if (start) {
    if (start->level() != level || !same_space(*start->space(), *phi.domain())) {
      throw SpaceMismatch("oracle start point is not in M_n of the domain");
    }
    const double ns = level_norm(*start);
    if (ns > 0.0) samples.emplace_back(ratio(phi, *start), (1.0 / ns) * *start);
  }
  if (samples.empty()) return out;

  for (auto& [value, x] : samples) {
    double step = 0.5;
    for (int s = 0; s < climb_steps; ++s) {
      SpaceElement trial = walker.step(x, step, rng);
      const double v = ratio(phi, trial);
      if (v > value) {
        value = v;
        trial *= 1.0 / level_norm(trial);
        x = std::move(trial);
        step = std::min(step * kStepGrowth, 1.0);
      } else {
        step *= step_decay;
      }
    }
    // Re-evaluate at the stored unit-norm witness so the reported value is
    // exactly what the witness achieves.
    const double checked = ratio(phi, x);
    if (!out.witness || checked > out.value) {
      out.value = checked;
      out.witness = x;
    }
  }
  return out;
}

bool CrossReport::passed() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const CrossLevel& l) { return l.upper_ok && l.lower_ok; });
}

CrossReport cross_validate(const LevelNormTable& table, int trials, std::uint64_t seed, int max_level) {
  if (!table.map) throw InvalidParameter("cross validation needs a table built from a map");
  CrossReport report;
  report.label = table.label;
  const int top = std::min(max_level, table.max_level());
  std::optional<SpaceElement> below;
  for (int n = 1; n <= top; ++n) {
    const BruteResult brute = brute_level_norm(*table.map, n, trials, derive_seed(seed, {7, 1}), 1000, 0.95,
                                               below ? &*below : nullptr);
    if (brute.witness) below = pad(*brute.witness);
    const NormBracket b = table.bracket(n);
    CrossLevel level;
    level.level = n;
    level.brute_lo = brute.value;
    level.table_lo = b.lo;
    level.table_hi = b.hi;
    level.witness = brute.witness;
    level.upper_ok = brute.value <= b.hi + 1e-9;
    level.lower_ok = b.lo >= brute.value - 5e-3 * brute.value;
    report.levels.push_back(std::move(level));
  }
  return report;
}

}  // namespace npspace
