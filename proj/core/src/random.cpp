#include "npspace/random.hpp"

#include <cmath>

namespace npspace {

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t state = mix(base);
  for (std::uint64_t s : stream) state = mix(state ^ mix(s + 0x632be59bd9b4e019ULL));
  return state;
}

Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix out(rows, cols);
  // Column-major fill, real part before imaginary part: fixes the draw order.
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = cdouble(re, im);
    }
  }
  return out;
}

}  // namespace npspace
