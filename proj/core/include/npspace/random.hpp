#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "npspace/types.hpp"

namespace npspace {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; mixes a base seed with stream indices so that every
/// (seed, level, restart) triple gets an independent, reproducible stream.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> stream);

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);

}  // namespace npspace
