#pragma once

#include "npspace/opspace.hpp"

namespace npspace::testing {

/// realize(x) rebuilt entry by entry: element (i*d + r, j*d + c) is
/// sum_t coords[t, i*n + j] * basis[t](r, c). Shares no code with the library.
Matrix naive_realize(const SpaceElement& x);

/// Largest singular value as the square root of the top eigenvalue of M^* M.
double naive_spectral_norm(const Matrix& m);

}  // namespace npspace::testing
