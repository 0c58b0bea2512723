#pragma once

#include <span>

namespace formexp {

// perm is one-line and 0-based: position k holds the original element perm[k].
// Returns e with X_{perm[0]} * ... * X_{perm[n-1]} = e * X_0 * ... * X_{n-1}
// in a graded-commutative algebra. Throws std::invalid_argument on a
// malformed permutation or a length mismatch.
int koszul_sign(std::span<const int> perm, std::span<const int> degrees);

}  // namespace formexp
