#pragma once

namespace fuzzyset {

/// v -> 2^v - 1. Maps [0,1] onto itself with fixed points 0 and 1.
double raise_level(double v) noexcept;

/// v -> log2(v + 1). Inverse of raise_level.
double lower_level(double v) noexcept;

/**
 * Membership of {x}^(k) given the membership t of x: k-fold raise_level for
 * k > 0, |k|-fold lower_level for k < 0, t itself for k = 0.
 * Throws RangeError if t is not in [0,1].
 */
double iterate_level(double t, int k);

}  // namespace fuzzyset
