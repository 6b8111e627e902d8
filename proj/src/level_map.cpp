#include "fuzzyset/level_map.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fuzzyset/errors.hpp"

namespace fuzzyset {

// expm1/log1p keep full relative precision for memberships close to 0. The
// fixed point 1 is special-cased so classical memberships stay exact.
double raise_level(double v) noexcept { return v == 1.0 ? 1.0 : std::expm1(v * std::numbers::ln2); }

double lower_level(double v) noexcept { return v == 1.0 ? 1.0 : std::log1p(v) / std::numbers::ln2; }

double iterate_level(double t, int k) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("membership " + std::to_string(t) + " outside [0,1]");
  // Both endpoints are fixed points; returning them directly keeps them exact.
  if (t == 0.0 || t == 1.0) return t;
  for (; k > 0; --k) t = raise_level(t);
  for (; k < 0; ++k) t = lower_level(t);
  return t;
}

}  // namespace fuzzyset
