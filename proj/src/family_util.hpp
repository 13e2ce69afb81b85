#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "liefact/errors.hpp"

namespace liefact::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidParamError(message);
}

inline bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9; }

// Whether u = base^(+-1/delta) remains a solution for base < 0. The flow
// identity needs the signed power u^delta = base^(+-1); only delta = 1 gives
// that over the reals. (An even integer exponent such as -1/delta = -2 is
// still real, but the real root returns |base| and leaves the compatible
// first-order flow, so it is not admissible.)
inline bool negative_base_ok(double delta) {
    return std::abs(delta - 1.0) <= 1e-9;
}

}  // namespace liefact::detail
