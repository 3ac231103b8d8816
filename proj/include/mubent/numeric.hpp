#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace mubent::numeric {

/// Tolerance used to snap near-integers before floor/ceil so that values such
/// as 1/(1/3) do not land on the wrong side of an integer.
inline constexpr double snap_tol = 1e-12;

inline bool near_integer(double x, double tol = snap_tol) noexcept {
    return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

inline std::int64_t floor_snap(double x, double tol = snap_tol) noexcept {
    if (near_integer(x, tol)) return static_cast<std::int64_t>(std::llround(x));
    return static_cast<std::int64_t>(std::floor(x));
}

inline std::int64_t ceil_snap(double x, double tol = snap_tol) noexcept {
    if (near_integer(x, tol)) return static_cast<std::int64_t>(std::llround(x));
    return static_cast<std::int64_t>(std::ceil(x));
}

/// -p ln p with the continuity convention 0 ln 0 = 0. Entries below 1e-15
/// count as exact zeros.
inline double xlogx_term(double p) noexcept {
    if (p < 1e-15) return 0.0;
    return -p * std::log(p);
}

} // namespace mubent::numeric
