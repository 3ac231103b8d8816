#pragma once

// Earlier entropic uncertainty bounds, kept verbatim as comparison targets.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "mubent/error.hpp"
#include "mubent/numeric.hpp"

namespace mubent {

enum class BoundLabel {
    maassen_uffink,
    azer,
    azer_col,
    collision_entropy_bound,
    colbound_cap,
    new_single,
    new_multi,
    new_theorem,
};

constexpr std::string_view to_string(BoundLabel label) noexcept {
    switch (label) {
    case BoundLabel::maassen_uffink: return "maassen_uffink";
    case BoundLabel::azer: return "azer";
    case BoundLabel::azer_col: return "azer_col";
    case BoundLabel::collision_entropy_bound: return "collision_entropy_bound";
    case BoundLabel::colbound_cap: return "colbound_cap";
    case BoundLabel::new_single: return "new_single";
    case BoundLabel::new_multi: return "new_multi";
    case BoundLabel::new_theorem: return "new_theorem";
    }
    return "unknown";
}

struct BoundInputs {
    int d = 0;
    int M = 0;
    double k_tot = 0.0;  // or the maximal overlap c, depending on the bound
};

struct BoundComparison {
    BoundLabel label;
    double value;
    BoundInputs inputs;
};

namespace detail {

inline void require_basis_count(int d, int M) {
    if (d < 1 || M < 1 || M > d + 1) {
        std::ostringstream os;
        os << "need 1 <= M <= d + 1, got d = " << d << ", M = " << M;
        throw Error(ErrorKind::range, os.str());
    }
}

/// M (ln(n) - (n-1)(n * avg - 1) ln(n/(n-1))) with n = kappa * M; the
/// (n-1) ln(n/(n-1)) factor is taken at its limit 0 when n = 1.
inline double chord_bound(int M, std::int64_t kappa, double avg_ic) {
    const double n = static_cast<double>(kappa) * M;
    const double tail = n > 1.0 ? (n - 1.0) * (n * avg_ic - 1.0) * std::log(n / (n - 1.0)) : 0.0;
    return M * (std::log(n) - tail);
}

} // namespace detail

/// -2 ln c for two bases with maximal overlap c.
inline double maassen_uffink(double c) {
    if (!(c > 0.0) || c > 1.0) throw Error(ErrorKind::range, "maximal overlap c must lie in (0, 1]");
    return -2.0 * std::log(c);
}

/// Upper bound on the summed collision probability over M of the d+1 MUBs.
inline double k_tot_cap(int d, int M) {
    detail::require_basis_count(d, M);
    return static_cast<double>(d + M - 1) / d;
}

/// Bound for M MUBs with kappa = ceil(d / (d + M - 1)), evaluated as written.
/// For M >= 1 kappa is always 1.
inline double azer_bound(int d, int M) {
    detail::require_basis_count(d, M);
    const auto kappa = numeric::ceil_snap(static_cast<double>(d) / (d + M - 1));
    return detail::chord_bound(M, kappa, k_tot_cap(d, M) / M);
}

/// Collision-probability form with kappa = ceil(1 / k_tot).
inline double azer_col_bound(int M, double k_tot) {
    if (M < 1) throw Error(ErrorKind::range, "M must be a positive integer");
    if (!(k_tot > 0.0) || k_tot > M + 1e-12) {
        std::ostringstream os;
        os << "k_tot = " << k_tot << " outside (0, M]";
        throw Error(ErrorKind::range, os.str());
    }
    return detail::chord_bound(M, numeric::ceil_snap(1.0 / k_tot), k_tot / M);
}

/// Sum of collision entropies over M MUBs: -M ln((d + M - 1) / (d M)).
/// The printed form lacks the leading minus sign; Jensen on -ln gives this one.
inline double collision_entropy_bound(int d, int M) {
    detail::require_basis_count(d, M);
    return -M * std::log(static_cast<double>(d + M - 1) / (static_cast<double>(d) * M));
}

} // namespace mubent
