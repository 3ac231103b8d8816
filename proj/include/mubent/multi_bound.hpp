#pragma once

// Tight lower bound on the total Shannon entropy of M distributions whose
// collision probabilities sum to at most k_tot. Every optimal per-distribution
// collision probability sits on the arc of h_tilde containing k_tot / M:
// phi of them at the arc's low end, M-1-phi at its high end, one residual.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "mubent/error.hpp"
#include "mubent/numeric.hpp"
#include "mubent/single_bound.hpp"

namespace mubent {

struct MultiBoundQuery {
    int M = 0;
    double k_tot = 0.0;
    std::vector<int> dims;

    static MultiBoundQuery uniform_dims(int M, double k_tot, int d) {
        return {M, k_tot, std::vector<int>(static_cast<std::size_t>(std::max(M, 0)), d)};
    }
};

struct ArcDecomposition {
    double k_min = 0.0;
    double k_max = 0.0;
    int phi = 0;
    double k_residual = 0.0;
    bool degenerate = false;
    double bound = 0.0;
    int d_used = 0;                  // dimension h_tilde was evaluated with
    std::vector<double> witness_k;   // k_min entries, k_max entries, residual
};

namespace detail {
inline constexpr double budget_tol = 1e-12;
}

/// (1 / ceil(M / k_tot), 1 / floor(M / k_tot)), equal when the ratio is integral.
inline std::pair<double, double> arc_endpoints(int M, double k_tot) {
    if (M < 1) throw Error(ErrorKind::range, "M must be a positive integer");
    if (!(k_tot > 0.0) || k_tot > M + detail::budget_tol) {
        std::ostringstream os;
        os << "k_tot = " << k_tot << " outside (0, M] for M = " << M;
        throw Error(ErrorKind::range, os.str());
    }
    const double ratio = M / k_tot;
    const auto hi = std::max<std::int64_t>(numeric::ceil_snap(ratio), 1);
    const auto lo = std::max<std::int64_t>(numeric::floor_snap(ratio), 1);
    return {1.0 / static_cast<double>(hi), 1.0 / static_cast<double>(lo)};
}

/// floor((k_tot - M k_max) / (k_min - k_max)), clamped to [0, M-1].
inline int phi_count(int M, double k_tot, double k_min, double k_max) {
    if (M < 1) throw Error(ErrorKind::range, "M must be a positive integer");
    if (!(k_min < k_max)) {
        throw Error(ErrorKind::range,
                    "degenerate arc (k_min == k_max): all collision probabilities equal k_tot / M");
    }
    const double x = (k_tot - M * k_max) / (k_min - k_max);
    return static_cast<int>(std::clamp<std::int64_t>(numeric::floor_snap(x), 0, M - 1));
}

inline void validate(const MultiBoundQuery& q) {
    if (q.M < 1) throw Error(ErrorKind::range, "M must be a positive integer");
    if (q.dims.size() != static_cast<std::size_t>(q.M)) {
        std::ostringstream os;
        os << "expected " << q.M << " dimensions, got " << q.dims.size();
        throw Error(ErrorKind::dimension_mismatch, os.str());
    }
    double floor_sum = 0.0;
    for (int d : q.dims) {
        if (d < 1) throw Error(ErrorKind::range, "every dimension must be a positive integer");
        floor_sum += 1.0 / d;
    }
    if (!(q.k_tot > 0.0) || q.k_tot > q.M + detail::budget_tol || q.k_tot < floor_sum - detail::budget_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "k_tot = " << q.k_tot << " outside the feasible budget [" << floor_sum << ", " << q.M << "]";
        throw Error(ErrorKind::infeasible, os.str());
    }
    const auto needed = numeric::ceil_snap(q.M / q.k_tot);
    for (std::size_t i = 0; i < q.dims.size(); ++i) {
        if (q.dims[i] < needed) {
            std::ostringstream os;
            os << "d_" << i + 1 << " = " << q.dims[i] << " is below ceil(M / k_tot) = " << needed;
            throw Error(ErrorKind::dimension_too_small, os.str());
        }
    }
}

inline ArcDecomposition multi_bound(const MultiBoundQuery& q) {
    validate(q);
    ArcDecomposition out;
    out.d_used = *std::min_element(q.dims.begin(), q.dims.end());
    std::tie(out.k_min, out.k_max) = arc_endpoints(q.M, q.k_tot);

    if (out.k_min == out.k_max) {
        const double each = q.k_tot / q.M;
        out.degenerate = true;
        out.phi = 0;
        out.k_residual = each;
        out.witness_k.assign(static_cast<std::size_t>(q.M), each);
        out.bound = q.M * h_tilde(out.d_used, each);
        return out;
    }

    out.phi = phi_count(q.M, q.k_tot, out.k_min, out.k_max);
    const int n_max = q.M - 1 - out.phi;
    out.k_residual = std::clamp(q.k_tot - out.phi * out.k_min - n_max * out.k_max, out.k_min, out.k_max);

    out.witness_k.assign(static_cast<std::size_t>(out.phi), out.k_min);
    out.witness_k.insert(out.witness_k.end(), static_cast<std::size_t>(n_max), out.k_max);
    out.witness_k.push_back(out.k_residual);

    out.bound = out.phi * h_tilde(out.d_used, out.k_min) + n_max * h_tilde(out.d_used, out.k_max) +
                h_tilde(out.d_used, out.k_residual);
    return out;
}

/// Outcome of moving collision probability from a point on a high arc (k2)
/// to a point on a strictly lower arc (k1) up to the nearer singularity.
struct ArcTransferReport {
    bool applicable = false;
    double k1 = 0.0;
    double k2 = 0.0;
    int arc1 = 0;  // floor(1/k1)
    int arc2 = 0;  // floor(1/k2)
    bool k1_singular = false;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double eps = 0.0;
    double lhs = 0.0;  // h_tilde(k1) + h_tilde(k2)
    double rhs = 0.0;  // h_tilde(k1 + eps) + h_tilde(k2 - eps)
    bool holds = false;
};

inline ArcTransferReport arc_transfer_check(double k1, double k2, int d) {
    if (d < 1) throw Error(ErrorKind::range, "d must be a positive integer");
    const double lo = 1.0 / d;
    if (!(k1 >= lo - detail::k_range_tol) || !(k2 <= 1.0 + detail::k_range_tol) || !(k1 < k2)) {
        std::ostringstream os;
        os << "need 1/d <= k1 < k2 <= 1, got k1 = " << k1 << ", k2 = " << k2 << ", d = " << d;
        throw Error(ErrorKind::range, os.str());
    }
    ArcTransferReport r;
    r.k1 = k1;
    r.k2 = k2;
    r.arc1 = static_cast<int>(numeric::floor_snap(1.0 / k1));
    r.arc2 = static_cast<int>(numeric::floor_snap(1.0 / k2));
    r.applicable = r.arc1 > r.arc2 && k1 < 1.0 / (r.arc2 + 1);
    if (!r.applicable) return r;

    r.k1_singular = numeric::near_integer(1.0 / k1);
    const double a1 = r.arc1;
    r.eps1 = r.k1_singular ? 1.0 / (a1 - 1.0) - 1.0 / a1 : 1.0 / a1 - k1;
    r.eps2 = k2 - 1.0 / (r.arc2 + 1.0);
    r.eps = std::min(r.eps1, r.eps2);
    r.lhs = h_tilde(d, k1) + h_tilde(d, k2);
    r.rhs = h_tilde(d, k1 + r.eps) + h_tilde(d, k2 - r.eps);
    r.holds = r.lhs > r.rhs;
    return r;
}

} // namespace mubent
