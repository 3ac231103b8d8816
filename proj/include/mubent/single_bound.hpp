#pragma once

// Tight lower bound on the Shannon entropy of a distribution on d outcomes
// whose collision probability is at most k and whose entries are all at
// least p_min. The minimizer has at most three distinct levels: a run of
// entries pinned at the floor, one middle entry, and a plateau of equal tops.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "mubent/entropy.hpp"
#include "mubent/error.hpp"
#include "mubent/numeric.hpp"

namespace mubent {

struct SingleBoundQuery {
    int d = 0;
    double k = 0.0;
    double p_min = 0.0;
};

struct ExtremalDistribution {
    Distribution dist;  // ascending
    int big_k = 0;      // size of the top plateau
    double delta = 0.0;
    int n_floor = 0;
    double p_mid = 0.0;
    double p_top = 0.0;
};

namespace detail {

inline constexpr double radicand_clamp = 1e-12;
inline constexpr double degenerate_denominator = 1e-15;
inline constexpr double k_range_tol = 1e-12;

inline void require_dimension(int d) {
    if (d < 1) throw Error(ErrorKind::range, "d must be a positive integer");
}

inline void require_floor(int d, double p_min) {
    require_dimension(d);
    if (!(p_min >= 0.0)) throw Error(ErrorKind::infeasible, "p_min must be non-negative");
    if (p_min * d > 1.0 + k_range_tol) {
        std::ostringstream os;
        os << "p_min = " << p_min << " exceeds 1/d = " << 1.0 / d << "; no distribution has that floor";
        throw Error(ErrorKind::infeasible, os.str());
    }
}

inline double checked_sqrt(double radicand, const char* what) {
    if (radicand < -radicand_clamp) {
        std::ostringstream os;
        os.precision(17);
        os << what << " radicand " << radicand << " is negative; query violates its preconditions";
        throw Error(ErrorKind::infeasible, os.str());
    }
    return std::sqrt(std::max(radicand, 0.0));
}

inline ExtremalDistribution uniform_extremal(int d) {
    const double u = 1.0 / d;
    return {Distribution::uniform(static_cast<std::size_t>(d)), d, 0.0, 0, u, u};
}

inline Distribution assemble_levels(int d, int n_floor, double floor_value, double mid, int plateau, double top) {
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(d));
    p.insert(p.end(), static_cast<std::size_t>(n_floor), floor_value);
    p.push_back(std::max(mid, 0.0));
    p.insert(p.end(), static_cast<std::size_t>(plateau), top);
    std::sort(p.begin(), p.end());
    return Distribution(std::move(p));
}

} // namespace detail

/// Range of collision probabilities a floored distribution can take: uniform
/// at the bottom, everything but one entry at the floor at the top.
inline std::pair<double, double> feasible_k_range(int d, double p_min) {
    detail::require_floor(d, p_min);
    const double rest = 1.0 - (d - 1) * p_min;
    return {1.0 / d, (d - 1) * p_min * p_min + rest * rest};
}

inline void validate(const SingleBoundQuery& q) {
    const auto [lo, hi] = feasible_k_range(q.d, q.p_min);
    if (!std::isfinite(q.k) || q.k < lo - detail::k_range_tol || q.k > hi + detail::k_range_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "k = " << q.k << " outside the feasible range [" << lo << ", " << hi << "] for d = " << q.d
           << ", p_min = " << q.p_min;
        throw Error(ErrorKind::infeasible, os.str());
    }
}

/// Plateau size floor((1 - d p)^2 / (d p^2 - 2p + k)), clamped to [1, d].
/// Returns nullopt when the denominator vanishes, which only happens when both
/// k and p_min sit at 1/d; the answer is then the uniform distribution.
inline std::optional<int> kappa_arcs(const SingleBoundQuery& q) {
    validate(q);
    const double d = q.d;
    const double denom = d * q.p_min * q.p_min - 2.0 * q.p_min + q.k;
    if (denom <= detail::degenerate_denominator) return std::nullopt;
    const double num = (1.0 - d * q.p_min) * (1.0 - d * q.p_min);
    const auto big_k = numeric::floor_snap(num / denom);
    return static_cast<int>(std::clamp<std::int64_t>(big_k, 1, q.d));
}

inline ExtremalDistribution extremal_distribution(const SingleBoundQuery& q) {
    const auto kappa = kappa_arcs(q);
    if (!kappa || *kappa >= q.d) return detail::uniform_extremal(q.d);

    const int big_k = *kappa;
    const double kk = big_k;
    const double d = q.d;
    const double p = q.p_min;
    const double k = q.k;

    const double radicand =
        kk * (k + kk * k - 1.0 + p * (d * p + 2.0 * d + kk * d * p - d * d * p - 2.0 * kk - 2.0));
    const double delta = detail::checked_sqrt(radicand, "extremal distribution");

    const int n_floor = q.d - big_k - 1;
    const double top = (kk * (1.0 + p * (kk + 1.0 - d)) + delta) / (kk * kk + kk);
    const double mid = 1.0 - p * n_floor - kk * top;

    return {detail::assemble_levels(q.d, n_floor, p, mid, big_k, top), big_k, delta, n_floor, std::max(mid, 0.0),
            top};
}

inline double h_hat(const SingleBoundQuery& q) { return shannon_entropy(extremal_distribution(q).dist); }

/// The p_min = 0 bound. Evaluated from the reduced closed form (plateau
/// size floor(1/k), radicand k(1+K)K - K) rather than through h_hat.
inline double h_tilde(int d, double k) {
    detail::require_dimension(d);
    const double lo = 1.0 / d;
    if (!std::isfinite(k) || k < lo - detail::k_range_tol || k > 1.0 + detail::k_range_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "k = " << k << " outside [1/d, 1] = [" << lo << ", 1] for d = " << d;
        throw Error(ErrorKind::range, os.str());
    }
    const auto big_k = std::clamp<std::int64_t>(numeric::floor_snap(1.0 / k), 1, d);
    if (big_k >= d) return std::log(static_cast<double>(d));

    const double kk = static_cast<double>(big_k);
    const double delta = detail::checked_sqrt(kk * (k + kk * k - 1.0), "h_tilde");
    const double top = (kk + delta) / (kk * kk + kk);
    const double mid = 1.0 - kk * top;
    return kk * numeric::xlogx_term(top) + numeric::xlogx_term(mid);
}

} // namespace mubent
