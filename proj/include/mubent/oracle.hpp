#pragma once

// Brute-force verifiers for the closed forms. Nothing in here evaluates the
// extremal distribution or the arc decomposition; the k-space search uses
// h_tilde only as its objective.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "mubent/entropy.hpp"
#include "mubent/error.hpp"
#include "mubent/numeric.hpp"
#include "mubent/single_bound.hpp"

namespace mubent::oracle {

struct SearchConfig {
    std::int64_t budget = 1'000'000;
    std::uint64_t seed = 0;
    double ic_band = 1e-4;
    int refine_steps = 200;
    int streams = 8;
    double lattice_step = 1e-3;  // k-space search only

    void validate() const {
        if (budget < 1000) throw Error(ErrorKind::range, "search budget must be at least 1000");
        if (!(ic_band >= 1e-6 && ic_band <= 1e-2)) throw Error(ErrorKind::range, "ic_band must lie in [1e-6, 1e-2]");
        if (refine_steps < 0) throw Error(ErrorKind::range, "refine_steps must be non-negative");
        if (streams < 1) throw Error(ErrorKind::range, "need at least one sampling stream");
        if (!(lattice_step > 0.0 && lattice_step <= 0.1)) throw Error(ErrorKind::range, "lattice_step must lie in (0, 0.1]");
    }
};

struct SearchResult {
    double best_entropy = std::numeric_limits<double>::quiet_NaN();
    std::optional<Distribution> best_dist;
    std::int64_t feasible_count = 0;
    SingleBoundQuery target;

    bool inconclusive() const noexcept { return feasible_count == 0; }
};

namespace detail {

inline double entropy_of(std::span<const double> p) noexcept {
    double h = 0.0;
    for (double x : p) h += numeric::xlogx_term(x);
    return h;
}

inline double ic_of(std::span<const double> p) noexcept {
    double s = 0.0;
    for (double x : p) s += x * x;
    return s;
}

/// Scale the deviation from the uniform point so that sum p_i^2 == k exactly.
/// Sum is untouched. Returns false when the sample is the uniform point.
inline bool project_to_ic(std::vector<double>& p, double k) {
    const double u = 1.0 / static_cast<double>(p.size());
    double dev2 = 0.0;
    for (double x : p) dev2 += (x - u) * (x - u);
    const double target = k - u;
    if (dev2 < 1e-300) return std::abs(target) < 1e-300;
    const double t = std::sqrt(std::max(target, 0.0) / dev2);
    for (double& x : p) x = u + t * (x - u);
    return true;
}

inline bool respects_floor(const std::vector<double>& p, double p_min) {
    return std::all_of(p.begin(), p.end(), [&](double x) { return x >= p_min - 1e-12 && x >= -1e-12; });
}

/// Rotate (p_a, p_b, p_c) about their mean by `angle` inside the plane of
/// constant sum. Sum and sum of squares are preserved.
inline std::array<double, 3> rotate_triple(double a, double b, double c, double angle) {
    static const double r2 = std::sqrt(2.0);
    static const double r6 = std::sqrt(6.0);
    const double mean = (a + b + c) / 3.0;
    const double wa = a - mean, wb = b - mean, wc = c - mean;
    // orthonormal basis u = (1,-1,0)/sqrt2, v = (1,1,-2)/sqrt6 of the plane
    const double alpha = (wa - wb) / r2;
    const double beta = (wa + wb - 2.0 * wc) / r6;
    const double cs = std::cos(angle), sn = std::sin(angle);
    const double na = alpha * cs - beta * sn;
    const double nb = alpha * sn + beta * cs;
    return {mean + na / r2 + nb / r6, mean - na / r2 + nb / r6, mean - 2.0 * nb / r6};
}

/// Derivative-free descent over triple rotations with step halving.
inline void refine_candidate(std::vector<double>& p, double p_min, int steps) {
    const std::size_t d = p.size();
    if (d < 3) return;
    double angle = 0.25;
    for (int step = 0; step < steps; ++step) {
        bool improved = false;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b)
                for (std::size_t c = b + 1; c < d; ++c) {
                    const double before =
                        numeric::xlogx_term(p[a]) + numeric::xlogx_term(p[b]) + numeric::xlogx_term(p[c]);
                    for (double sgn : {1.0, -1.0}) {
                        const auto r = rotate_triple(p[a], p[b], p[c], sgn * angle);
                        if (std::min({r[0], r[1], r[2]}) < p_min || std::min({r[0], r[1], r[2]}) < 0.0) continue;
                        const double after =
                            numeric::xlogx_term(r[0]) + numeric::xlogx_term(r[1]) + numeric::xlogx_term(r[2]);
                        if (after < before - 1e-15) {
                            p[a] = r[0];
                            p[b] = r[1];
                            p[c] = r[2];
                            improved = true;
                            break;
                        }
                    }
                }
        if (!improved) {
            angle *= 0.5;
            if (angle < 1e-14) break;
        }
    }
}

struct Candidate {
    double entropy;
    std::vector<double> probs;
};

} // namespace detail

/// Brute-force minimum of H over distributions with floor p_min and IC = k.
/// Samples come from the floored simplex (Dirichlet(1)) and from the
/// three-level family (floor run, free middle, plateau of j tops); each one is
/// pushed radially onto the IC = k sphere, then the best few are refined.
inline SearchResult search_min_entropy_single(int d, double k, double p_min, const SearchConfig& config) {
    config.validate();
    if (d < 1) throw Error(ErrorKind::range, "d must be a positive integer");
    if (p_min < 0.0 || p_min * d > 1.0 + 1e-12) throw Error(ErrorKind::infeasible, "p_min outside [0, 1/d]");
    const double rest = 1.0 - (d - 1) * p_min;
    const double k_hi = (d - 1) * p_min * p_min + rest * rest;
    if (k < 1.0 / d - 1e-12 || k > k_hi + 1e-12) throw Error(ErrorKind::infeasible, "k outside the feasible range");

    SearchResult result;
    result.target = {d, k, p_min};
    constexpr std::size_t keep = 6;
    std::vector<detail::Candidate> best;

    auto offer = [&](std::vector<double>& p) {
        if (!detail::project_to_ic(p, k)) return;
        if (!detail::respects_floor(p, p_min)) return;
        for (double& x : p) x = std::max(x, 0.0);
        if (std::abs(detail::ic_of(p) - k) > config.ic_band) return;
        ++result.feasible_count;
        const double h = detail::entropy_of(p);
        if (best.size() < keep || h < best.back().entropy) {
            auto pos = std::upper_bound(best.begin(), best.end(), h,
                                        [](double v, const detail::Candidate& c) { return v < c.entropy; });
            best.insert(pos, {h, p});
            if (best.size() > keep) best.pop_back();
        }
    };

    const double spare = 1.0 - d * p_min;
    const std::int64_t per_stream = config.budget / config.streams;
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int s = 0; s < config.streams; ++s) {
        std::seed_seq seq{config.seed, static_cast<std::uint64_t>(s)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::exponential_distribution<double> expo(1.0);
        const std::int64_t n = per_stream + (s < config.budget % config.streams ? 1 : 0);
        for (std::int64_t i = 0; i < n; ++i) {
            if (i % 2 == 0 || d < 2) {
                double total = 0.0;
                for (auto& x : p) total += (x = expo(rng));
                for (auto& x : p) x = p_min + spare * x / total;
            } else {
                const int plateau = 1 + static_cast<int>(unit(rng) * (d - 1));
                const int n_floor = d - plateau - 1;
                const double free_mass = 1.0 - n_floor * p_min;
                const double mid = p_min + unit(rng) * (free_mass / (plateau + 1) - p_min);
                const double top = (free_mass - mid) / plateau;
                std::fill(p.begin(), p.begin() + n_floor, p_min);
                p[static_cast<std::size_t>(n_floor)] = mid;
                std::fill(p.begin() + n_floor + 1, p.end(), top);
            }
            offer(p);
        }
    }
    if (best.empty()) return result;

    for (auto& c : best) {
        detail::refine_candidate(c.probs, p_min, config.refine_steps);
        c.entropy = detail::entropy_of(c.probs);
    }
    const auto winner = std::min_element(best.begin(), best.end(),
                                         [](const auto& a, const auto& b) { return a.entropy < b.entropy; });
    result.best_entropy = winner->entropy;
    auto probs = winner->probs;
    std::sort(probs.begin(), probs.end());
    result.best_dist = Distribution(std::move(probs));
    return result;
}

struct ThreeProbInstance {
    double eps = 0.0;
    double k_pair = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
};

namespace detail {

inline void require_three_feasible(double eps, double k_pair) {
    if (!(eps > 0.0) || eps > 1.0 + 1e-12 || k_pair < eps * eps / 3.0 - 1e-12 || k_pair > eps * eps + 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "(eps, k') = (" << eps << ", " << k_pair << ") needs 0 < eps <= 1 and eps^2/3 <= k' <= eps^2";
        throw Error(ErrorKind::range, os.str());
    }
}

inline double three_radicand(double eps, double k_pair) { return std::max(6.0 * k_pair - 2.0 * eps * eps, 0.0); }

} // namespace detail

/// Minimum-entropy triple with sum eps and squared sum k'. The two larger
/// entries coincide unless that would force p1 < 0 (k' > eps^2 / 2), in which
/// case p1 = 0 and the remaining pair is fixed by the two constraints.
inline ThreeProbInstance three_prob_min(double eps, double k_pair) {
    detail::require_three_feasible(eps, k_pair);
    const double root = std::sqrt(detail::three_radicand(eps, k_pair));
    ThreeProbInstance t{eps, k_pair, eps / 3.0 - root / 3.0, eps / 3.0 + root / 6.0, eps / 3.0 + root / 6.0};
    if (t.p1 < 0.0) {
        const double half_gap = std::sqrt(std::max(2.0 * k_pair - eps * eps, 0.0)) / 2.0;
        t.p1 = 0.0;
        t.p2 = eps / 2.0 - half_gap;
        t.p3 = eps / 2.0 + half_gap;
    }
    return t;
}

inline double three_prob_entropy(const ThreeProbInstance& t) noexcept {
    return numeric::xlogx_term(t.p1) + numeric::xlogx_term(t.p2) + numeric::xlogx_term(t.p3);
}

/// Feasible interval of p1 given (eps, k') with p1 <= p2 <= p3 and p1 >= 0.
inline std::pair<double, double> p1_interval(double eps, double k_pair) {
    detail::require_three_feasible(eps, k_pair);
    const double root = std::sqrt(detail::three_radicand(eps, k_pair));
    return {std::max(0.0, (eps - root) / 3.0), eps / 3.0 - root / 6.0};
}

/// H(p1) + H(p2) + H(p3) with p2, p3 solved from (p1, eps, k').
inline double three_entropy_at(double p1, double eps, double k_pair) {
    const double delta = std::sqrt(std::max(2.0 * eps * p1 - eps * eps - 3.0 * p1 * p1 + 2.0 * k_pair, 0.0)) / 2.0;
    const double p2 = eps / 2.0 - p1 / 2.0 - delta;
    const double p3 = eps / 2.0 - p1 / 2.0 + delta;
    return numeric::xlogx_term(p1) + numeric::xlogx_term(p2) + numeric::xlogx_term(p3);
}

struct MonotonicityReport {
    bool non_decreasing = true;
    double min_slope = std::numeric_limits<double>::infinity();
    int points = 0;
    double p1_lo = 0.0;
    double p1_hi = 0.0;
};

inline MonotonicityReport p1_monotonicity_check(double eps, double k_pair, int grid) {
    if (grid < 2) throw Error(ErrorKind::range, "grid needs at least two points");
    MonotonicityReport r;
    std::tie(r.p1_lo, r.p1_hi) = p1_interval(eps, k_pair);
    const double width = r.p1_hi - r.p1_lo;
    if (width <= 1e-15) {
        r.points = 1;
        r.min_slope = 0.0;
        return r;
    }
    r.points = grid;
    double prev = three_entropy_at(r.p1_lo, eps, k_pair);
    const double h = width / (grid - 1);
    for (int i = 1; i < grid; ++i) {
        const double x = i + 1 == grid ? r.p1_hi : r.p1_lo + i * h;
        const double cur = three_entropy_at(x, eps, k_pair);
        r.min_slope = std::min(r.min_slope, (cur - prev) / h);
        if (cur < prev - 1e-10) r.non_decreasing = false;
        prev = cur;
    }
    return r;
}

/// Lattice minimum of the triple entropy over p1 in step * Z (plus the right
/// end of the feasible interval). Used as the grid oracle for three_prob_min.
inline double three_prob_grid_min(double eps, double k_pair, double step = 1e-3) {
    const auto [lo, hi] = p1_interval(eps, k_pair);
    double best = three_entropy_at(hi, eps, k_pair);
    for (auto i = static_cast<std::int64_t>(std::ceil(lo / step)); i * step <= hi; ++i)
        best = std::min(best, three_entropy_at(static_cast<double>(i) * step, eps, k_pair));
    return best;
}

struct KSpaceResult {
    double best_sum = std::numeric_limits<double>::infinity();
    std::vector<double> best_k;
    std::int64_t lattice_points = 0;
};

/// Minimum of sum h_tilde(d_i, k_i) over k_i in [1/d_i, 1] with sum k_i = k_tot.
/// Exhaustive over a lattice on the first M-1 coordinates (the last one takes
/// the remainder), followed by pairwise-transfer polishing of the best point.
inline KSpaceResult search_min_entropy_multi(int M, double k_tot, const std::vector<int>& dims,
                                             const SearchConfig& config) {
    config.validate();
    if (M < 1) throw Error(ErrorKind::range, "M must be a positive integer");
    if (M > 4) throw Error(ErrorKind::range, "lattice search is limited to M <= 4");
    if (dims.size() != static_cast<std::size_t>(M)) throw Error(ErrorKind::dimension_mismatch, "need one dimension per distribution");
    double floor_sum = 0.0;
    for (int d : dims) floor_sum += 1.0 / d;
    if (k_tot < floor_sum - 1e-12 || k_tot > M + 1e-12) throw Error(ErrorKind::infeasible, "k_tot outside the feasible budget");

    const double step = config.lattice_step;
    const double tol = 1e-12;
    std::vector<std::vector<double>> ks(static_cast<std::size_t>(M));
    std::vector<std::vector<double>> hs(static_cast<std::size_t>(M));
    for (int i = 0; i + 1 < M; ++i) {
        const double lo = 1.0 / dims[static_cast<std::size_t>(i)];
        auto& k = ks[static_cast<std::size_t>(i)];
        k.push_back(lo);
        for (auto j = static_cast<std::int64_t>(std::floor(lo / step)) + 1; j * step <= 1.0 + tol; ++j)
            if (j * step > lo) k.push_back(static_cast<double>(j) * step);
        for (double x : k) hs[static_cast<std::size_t>(i)].push_back(h_tilde(dims[static_cast<std::size_t>(i)], x));
    }
    const int d_last = dims.back();
    const double last_lo = 1.0 / d_last;

    KSpaceResult out;
    std::vector<std::size_t> at(static_cast<std::size_t>(M), 0);
    std::vector<std::size_t> best_at;
    double best_last = 0.0;

    std::function<void(int, double, double)> walk = [&](int i, double used, double h_sum) {
        if (i == M - 1) {
            const double last = k_tot - used;
            if (last < last_lo - tol || last > 1.0 + tol) return;
            ++out.lattice_points;
            const double total = h_sum + h_tilde(d_last, std::clamp(last, last_lo, 1.0));
            if (total < out.best_sum) {
                out.best_sum = total;
                best_at = at;
                best_last = last;
            }
            return;
        }
        const auto& k = ks[static_cast<std::size_t>(i)];
        // remaining coordinates need at least their floors and at most 1 each
        double rest_lo = 0.0;
        for (int j = i + 1; j < M; ++j) rest_lo += 1.0 / dims[static_cast<std::size_t>(j)];
        const double rest_hi = M - 1 - i;
        for (std::size_t j = 0; j < k.size(); ++j) {
            const double next = used + k[j];
            if (next + rest_lo > k_tot + tol) break;
            if (next + rest_hi < k_tot - tol) continue;
            at[static_cast<std::size_t>(i)] = j;
            walk(i + 1, next, h_sum + hs[static_cast<std::size_t>(i)][j]);
        }
    };
    walk(0, 0.0, 0.0);
    if (best_at.empty() && M > 1) return out;

    std::vector<double> k(static_cast<std::size_t>(M));
    for (int i = 0; i + 1 < M; ++i) k[static_cast<std::size_t>(i)] = ks[static_cast<std::size_t>(i)][best_at[static_cast<std::size_t>(i)]];
    k.back() = M == 1 ? k_tot : best_last;
    if (M == 1) {
        out.lattice_points = 1;
        out.best_sum = h_tilde(dims[0], std::clamp(k_tot, 1.0 / dims[0], 1.0));
    }

    auto value = [&](std::size_t i, double x) {
        return h_tilde(dims[i], std::clamp(x, 1.0 / dims[i], 1.0));
    };
    for (double delta = step; delta > 1e-13; delta *= 0.5) {
        bool improved = true;
        for (int sweep = 0; improved && sweep < config.refine_steps; ++sweep) {
            improved = false;
            for (std::size_t a = 0; a < k.size(); ++a)
                for (std::size_t b = 0; b < k.size(); ++b) {
                    if (a == b) continue;
                    const double ka = k[a] + delta;
                    const double kb = k[b] - delta;
                    if (ka > 1.0 + tol || kb < 1.0 / dims[b] - tol) continue;
                    const double gain = value(a, ka) + value(b, kb) - value(a, k[a]) - value(b, k[b]);
                    if (gain < -1e-15) {
                        k[a] = ka;
                        k[b] = kb;
                        improved = true;
                    }
                }
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) total += value(i, k[i]);
    out.best_sum = total;
    out.best_k = k;
    return out;
}

} // namespace mubent::oracle
