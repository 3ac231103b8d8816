#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "mubent/error.hpp"
#include "mubent/numeric.hpp"

namespace mubent {

/// A probability vector over d outcomes. Validated on construction and
/// immutable afterwards; never renormalized behind the caller's back.
class Distribution {
public:
    static constexpr double sum_tol = 1e-9;

    explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw Error(ErrorKind::invalid_distribution, "empty probability vector");
        double total = 0.0;
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            const double p = probs_[i];
            if (!std::isfinite(p) || p < 0.0 || p > 1.0 + sum_tol) {
                std::ostringstream os;
                os << "entry " << i << " = " << p << " outside [0, 1]";
                throw Error(ErrorKind::invalid_distribution, os.str());
            }
            total += p;
        }
        if (std::abs(total - 1.0) > sum_tol) {
            std::ostringstream os;
            os.precision(17);
            os << "probabilities sum to " << total;
            throw Error(ErrorKind::invalid_distribution, os.str());
        }
    }

    static Distribution uniform(std::size_t d) {
        if (d == 0) throw Error(ErrorKind::invalid_distribution, "d must be positive");
        return Distribution(std::vector<double>(d, 1.0 / static_cast<double>(d)));
    }

    static Distribution point_mass(std::size_t d, std::size_t at = 0) {
        if (at >= d) throw Error(ErrorKind::invalid_distribution, "point mass index out of range");
        std::vector<double> p(d, 0.0);
        p[at] = 1.0;
        return Distribution(std::move(p));
    }

    std::size_t size() const noexcept { return probs_.size(); }
    std::span<const double> probs() const noexcept { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<double> probs_;
};

/// Shannon entropy in nats.
inline double shannon_entropy(const Distribution& dist) noexcept {
    double h = 0.0;
    for (double p : dist.probs()) h += numeric::xlogx_term(p);
    return h;
}

/// Index of coincidence, sum of squared probabilities.
inline double collision_probability(const Distribution& dist) noexcept {
    double ic = 0.0;
    for (double p : dist.probs()) ic += p * p;
    return ic;
}

inline double collision_entropy(const Distribution& dist) noexcept {
    return -std::log(collision_probability(dist));
}

struct EntropySummary {
    double shannon;
    double collision_prob;
    double collision_entropy;
};

inline EntropySummary summarize(const Distribution& dist) noexcept {
    const double ic = collision_probability(dist);
    return {shannon_entropy(dist), ic, -std::log(ic)};
}

} // namespace mubent
