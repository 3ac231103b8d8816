#pragma once

// Mutually unbiased bases for prime-power dimensions, quantum states, Born-rule
// statistics and the MUB entropic uncertainty bound built on multi_bound.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "mubent/entropy.hpp"
#include "mubent/error.hpp"
#include "mubent/finite_field.hpp"
#include "mubent/multi_bound.hpp"
#include "mubent/prior_bounds.hpp"

namespace mubent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Columns of each basis matrix are the basis vectors.
struct MubSet {
    int d = 0;
    std::vector<CMatrix> bases;

    std::size_t count() const noexcept { return bases.size(); }
};

inline constexpr std::array<int, 7> supported_mub_dimensions{2, 3, 4, 5, 7, 8, 9};

inline bool is_supported_mub_dimension(int d) noexcept {
    return std::find(supported_mub_dimensions.begin(), supported_mub_dimensions.end(), d) !=
           supported_mub_dimensions.end();
}

namespace detail {

inline cplx root_of_unity(int order, int power) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(((power % order) + order) % order) / order;
    return std::polar(1.0, angle);
}

inline CMatrix qubit_basis(int which) {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix b(2, 2);
    switch (which) {
    case 0: b << 1.0, 0.0, 0.0, 1.0; break;                       // computational
    case 1: b << s, s, s, -s; break;                               // diagonal
    default: b << s, s, cplx(0.0, s), cplx(0.0, -s); break;        // circular
    }
    return b;
}

/// Odd characteristic: v_{m,j}(x) = w_p^Tr(m x^2 + j x) / sqrt(q).
inline CMatrix odd_field_basis(const FiniteField& f, int m) {
    const int q = f.order();
    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    CMatrix b(q, q);
    for (int j = 0; j < q; ++j) {
        for (int x = 0; x < q; ++x) {
            const int arg = f.add(f.mul(m, f.mul(x, x)), f.mul(j, x));
            b(x, j) = norm * root_of_unity(f.characteristic(), f.trace(arg));
        }
    }
    return b;
}

/// Characteristic 2: v_{m,j}(x) = i^(x^T S_m x) (-1)^Tr(j x) / sqrt(q) with
/// S_m[a][b] = Tr(m e_a e_b) and the quadratic form lifted to the integers mod 4.
inline CMatrix even_field_basis(const FiniteField& f, int m) {
    const int q = f.order();
    const int n = f.degree();
    std::vector<int> s(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
            s[static_cast<std::size_t>(a * n + c)] = f.trace(f.mul(m, f.mul(f.basis_element(a), f.basis_element(c))));

    const double norm = 1.0 / std::sqrt(static_cast<double>(q));
    CMatrix b(q, q);
    for (int x = 0; x < q; ++x) {
        int quad = 0;
        for (int a = 0; a < n; ++a) {
            const int xa = f.digit(x, a);
            quad += s[static_cast<std::size_t>(a * n + a)] * xa;
            for (int c = a + 1; c < n; ++c) quad += 2 * s[static_cast<std::size_t>(a * n + c)] * xa * f.digit(x, c);
        }
        const cplx phase = root_of_unity(4, quad);
        for (int j = 0; j < q; ++j) b(x, j) = norm * phase * root_of_unity(2, f.trace(f.mul(j, x)));
    }
    return b;
}

} // namespace detail

/// The full set of d+1 MUBs. Basis 0 is the computational basis.
inline MubSet build_mubs(int d) {
    if (!is_supported_mub_dimension(d)) {
        std::ostringstream os;
        os << "d = " << d << " is not a supported prime power {2,3,4,5,7,8,9}";
        if (!is_prime_power(d))
            os << "; for non-prime-power d (e.g. 6) whether d+1 MUBs exist is an open question";
        throw Error(ErrorKind::unsupported_dimension, os.str());
    }
    MubSet set{d, {}};
    if (d == 2) {
        for (int i = 0; i < 3; ++i) set.bases.push_back(detail::qubit_basis(i));
        return set;
    }
    const auto field = FiniteField::of_order(d);
    set.bases.push_back(CMatrix::Identity(d, d));
    for (int m = 0; m < d; ++m) {
        set.bases.push_back(field.characteristic() == 2 ? detail::even_field_basis(field, m)
                                                        : detail::odd_field_basis(field, m));
    }
    return set;
}

/// max |<a_i|a_j> - delta_ij| over the basis.
inline double orthonormality_error(const CMatrix& basis) {
    const CMatrix gram = basis.adjoint() * basis;
    return (gram - CMatrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
}

/// max | |<a_i|b_j>|^2 - 1/d | over all pairs of distinct bases.
inline double unbiasedness_error(const MubSet& set) {
    double worst = 0.0;
    const double target = 1.0 / set.d;
    for (std::size_t a = 0; a < set.count(); ++a) {
        for (std::size_t b = a + 1; b < set.count(); ++b) {
            const CMatrix overlap = set.bases[a].adjoint() * set.bases[b];
            worst = std::max(worst, (overlap.cwiseAbs2().array() - target).abs().maxCoeff());
        }
    }
    return worst;
}

class DensityMatrix {
public:
    static constexpr double hermitian_tol = 1e-12;
    static constexpr double trace_tol = 1e-12;
    static constexpr double eigen_floor = -1e-10;

    explicit DensityMatrix(CMatrix entries) : rho_(std::move(entries)) {
        if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
            throw Error(ErrorKind::invalid_state, "density matrix must be square and non-empty");
        const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
        if (herm > hermitian_tol) {
            std::ostringstream os;
            os << "not Hermitian (deviation " << herm << ")";
            throw Error(ErrorKind::invalid_state, os.str());
        }
        const cplx tr = rho_.trace();
        if (std::abs(tr - 1.0) > trace_tol) {
            std::ostringstream os;
            os.precision(17);
            os << "trace " << tr << " is not 1";
            throw Error(ErrorKind::invalid_state, os.str());
        }
        const Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho_, Eigen::EigenvaluesOnly);
        const double smallest = eig.eigenvalues().minCoeff();
        if (smallest < eigen_floor) {
            std::ostringstream os;
            os << "not positive semidefinite (eigenvalue " << smallest << ")";
            throw Error(ErrorKind::invalid_state, os.str());
        }
    }

    static DensityMatrix maximally_mixed(int d) {
        return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
    }

    /// |psi><psi| for a (not necessarily normalized) non-zero vector.
    static DensityMatrix pure(const CVector& psi) {
        const double n = psi.norm();
        if (!(n > 0.0)) throw Error(ErrorKind::invalid_state, "zero state vector");
        const CVector v = psi / n;
        return DensityMatrix(hermitian_part(v * v.adjoint()));
    }

    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    const CMatrix& entries() const noexcept { return rho_; }
    /// Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    double purity() const { return rho_.cwiseAbs2().sum(); }

    static CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

private:
    CMatrix rho_;
};

enum class StateMode { pure, mixed };

/// Pure: projector on a normalized standard complex Gaussian vector.
/// Mixed: G G^dagger / Tr(G G^dagger) for a d x d complex Gaussian G.
inline DensityMatrix sample_density_matrix(int d, StateMode mode, std::uint64_t seed) {
    if (d < 2) throw Error(ErrorKind::range, "state dimension must be at least 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto draw = [&] {
        const double re = gauss(rng);
        const double im = gauss(rng);
        return cplx(re, im);
    };
    if (mode == StateMode::pure) {
        CVector psi(d);
        for (int i = 0; i < d; ++i) psi(i) = draw();
        return DensityMatrix::pure(psi);
    }
    CMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = draw();
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(DensityMatrix::hermitian_part(rho));
}

/// Born rule p_i = <b_i|rho|b_i>.
inline Distribution measurement_distribution(const DensityMatrix& rho, const CMatrix& basis) {
    if (basis.rows() != rho.dim() || basis.cols() != rho.dim()) {
        std::ostringstream os;
        os << "basis is " << basis.rows() << "x" << basis.cols() << ", state has dimension " << rho.dim();
        throw Error(ErrorKind::dimension_mismatch, os.str());
    }
    std::vector<double> p(static_cast<std::size_t>(rho.dim()));
    for (int i = 0; i < rho.dim(); ++i) {
        const double v = (basis.col(i).adjoint() * rho.entries() * basis.col(i))(0, 0).real();
        if (v < -1e-10) throw Error(ErrorKind::invalid_state, "negative outcome probability");
        p[static_cast<std::size_t>(i)] = std::max(v, 0.0);
    }
    return Distribution(std::move(p));
}

struct LarsenReport {
    std::vector<double> per_basis_ic;
    double lhs = 0.0;       // sum of collision probabilities over all d+1 bases
    double rhs = 0.0;       // Tr(rho^2) + 1
    double residual = 0.0;  // |lhs - rhs|
};

inline LarsenReport larsen_check(const DensityMatrix& rho, const MubSet& mubs) {
    if (mubs.d != rho.dim()) throw Error(ErrorKind::dimension_mismatch, "state and MUB set dimensions differ");
    if (mubs.count() != static_cast<std::size_t>(mubs.d + 1)) {
        std::ostringstream os;
        os << "identity needs all " << mubs.d + 1 << " bases, got " << mubs.count();
        throw Error(ErrorKind::range, os.str());
    }
    LarsenReport r;
    for (const auto& basis : mubs.bases) {
        r.per_basis_ic.push_back(collision_probability(measurement_distribution(rho, basis)));
        r.lhs += r.per_basis_ic.back();
    }
    r.rhs = rho.purity() + 1.0;
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

/// Lower bound on the summed Shannon entropy of M <= d+1 MUB measurements in
/// prime-power dimension d: multi_bound with budget (d + M - 1) / d.
inline ArcDecomposition mub_entropy_decomposition(int d, int M) {
    if (!is_prime_power(d)) {
        std::ostringstream os;
        os << "d = " << d << " is not a prime power";
        if (d == 6) os << "; the number of MUBs in dimension 6 is an open question";
        throw Error(ErrorKind::unsupported_dimension, os.str());
    }
    return multi_bound(MultiBoundQuery::uniform_dims(M, k_tot_cap(d, M), d));
}

inline double mub_entropy_bound(int d, int M) { return mub_entropy_decomposition(d, M).bound; }

} // namespace mubent
