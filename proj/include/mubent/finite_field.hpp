#pragma once

// GF(p^n) by explicit tables. Elements are integers 0..q-1 whose base-p digits
// are the polynomial coefficients (least significant digit = constant term).

#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "mubent/error.hpp"

namespace mubent {

inline bool is_prime(int n) noexcept {
    if (n < 2) return false;
    for (int f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

/// Returns {p, n} with d = p^n, or {0, 0} if d is not a prime power.
inline std::pair<int, int> prime_power_decomposition(int d) noexcept {
    if (d < 2) return {0, 0};
    int p = 2;
    while (d % p != 0) ++p;
    int n = 0;
    int rest = d;
    while (rest % p == 0) {
        rest /= p;
        ++n;
    }
    return rest == 1 ? std::pair{p, n} : std::pair{0, 0};
}

inline bool is_prime_power(int d) noexcept { return prime_power_decomposition(d).first != 0; }

class FiniteField {
public:
    /// `irreducible` holds the n+1 coefficients of a monic irreducible
    /// polynomial, constant term first. Irreducibility is the caller's job;
    /// the table checks in the tests catch a bad choice.
    FiniteField(int p, int n, std::vector<int> irreducible)
        : p_(p), n_(n), irreducible_(std::move(irreducible)) {
        if (!is_prime(p) || n < 1) throw Error(ErrorKind::range, "field characteristic must be prime, degree >= 1");
        if (irreducible_.size() != static_cast<std::size_t>(n + 1) || irreducible_.back() != 1)
            throw Error(ErrorKind::range, "defining polynomial must be monic of degree n");
        order_ = 1;
        for (int i = 0; i < n; ++i) order_ *= p;
        build_tables();
    }

    /// Fields with the fixed defining polynomials used for MUB construction:
    /// any prime, and GF(4) = x^2+x+1, GF(8) = x^3+x+1, GF(9) = x^2+1.
    static FiniteField of_order(int q) {
        if (is_prime(q)) return FiniteField(q, 1, {0, 1});
        switch (q) {
        case 4: return FiniteField(2, 2, {1, 1, 1});
        case 8: return FiniteField(2, 3, {1, 1, 0, 1});
        case 9: return FiniteField(3, 2, {1, 0, 1});
        default: break;
        }
        std::ostringstream os;
        os << "no finite field table for order " << q;
        throw Error(ErrorKind::unsupported_dimension, os.str());
    }

    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return n_; }
    int order() const noexcept { return order_; }
    const std::vector<int>& irreducible() const noexcept { return irreducible_; }

    int add(int a, int b) const { return add_[idx(a, b)]; }
    int mul(int a, int b) const { return mul_[idx(a, b)]; }
    int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
    /// Absolute trace into the prime subfield, as an integer mod p.
    int trace(int a) const { return trace_[static_cast<std::size_t>(a)]; }

    /// Element x^i (the polynomial basis vector).
    int basis_element(int i) const {
        int e = 1;
        for (int j = 0; j < i; ++j) e *= p_;
        return e;
    }
    /// Base-p digit i of an element (its coefficient on x^i).
    int digit(int a, int i) const { return (a / basis_element(i)) % p_; }

private:
    std::size_t idx(int a, int b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(b);
    }

    std::vector<int> to_poly(int a) const {
        std::vector<int> c(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            c[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
        }
        return c;
    }

    int from_poly(const std::vector<int>& c) const {
        int a = 0;
        for (int i = n_ - 1; i >= 0; --i) a = a * p_ + c[static_cast<std::size_t>(i)];
        return a;
    }

    int poly_mul(int a, int b) const {
        const auto x = to_poly(a);
        const auto y = to_poly(b);
        std::vector<int> prod(static_cast<std::size_t>(2 * n_ - 1), 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                prod[static_cast<std::size_t>(i + j)] =
                    (prod[static_cast<std::size_t>(i + j)] + x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)]) % p_;
        // reduce modulo the monic defining polynomial, highest degree first
        for (int deg = 2 * n_ - 2; deg >= n_; --deg) {
            const int c = prod[static_cast<std::size_t>(deg)];
            if (c == 0) continue;
            for (int i = 0; i <= n_; ++i) {
                auto& slot = prod[static_cast<std::size_t>(deg - n_ + i)];
                slot = ((slot - c * irreducible_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
            }
        }
        prod.resize(static_cast<std::size_t>(n_));
        return from_poly(prod);
    }

    void build_tables() {
        const auto q = static_cast<std::size_t>(order_);
        add_.assign(q * q, 0);
        mul_.assign(q * q, 0);
        neg_.assign(q, 0);
        trace_.assign(q, 0);
        for (int a = 0; a < order_; ++a) {
            const auto pa = to_poly(a);
            std::vector<int> na(pa.size());
            for (std::size_t i = 0; i < pa.size(); ++i) na[i] = (p_ - pa[i]) % p_;
            neg_[static_cast<std::size_t>(a)] = from_poly(na);
            for (int b = 0; b < order_; ++b) {
                const auto pb = to_poly(b);
                std::vector<int> s(pa.size());
                for (std::size_t i = 0; i < pa.size(); ++i) s[i] = (pa[i] + pb[i]) % p_;
                add_[idx(a, b)] = from_poly(s);
                mul_[idx(a, b)] = poly_mul(a, b);
            }
        }
        for (int a = 0; a < order_; ++a) {
            // Tr(a) = a + a^p + ... + a^(p^(n-1))
            int acc = 0;
            int power = a;
            for (int i = 0; i < n_; ++i) {
                acc = add(acc, power);
                int next = 1;
                for (int j = 0; j < p_; ++j) next = mul(next, power);
                power = next;
            }
            if (acc >= p_) throw Error(ErrorKind::range, "trace left the prime subfield; polynomial is not irreducible");
            trace_[static_cast<std::size_t>(a)] = acc;
        }
    }

    int p_;
    int n_;
    int order_ = 1;
    std::vector<int> irreducible_;
    std::vector<int> add_;
    std::vector<int> mul_;
    std::vector<int> neg_;
    std::vector<int> trace_;
};

} // namespace mubent
