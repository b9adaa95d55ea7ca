#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "circsys/numbers.hpp"

namespace circsys {

/**
 * Exact arithmetic for a circular coefficient sequence <k_n, l_n>.
 *
 * Derived per level n:
 *   q_0 = 1,  q_{n+1} = k_n * l_n * q_n^2
 *   p_0 = 0,  p_{n+1} = p_n * q_n * k_n * l_n + 1
 *   p_inv_n  = p_n^{-1} mod q_n   (p_inv_0 = 0 by convention)
 *   K_n      = prod_{i<n} k_i
 *   A_0 = 0,  A_{n+1} = A_n - p_inv_n
 *
 * All values are arbitrary-precision integers. The summability condition
 * on sum 1/l_n is a property of infinite sequences; only the finite prefix
 * is recorded here and it is not enforced.
 *
 * Immutable after construction; safe to share across threads.
 */
class CoefficientSystem {
public:
    // `top_level` is the highest derived index; q, p, ... get entries 0..top_level.
    // Defaults to as many levels as the coefficient lists support.
    static CoefficientSystem derive(std::vector<std::int64_t> k, std::vector<std::int64_t> l,
                                    int top_level = -1) {
        if (k.size() != l.size())
            throw std::invalid_argument("derive: k and l must have equal length");
        if (top_level < 0) top_level = static_cast<int>(k.size());
        if (top_level > static_cast<int>(k.size()))
            throw std::invalid_argument("derive: requested levels exceed provided coefficients");
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] < 2) throw std::invalid_argument("derive: k[" + std::to_string(i) + "] < 2");
            if (l[i] < 2) throw std::invalid_argument("derive: l[" + std::to_string(i) + "] < 2");
        }
        CoefficientSystem cs;
        cs.k_ = std::move(k);
        cs.l_ = std::move(l);
        cs.q_.assign(1, 1);
        cs.p_.assign(1, 0);
        cs.p_inv_.assign(1, 0);  // convention: p_0^{-1} = 0
        cs.kprod_.assign(1, 1);
        cs.a_.assign(1, 0);
        for (int n = 0; n < top_level; ++n) {
            const BigInt& q = cs.q_[n];
            const BigInt& p = cs.p_[n];
            BigInt kl = BigInt(cs.k_[n]) * cs.l_[n];
            cs.q_.push_back(kl * q * q);
            cs.p_.push_back(p * q * kl + 1);
            cs.kprod_.push_back(cs.kprod_[n] * cs.k_[n]);
            cs.a_.push_back(cs.a_[n] - cs.p_inv_[n]);
            cs.p_inv_.push_back(mod_inverse(cs.p_.back(), cs.q_.back()));
            if (abs(cs.a_[n + 1]) >= 2 * cs.q_[n])
                throw std::logic_error("derive: |A_{n+1}| < 2 q_n violated");
        }
        return cs;
    }

    int top_level() const { return static_cast<int>(q_.size()) - 1; }

    std::int64_t k(int n) const { check_coeff(n); return k_[n]; }
    std::int64_t l(int n) const { check_coeff(n); return l_[n]; }

    const BigInt& q(int n) const { check_level(n); return q_[n]; }
    const BigInt& p(int n) const { check_level(n); return p_[n]; }
    const BigInt& p_inv(int n) const { check_level(n); return p_inv_[n]; }
    const BigInt& big_k(int n) const { check_level(n); return kprod_[n]; }

    // A_n; |A_{n+1}| < 2 q_n holds by construction.
    const BigInt& a_shift(int n) const { check_level(n); return a_[n]; }

    // j_i = p_inv_n * i mod q_n, with 0 <= j_i < q_n.  Level 0 returns 0,
    // and j_{q_n} = 0 so i may equal q_n.
    BigInt j_index(int n, const BigInt& i) const {
        check_level(n);
        if (i < 0 || i > q_[n])
            throw std::out_of_range("j_index: i out of [0, q_n]");
        if (n == 0) return 0;
        return mod_floor(p_inv_[n] * i, q_[n]);
    }

    // Fraction of a level-(n+1) circular word covered by level-n words:
    // prod_{p=n}^{top-1} (1 - 1/l_p), the finite-horizon interior mass.
    Rational interior_fraction(int n, int top) const {
        check_level(top);
        if (n > top) throw std::invalid_argument("interior_fraction: n > top");
        Rational f = 1;
        for (int p = n; p < top; ++p) f *= Rational(l_[p] - 1, l_[p]);
        return f;
    }

private:
    void check_level(int n) const {
        if (n < 0 || n >= static_cast<int>(q_.size()))
            throw std::out_of_range("coefficient level out of range");
    }
    void check_coeff(int n) const {
        if (n < 0 || n >= static_cast<int>(k_.size()))
            throw std::out_of_range("coefficient index out of range");
    }

    std::vector<std::int64_t> k_, l_;
    std::vector<BigInt> q_, p_, p_inv_, kprod_, a_;
};

}  // namespace circsys
