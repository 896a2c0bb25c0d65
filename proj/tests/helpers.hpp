#pragma once

#include <random>
#include <vector>

#include "padsphere/lattice.hpp"
#include "padsphere/matrix.hpp"

namespace testutil {

using namespace padsphere;

using Rng = std::mt19937_64;

inline long long uniform_ll(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

// small integer coprime to p, in [1, 9]
inline Int coprime_unit(Rng& rng, const Prime& p) {
    for (;;) {
        Int u = uniform_ll(rng, 1, 9);
        if (u % p.value() != 0) return u;
    }
}

// exact rational with p-adic valuation uniform in [vmin, vmax]
inline Rat random_rational(Rng& rng, const Prime& p, long long vmin, long long vmax) {
    const long long v = uniform_ll(rng, vmin, vmax);
    Rat r = Rat(coprime_unit(rng, p), coprime_unit(rng, p)) * p_power(p, v);
    if (uniform_ll(rng, 0, 1)) r = -r;
    return r;
}

inline Mat random_invertible(Rng& rng, const Prime& p, std::size_t n, long long vmin = -2,
                             long long vmax = 2) {
    for (;;) {
        std::vector<Rat> e;
        e.reserve(n * n);
        for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_rational(rng, p, vmin, vmax));
        Mat m(p, n, std::move(e));
        if (m.invertible()) return m;
    }
}

inline Vec random_sphere_vector(Rng& rng, const Prime& p, std::size_t n, int digits = 6) {
    Int bound = 1;
    for (int i = 0; i < digits; ++i) bound *= p.value();
    for (;;) {
        std::vector<Rat> c;
        c.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Int x = Int(uniform_ll(rng, 0, 1'000'000'000)) % bound;
            c.push_back(Rat(x));
        }
        Vec v(p, std::move(c));
        if (!v.is_zero()) return v.normalize_to_sphere();
    }
}

// member of GL(n, Z_(p)): product of elementary column operations whose
// coefficients are units / p-integral
inline Mat random_unimodular(Rng& rng, const Prime& p, std::size_t n, int ops = 12) {
    Mat u = Mat::identity(p, n);
    for (int k = 0; k < ops; ++k) {
        const std::size_t i = uniform_ll(rng, 0, n - 1);
        std::size_t j = uniform_ll(rng, 0, n - 1);
        switch (uniform_ll(rng, 0, 2)) {
            case 0:  // swap columns
                if (i != j)
                    for (std::size_t r = 0; r < n; ++r) std::swap(u(r, i), u(r, j));
                break;
            case 1: {  // scale column by a unit of Z_(p)
                Rat s = Rat(coprime_unit(rng, p), coprime_unit(rng, p));
                if (uniform_ll(rng, 0, 1)) s = -s;
                for (std::size_t r = 0; r < n; ++r) u(r, i) *= s;
                break;
            }
            default: {  // add a p-integral multiple of one column to another
                if (i == j) j = (j + 1) % n;
                const Rat z = Rat(Int(uniform_ll(rng, -9, 9)), coprime_unit(rng, p));
                for (std::size_t r = 0; r < n; ++r) u(r, j) += z * u(r, i);
                break;
            }
        }
    }
    return u;
}

// independent oracle: valuation by bare trial division
inline long long oracle_valuation(const Prime& p, Rat x) {
    if (x == 0) throw std::logic_error("oracle_valuation(0)");
    long long v = 0;
    Int num = numerator(x) < 0 ? Int(-numerator(x)) : numerator(x);
    Int den = denominator(x);
    while (num % p.value() == 0) {
        num /= p.value();
        ++v;
    }
    while (den % p.value() == 0) {
        den /= p.value();
        --v;
    }
    return v;
}

namespace detail_oracle {

// denominator-cleared model of a rational matrix: T = entries / den
struct IntMat {
    std::size_t n;
    std::vector<Int> e;
    Int den;
};

inline IntMat clear_denominators(const Mat& m) {
    IntMat out{m.dim(), {}, Int(1)};
    for (const auto& x : m.entries()) out.den = lcm(out.den, denominator(x));
    out.e.reserve(m.dim() * m.dim());
    for (const auto& x : m.entries())
        out.e.push_back(numerator(x) * (out.den / denominator(x)));
    return out;
}

inline std::vector<Int> int_mul(std::size_t n, const std::vector<Int>& a,
                                const std::vector<Int>& b) {
    std::vector<Int> c(n * n, Int(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i * n + k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
        }
    return c;
}

// norm exponent of (entries / den^power)
inline long long power_norm_exp(const Prime& p, const std::vector<Int>& entries, const Int& den,
                                long long power) {
    long long best = 0;
    bool seen = false;
    for (const auto& x : entries) {
        if (x == 0) continue;
        const long long v = padsphere::detail::int_valuation(x, p.value());
        if (!seen || -v > best) best = -v;
        seen = true;
    }
    return best + power * padsphere::detail::int_valuation(den, p.value());
}

}  // namespace detail_oracle

// independent oracle: smallest m in [1, cap] with ||T^m|| = ||T^-m|| = 1.
// Runs on denominator-cleared integer matrices (gcd-free) and prunes once
// the norm exponent provably cannot return to zero inside the window: each
// step can lower exp(T^m) by at most exp(||T^-1||), and symmetrically.
inline std::optional<long long> oracle_isometry_power(const Mat& t, long long cap) {
    using namespace detail_oracle;
    const Prime& p = t.prime();
    const Mat inv = t.inverse();
    const IntMat fwd_step = clear_denominators(t);
    const IntMat bwd_step = clear_denominators(inv);
    const long long drop_fwd = std::max(0ll, inv.op_norm().exponent());
    const long long drop_bwd = std::max(0ll, t.op_norm().exponent());

    std::vector<Int> fwd = fwd_step.e, bwd = bwd_step.e;
    for (long long m = 1; m <= cap; ++m) {
        if (m > 1) {
            fwd = int_mul(fwd_step.n, fwd, fwd_step.e);
            bwd = int_mul(bwd_step.n, bwd, bwd_step.e);
        }
        const long long ef = power_norm_exp(p, fwd, fwd_step.den, m);
        const long long eb = power_norm_exp(p, bwd, bwd_step.den, m);
        if (ef == 0 && eb == 0) return m;
        if (ef > (cap - m) * drop_fwd || eb > (cap - m) * drop_bwd) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace testutil
