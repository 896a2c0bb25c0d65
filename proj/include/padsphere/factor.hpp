#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "padsphere/approx.hpp"

namespace padsphere::detail {

// Dense polynomials with coefficients in Z/p^M, ascending powers.
// Used only inside the slope factorization.
struct ModPoly {
    std::vector<Int> c;

    long long degree() const { return static_cast<long long>(c.size()) - 1; }

    void trim() {
        while (c.size() > 1 && c.back() == 0) c.pop_back();
    }
};

inline ModPoly mp_reduce(ModPoly f, const Int& modulus) {
    for (auto& x : f.c) {
        x %= modulus;
        if (x < 0) x += modulus;
    }
    f.trim();
    return f;
}

inline ModPoly mp_add(const ModPoly& a, const ModPoly& b, const Int& modulus) {
    ModPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return mp_reduce(std::move(r), modulus);
}

inline ModPoly mp_sub(const ModPoly& a, const ModPoly& b, const Int& modulus) {
    ModPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    return mp_reduce(std::move(r), modulus);
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b, const Int& modulus) {
    ModPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return mp_reduce(std::move(r), modulus);
}

// division with remainder by a monic divisor; exact in Z/p^M
inline std::pair<ModPoly, ModPoly> mp_divmod_monic(ModPoly num, const ModPoly& den,
                                                   const Int& modulus) {
    const long long dd = den.degree();
    ModPoly quo;
    if (num.degree() < dd) {
        quo.c = {Int(0)};
        return {quo, mp_reduce(std::move(num), modulus)};
    }
    quo.c.assign(num.degree() - dd + 1, Int(0));
    for (long long k = num.degree(); k >= dd; --k) {
        Int f = num.c[k] % modulus;
        if (f < 0) f += modulus;
        if (f == 0) {
            num.c[k] = 0;
            continue;
        }
        quo.c[k - dd] = f;
        for (long long j = 0; j <= dd; ++j) num.c[k - dd + j] -= f * den.c[j];
    }
    num.c.resize(dd > 0 ? dd : 1, Int(0));
    return {mp_reduce(std::move(quo), modulus), mp_reduce(std::move(num), modulus)};
}

// extended Euclid in F_p[y] for monic-coprime inputs: s*a + t*b = 1 (mod p)
inline std::pair<ModPoly, ModPoly> mp_bezout_mod_p(const ModPoly& a, const ModPoly& b,
                                                   const Int& p) {
    auto normalize = [&](ModPoly f) { return mp_reduce(std::move(f), p); };
    ModPoly r0 = normalize(a), r1 = normalize(b);
    ModPoly s0{{Int(1)}}, s1{{Int(0)}};
    ModPoly t0{{Int(0)}}, t1{{Int(1)}};
    while (!(r1.degree() == 0 && r1.c[0] == 0)) {
        // make r1 monic for the division, fold the unit back afterwards
        const Int lead = r1.c.back();
        const Int lead_inv = mod_inverse(lead, p);
        ModPoly r1m = r1;
        for (auto& x : r1m.c) x = x * lead_inv % p;
        auto [q_m, rem] = mp_divmod_monic(r0, r1m, p);
        ModPoly q = q_m;
        for (auto& x : q.c) x = x * lead_inv % p;
        const ModPoly new_r = rem;
        const ModPoly new_s = mp_sub(s0, mp_mul(q, s1, p), p);
        const ModPoly new_t = mp_sub(t0, mp_mul(q, t1, p), p);
        r0 = r1;
        r1 = new_r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    if (r0.degree() != 0 || r0.c[0] == 0)
        throw std::logic_error("polynomials are not coprime mod p");
    const Int inv = mod_inverse(r0.c[0], p);
    for (auto& x : s0.c) x = x * inv % p;
    for (auto& x : t0.c) x = x * inv % p;
    return {s0, t0};
}

// Splits a monic f over Z/p^M with f = y^a * h0 (mod p), h0(0) a unit, into
// monic factors f = g * h (mod p^M) where g = y^a (mod p) collects the
// positive-valuation roots and h the unit roots. Quadratic Hensel lifting.
inline std::pair<ModPoly, ModPoly> hensel_unit_split(const ModPoly& f, const Prime& prime,
                                                     long long M) {
    const Int p = prime.value();
    const Int pM = pow_int(p, M);
    const long long n = f.degree();

    // a = number of roots with positive valuation = low coefficients
    // divisible by p
    long long a = 0;
    while (a < n && f.c[a] % p == 0) ++a;
    if (a == 0 || a == n) throw std::logic_error("hensel_unit_split: trivial split requested");

    ModPoly g;
    g.c.assign(a + 1, Int(0));
    g.c[a] = 1;
    ModPoly h;
    h.c.assign(f.c.begin() + a, f.c.end());
    h = mp_reduce(std::move(h), p);

    auto [s, t] = mp_bezout_mod_p(g, h, p);

    Int m = p;
    while (m < pM) {
        Int m2 = m * m;
        if (m2 > pM) m2 = pM;
        // e = f - g*h
        const ModPoly e = mp_sub(f, mp_mul(g, h, m2), m2);
        // se = q*h + r
        auto [q, r] = mp_divmod_monic(mp_mul(s, e, m2), h, m2);
        // g += t*e + q*g ; h += r   (keeps both monic)
        g = mp_add(g, mp_add(mp_mul(t, e, m2), mp_mul(q, g, m2), m2), m2);
        h = mp_add(h, r, m2);
        if (m2 == pM) break;
        // lift the Bezout pair alongside
        const ModPoly b =
            mp_sub(mp_add(mp_mul(s, g, m2), mp_mul(t, h, m2), m2), ModPoly{{Int(1)}}, m2);
        auto [cq, d] = mp_divmod_monic(mp_mul(s, b, m2), h, m2);
        s = mp_sub(s, d, m2);
        t = mp_sub(t, mp_add(mp_mul(t, b, m2), mp_mul(cq, g, m2), m2), m2);
        m = m2;
    }

    g.c.resize(a + 1, Int(0));
    g.c[a] = 1;
    h.c.resize(n - a + 1, Int(0));
    h.c[n - a] = 1;
    return {mp_reduce(std::move(g), pM), mp_reduce(std::move(h), pM)};
}

// Polynomials with tracked-precision p-adic coefficients, ascending powers.
using ApproxPoly = std::vector<PadicApprox>;

inline ApproxPoly approx_poly_mul(const ApproxPoly& a, const ApproxPoly& b) {
    const Prime& p = a.front().prime();
    ApproxPoly r(a.size() + b.size() - 1, PadicApprox::exact_zero(p));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

inline ApproxPoly approx_poly_from_exact(const Prime& p, const std::vector<Rat>& coeffs,
                                         long long prec) {
    ApproxPoly r;
    r.reserve(coeffs.size());
    for (const auto& c : coeffs) r.push_back(PadicApprox::from_rational(p, c, prec));
    return r;
}

// substitute x -> p^v * y and renormalize monic: coefficient i picks up
// p^{(i - deg) * v}
inline ApproxPoly approx_poly_scale(const ApproxPoly& f, long long v) {
    const long long deg = static_cast<long long>(f.size()) - 1;
    ApproxPoly r = f;
    for (long long i = 0; i <= deg; ++i) r[i] = r[i].shifted((i - deg) * v);
    return r;
}

}  // namespace padsphere::detail
