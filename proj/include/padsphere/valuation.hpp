#pragma once

#include <compare>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/prime.hpp"
#include "padsphere/rational.hpp"

namespace padsphere {

// p-adic valuation of a rational: the exponent of p in its factorization,
// +infinity for zero. Carried as an exact integer.
class Valuation {
public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long long value() const {
        if (infinite_) throw std::logic_error("valuation of zero is infinite");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
    }
    // infinity compares greater than every finite valuation
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.v_ < b.v_;
    }

private:
    Valuation(bool inf, long long v) : infinite_(inf), v_(v) {}
    bool infinite_;
    long long v_;
};

namespace detail {

// valuation by binary lifting: O(log v) big divisions instead of O(v)
inline long long int_valuation(Int x, const Int& p) {
    Int q, r;
    boost::multiprecision::divide_qr(x, p, q, r);
    if (r != 0) return 0;
    x = std::move(q);
    long long v = 1;
    const Int bound = x < 0 ? Int(-x) : x;
    std::vector<Int> pows{p};
    while (pows.back() * pows.back() <= bound) pows.push_back(pows.back() * pows.back());
    for (auto k = static_cast<long long>(pows.size()) - 1; k >= 0; --k) {
        boost::multiprecision::divide_qr(x, pows[k], q, r);
        if (r == 0) {
            x = q;
            v += 1ll << k;
        }
    }
    return v;
}

}  // namespace detail

inline Valuation valuation(const Prime& p, const Rat& s) {
    if (s == 0) return Valuation::infinity();
    return Valuation::of(detail::int_valuation(numerator(s), p.value()) -
                         detail::int_valuation(denominator(s), p.value()));
}

// A p-adic norm or absolute value, represented as the integer exponent e
// with value p^e. The zero element carries the NEG_INFINITY marker instead;
// it compares below every finite norm.
class NormExp {
public:
    static NormExp neg_infinity() { return NormExp(true, 0); }
    static NormExp finite(long long e) { return NormExp(false, e); }

    // |s|_p for a rational scalar.
    static NormExp of(const Prime& p, const Rat& s) {
        const Valuation v = valuation(p, s);
        return v.is_infinite() ? neg_infinity() : finite(-v.value());
    }

    bool is_neg_infinity() const { return neg_inf_; }
    long long exponent() const {
        if (neg_inf_) throw std::logic_error("zero element has no norm exponent");
        return e_;
    }

    // The norm as an exact rational p^e (zero for the NEG_INFINITY marker).
    Rat as_rational(const Prime& p) const { return neg_inf_ ? Rat(0) : p_power(p, e_); }

    friend bool operator==(const NormExp& a, const NormExp& b) {
        return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.e_ == b.e_);
    }
    friend bool operator!=(const NormExp& a, const NormExp& b) { return !(a == b); }
    friend bool operator<(const NormExp& a, const NormExp& b) {
        if (b.neg_inf_) return false;
        if (a.neg_inf_) return true;
        return a.e_ < b.e_;
    }
    friend bool operator<=(const NormExp& a, const NormExp& b) { return a < b || a == b; }
    friend bool operator>(const NormExp& a, const NormExp& b) { return b < a; }
    friend bool operator>=(const NormExp& a, const NormExp& b) { return b <= a; }

    friend NormExp max(const NormExp& a, const NormExp& b) { return a < b ? b : a; }

    // Norm of a product: exponents add; anything times zero is zero.
    friend NormExp operator*(const NormExp& a, const NormExp& b) {
        if (a.neg_inf_ || b.neg_inf_) return neg_infinity();
        return finite(a.e_ + b.e_);
    }

private:
    NormExp(bool ni, long long e) : neg_inf_(ni), e_(e) {}
    bool neg_inf_;
    long long e_;
};

}  // namespace padsphere
