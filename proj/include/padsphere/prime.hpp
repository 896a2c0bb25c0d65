#pragma once

#include <boost/multiprecision/miller_rabin.hpp>

#include <stdexcept>

#include "padsphere/rational.hpp"

namespace padsphere {

namespace detail {

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    return boost::multiprecision::miller_rabin_test(n, 32);
}

}  // namespace detail

// The fixed prime p of Q_p. Primality is verified at construction.
class Prime {
public:
    explicit Prime(Int p) : p_(std::move(p)) {
        if (!detail::is_prime(p_)) {
            throw std::invalid_argument("p = " + p_.str() + " is not prime");
        }
    }
    explicit Prime(long long p) : Prime(Int(p)) {}

    const Int& value() const { return p_; }

    friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Prime& a, const Prime& b) { return a.p_ != b.p_; }

private:
    Int p_;
};

// p^k as an exact rational, for any integer k.
inline Rat p_power(const Prime& p, long long k) {
    const Int pk = detail::pow_int(p.value(), k >= 0 ? k : -k);
    return k >= 0 ? Rat(pk) : Rat(Int(1), pk);
}

inline void require_same_prime(const Prime& a, const Prime& b) {
    if (a != b) throw std::invalid_argument("prime context mismatch");
}

}  // namespace padsphere
