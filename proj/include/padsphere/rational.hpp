#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace padsphere {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact rationals are the only scalars used on exact paths. boost's
// cpp_rational keeps gcd(num, den) = 1 and den > 0 at all times, so
// structural equality is mathematical equality.

namespace detail {

inline Int pow_int(const Int& p, long long k) {
    Int r = 1;
    Int base = p;
    while (k > 0) {
        if (k & 1) r *= base;
        if (k >>= 1) base *= base;
    }
    return r;
}

inline Int mod_inverse(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    Int old_r = a, r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        const Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::logic_error("element not invertible in Z/m");
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

}  // namespace detail

inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/" + denominator(r).str();
    }
    return s;
}

// Parses "num" or "num/den" with arbitrary-precision parts.
inline Rat rat_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(text));
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in \"" + text + "\"");
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal \"" + text + "\"");
    }
}

}  // namespace padsphere
