#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padsphere/matrix.hpp"

namespace padsphere {

// Raised when tracked precision is no longer enough to certify a result.
// Carries the precision a retry should use.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what, long long required_precision)
        : std::runtime_error(what), required(required_precision) {}
    long long required;
};

// A p-adic number known to finite precision: value = p^val * unit with the
// unit residue known mod p^prec (capped-relative model). Cancellation that
// exhausts the known digits degrades a value to "zero at precision", which
// only records a lower bound on the valuation. Exact zero is kept distinct.
// Needed because contraction-space bases are generally irrational over Q;
// these values never feed back into exact pipelines.
class PadicApprox {
public:
    static PadicApprox exact_zero(const Prime& p) { return PadicApprox(p, State::ExactZero, 0, 0, 0); }

    static PadicApprox zero_at(const Prime& p, long long valuation_bound) {
        return PadicApprox(p, State::ZeroAtPrecision, valuation_bound, 0, 0);
    }

    static PadicApprox from_parts(const Prime& p, long long val, Int unit, long long prec) {
        if (prec <= 0) return zero_at(p, val);
        const Int modulus = detail::pow_int(p.value(), prec);
        unit %= modulus;
        if (unit < 0) unit += modulus;
        if (unit == 0) return zero_at(p, val + prec);
        // strip p-divisibility of the residue into the valuation
        while (unit % p.value() == 0) {
            unit /= p.value();
            ++val;
            --prec;
        }
        return PadicApprox(p, State::NonZero, val, std::move(unit), prec);
    }

    static PadicApprox from_rational(const Prime& p, const Rat& r, long long prec) {
        if (r == 0) return exact_zero(p);
        const long long v = padsphere::valuation(p, r).value();
        const Rat unit_rat = r / p_power(p, v);
        const Int modulus = detail::pow_int(p.value(), prec);
        Int num = numerator(unit_rat) % modulus;
        if (num < 0) num += modulus;
        const Int unit = num * detail::mod_inverse(denominator(unit_rat), modulus) % modulus;
        return PadicApprox(p, State::NonZero, v, unit, prec);
    }

    const Prime& prime() const { return p_; }
    bool is_exact_zero() const { return state_ == State::ExactZero; }
    bool certified_nonzero() const { return state_ == State::NonZero; }
    bool zero_like() const { return state_ != State::NonZero; }

    long long valuation() const {
        if (state_ != State::NonZero) throw std::logic_error("valuation of an uncertified value");
        return val_;
    }
    // valid for every state; exact zero reports a huge bound
    long long valuation_lower_bound() const {
        if (state_ == State::ExactZero) return kInfinityBound;
        return val_;
    }
    long long precision() const { return state_ == State::NonZero ? prec_ : 0; }
    const Int& unit() const { return unit_; }

    // absolute precision: digits are known below p^abs
    long long abs_precision() const {
        if (state_ == State::ExactZero) return kInfinityBound;
        if (state_ == State::ZeroAtPrecision) return val_;
        return val_ + prec_;
    }

    friend PadicApprox operator-(const PadicApprox& a) {
        if (a.state_ != State::NonZero) return a;
        const Int modulus = detail::pow_int(a.p_.value(), a.prec_);
        return PadicApprox(a.p_, State::NonZero, a.val_, modulus - a.unit_, a.prec_);
    }

    friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
        require_same_prime(a.p_, b.p_);
        if (a.state_ == State::ExactZero) return b;
        if (b.state_ == State::ExactZero) return a;
        const long long abs = std::min(a.abs_precision(), b.abs_precision());
        if (a.state_ != State::NonZero && b.state_ != State::NonZero)
            return zero_at(a.p_, std::min(a.val_, b.val_));
        if (a.state_ != State::NonZero || b.state_ != State::NonZero) {
            const PadicApprox& nz = a.state_ == State::NonZero ? a : b;
            if (nz.val_ >= abs) return zero_at(a.p_, abs);
            return from_parts(a.p_, nz.val_, nz.unit_, abs - nz.val_);
        }
        const long long v = std::min(a.val_, b.val_);
        if (v >= abs) return zero_at(a.p_, abs);
        const Int pa = detail::pow_int(a.p_.value(), a.val_ - v);
        const Int pb = detail::pow_int(a.p_.value(), b.val_ - v);
        return from_parts(a.p_, v, a.unit_ * pa + b.unit_ * pb, abs - v);
    }

    friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) { return a + (-b); }

    friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
        require_same_prime(a.p_, b.p_);
        if (a.state_ == State::ExactZero || b.state_ == State::ExactZero)
            return exact_zero(a.p_);
        if (a.state_ != State::NonZero || b.state_ != State::NonZero)
            return zero_at(a.p_, a.valuation_lower_bound() + b.valuation_lower_bound());
        const long long prec = std::min(a.prec_, b.prec_);
        return from_parts(a.p_, a.val_ + b.val_, a.unit_ * b.unit_, prec);
    }

    friend PadicApprox operator/(const PadicApprox& a, const PadicApprox& b) {
        require_same_prime(a.p_, b.p_);
        if (!b.certified_nonzero())
            throw PrecisionError("division by a value not certified nonzero", 0);
        if (a.state_ == State::ExactZero) return a;
        if (a.state_ == State::ZeroAtPrecision) return zero_at(a.p_, a.val_ - b.val_);
        const long long prec = std::min(a.prec_, b.prec_);
        const Int modulus = detail::pow_int(a.p_.value(), prec);
        const Int q = a.unit_ % modulus * detail::mod_inverse(b.unit_ % modulus, modulus) % modulus;
        return from_parts(a.p_, a.val_ - b.val_, q, prec);
    }

    // scale by an exact power of p
    PadicApprox shifted(long long k) const {
        if (state_ == State::ExactZero) return *this;
        PadicApprox r(*this);
        r.val_ += k;
        return r;
    }

    // unit digits base p, least significant first
    std::vector<Int> digits(long long count) const {
        std::vector<Int> d;
        Int u = unit_;
        for (long long i = 0; i < std::min(count, prec_); ++i) {
            d.push_back(u % p_.value());
            u /= p_.value();
        }
        return d;
    }

    std::string to_string() const {
        if (state_ == State::ExactZero) return "0";
        if (state_ == State::ZeroAtPrecision)
            return "O(" + p_.value().str() + "^" + std::to_string(val_) + ")";
        std::string s = p_.value().str() + "^" + std::to_string(val_) + "*(";
        const auto d = digits(prec_);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i) s += ",";
            s += d[i].str();
        }
        s += ")";
        return s;
    }

    static constexpr long long kInfinityBound = 1ll << 60;

private:
    enum class State { ExactZero, ZeroAtPrecision, NonZero };

    PadicApprox(Prime p, State st, long long val, Int unit, long long prec)
        : p_(std::move(p)), state_(st), val_(val), unit_(std::move(unit)), prec_(prec) {}

    Prime p_;
    State state_;
    long long val_;   // NonZero: exact valuation; ZeroAtPrecision: lower bound
    Int unit_;
    long long prec_;  // relative precision (NonZero only)
};

using ApproxVec = std::vector<PadicApprox>;

struct ApproxMat {
    std::size_t n;
    std::vector<PadicApprox> e;  // row-major

    static ApproxMat from_exact(const Mat& m, long long prec) {
        ApproxMat a{m.dim(), {}};
        a.e.reserve(m.dim() * m.dim());
        for (const auto& x : m.entries()) a.e.push_back(PadicApprox::from_rational(m.prime(), x, prec));
        return a;
    }
    static ApproxMat identity(const Prime& p, std::size_t n, long long prec) {
        return from_exact(Mat::identity(p, n), prec);
    }

    const PadicApprox& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
    PadicApprox& at(std::size_t i, std::size_t j) { return e[i * n + j]; }

    friend ApproxMat operator*(const ApproxMat& a, const ApproxMat& b) {
        const Prime& p = a.e.front().prime();
        ApproxMat c{a.n, std::vector<PadicApprox>(a.n * a.n, PadicApprox::exact_zero(p))};
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t k = 0; k < a.n; ++k)
                for (std::size_t j = 0; j < a.n; ++j)
                    c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
        return c;
    }

    friend ApproxVec operator*(const ApproxMat& a, const ApproxVec& v) {
        const Prime& p = a.e.front().prime();
        ApproxVec r(a.n, PadicApprox::exact_zero(p));
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = 0; j < a.n; ++j) r[i] = r[i] + a.at(i, j) * v[j];
        return r;
    }
};

// certified norm exponent of an approximate vector: max of -valuation when
// no unknown entry can dominate, nullopt otherwise
inline std::optional<long long> certified_norm_exponent(const ApproxVec& v) {
    bool any = false;
    long long best = 0;
    long long unknown_cap = -PadicApprox::kInfinityBound;
    for (const auto& x : v) {
        if (x.certified_nonzero()) {
            best = any ? std::max(best, -x.valuation()) : -x.valuation();
            any = true;
        } else if (!x.is_exact_zero()) {
            unknown_cap = std::max(unknown_cap, -x.valuation_lower_bound());
        }
    }
    if (!any) return std::nullopt;
    if (unknown_cap > best) return std::nullopt;
    return best;
}

}  // namespace padsphere
