#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/valuation.hpp"

namespace padsphere {

// A vector over the rationals viewed inside Q_p^n, with the max-norm
// ||x||_p = max_i |x_i|_p. Pure value semantics throughout.
class Vec {
public:
    Vec(Prime p, std::vector<Rat> components) : p_(std::move(p)), c_(std::move(components)) {
        if (c_.empty()) throw std::invalid_argument("vector must have dimension >= 1");
    }

    static Vec zero(const Prime& p, std::size_t n) { return Vec(p, std::vector<Rat>(n, Rat(0))); }
    static Vec basis(const Prime& p, std::size_t n, std::size_t i) {
        std::vector<Rat> c(n, Rat(0));
        c.at(i) = 1;
        return Vec(p, std::move(c));
    }

    const Prime& prime() const { return p_; }
    std::size_t dim() const { return c_.size(); }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    Rat& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Rat>& components() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    NormExp norm() const {
        NormExp best = NormExp::neg_infinity();
        for (const auto& x : c_) best = max(best, NormExp::of(p_, x));
        return best;
    }

    bool on_sphere() const { return norm() == NormExp::finite(0); }

    // Multiplies by the rational number p^e equal to ||v||_p, landing on the
    // sphere. Idempotent there; rejects the zero vector.
    Vec normalize_to_sphere() const {
        const NormExp e = norm();
        if (e.is_neg_infinity()) throw std::domain_error("cannot normalize the zero vector");
        return *this * e.as_rational(p_);
    }

    friend Vec operator+(const Vec& a, const Vec& b) {
        require_compatible(a, b);
        std::vector<Rat> c(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a.c_[i] + b.c_[i];
        return Vec(a.p_, std::move(c));
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        require_compatible(a, b);
        std::vector<Rat> c(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a.c_[i] - b.c_[i];
        return Vec(a.p_, std::move(c));
    }
    friend Vec operator*(const Vec& a, const Rat& s) {
        std::vector<Rat> c(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a.c_[i] * s;
        return Vec(a.p_, std::move(c));
    }
    friend Vec operator*(const Rat& s, const Vec& a) { return a * s; }

    friend bool operator==(const Vec& a, const Vec& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

private:
    static void require_compatible(const Vec& a, const Vec& b) {
        require_same_prime(a.p_, b.p_);
        if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
    }

    Prime p_;
    std::vector<Rat> c_;
};

inline NormExp vector_norm(const Vec& v) { return v.norm(); }
inline Vec normalize_to_sphere(const Vec& v) { return v.normalize_to_sphere(); }

}  // namespace padsphere
