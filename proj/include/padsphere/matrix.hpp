#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/vector.hpp"

namespace padsphere {

// Square matrix over the rationals viewed in GL(n, Q_p). Entries are exact;
// all operations are deterministic and re-entrant.
class Mat {
public:
    Mat(Prime p, std::size_t n, std::vector<Rat> entries)
        : p_(std::move(p)), n_(n), e_(std::move(entries)) {
        if (n_ == 0) throw std::invalid_argument("matrix must have dimension >= 1");
        if (e_.size() != n_ * n_) throw std::invalid_argument("entry count must be n*n");
    }

    static Mat identity(const Prime& p, std::size_t n) {
        std::vector<Rat> e(n * n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
        return Mat(p, n, std::move(e));
    }

    static Mat diagonal(const Prime& p, const std::vector<Rat>& diag) {
        const std::size_t n = diag.size();
        std::vector<Rat> e(n * n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
        return Mat(p, n, std::move(e));
    }

    const Prime& prime() const { return p_; }
    std::size_t dim() const { return n_; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    Rat& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const std::vector<Rat>& entries() const { return e_; }

    Rat trace() const {
        Rat t = 0;
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        require_compatible(a, b);
        Mat c(a.p_, a.n_, std::vector<Rat>(a.n_ * a.n_, Rat(0)));
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t k = 0; k < a.n_; ++k) {
                const Rat& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vec operator*(const Mat& a, const Vec& v) {
        require_same_prime(a.p_, v.prime());
        if (a.n_ != v.dim()) throw std::invalid_argument("matrix/vector dimension mismatch");
        std::vector<Rat> c(a.n_, Rat(0));
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t j = 0; j < a.n_; ++j) c[i] += a(i, j) * v[j];
        return Vec(a.p_, std::move(c));
    }

    friend Mat operator*(const Rat& s, const Mat& a) {
        std::vector<Rat> e(a.e_);
        for (auto& x : e) x *= s;
        return Mat(a.p_, a.n_, std::move(e));
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        require_compatible(a, b);
        std::vector<Rat> e(a.e_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.e_[i];
        return Mat(a.p_, a.n_, std::move(e));
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Rat determinant() const {
        Mat m(*this);
        Rat det = 1;
        for (std::size_t col = 0; col < n_; ++col) {
            std::size_t piv = col;
            while (piv < n_ && m(piv, col) == 0) ++piv;
            if (piv == n_) return 0;
            if (piv != col) {
                for (std::size_t j = 0; j < n_; ++j) std::swap(m.e_[piv * n_ + j], m.e_[col * n_ + j]);
                det = -det;
            }
            det *= m(col, col);
            for (std::size_t r = col + 1; r < n_; ++r) {
                if (m(r, col) == 0) continue;
                const Rat f = m(r, col) / m(col, col);
                for (std::size_t j = col; j < n_; ++j) m(r, j) -= f * m(col, j);
            }
        }
        return det;
    }

    bool invertible() const { return determinant() != 0; }

    Mat inverse() const {
        Mat m(*this);
        Mat inv = identity(p_, n_);
        for (std::size_t col = 0; col < n_; ++col) {
            // valuation-minimal pivot
            std::size_t piv = n_;
            Valuation best = Valuation::infinity();
            for (std::size_t r = col; r < n_; ++r) {
                const Valuation v = valuation(p_, m(r, col));
                if (!v.is_infinite() && (piv == n_ || v < best)) {
                    piv = r;
                    best = v;
                }
            }
            if (piv == n_) throw std::domain_error("singular matrix");
            if (piv != col)
                for (std::size_t j = 0; j < n_; ++j) {
                    std::swap(m.e_[piv * n_ + j], m.e_[col * n_ + j]);
                    std::swap(inv.e_[piv * n_ + j], inv.e_[col * n_ + j]);
                }
            const Rat d = m(col, col);
            for (std::size_t j = 0; j < n_; ++j) {
                m(col, j) /= d;
                inv(col, j) /= d;
            }
            for (std::size_t r = 0; r < n_; ++r) {
                if (r == col || m(r, col) == 0) continue;
                const Rat f = m(r, col);
                for (std::size_t j = 0; j < n_; ++j) {
                    m(r, j) -= f * m(col, j);
                    inv(r, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    // T^k for any integer k (negative powers via the inverse).
    Mat pow(long long k) const {
        if (k < 0) return inverse().pow(-k);
        Mat result = identity(p_, n_);
        Mat base(*this);
        while (k > 0) {
            if (k & 1) result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    // ||T||_p = sup over the unit sphere, which for the max-norm equals the
    // largest entry absolute value.
    NormExp op_norm() const {
        NormExp best = NormExp::neg_infinity();
        for (const auto& x : e_) best = max(best, NormExp::of(p_, x));
        return best;
    }

    // An isometry preserves the sphere: ||T||_p = 1 = ||T^{-1}||_p.
    bool is_isometry() const {
        const Mat inv = inverse();  // rejects singular input
        return op_norm() == NormExp::finite(0) && inv.op_norm() == NormExp::finite(0);
    }

    // Monic characteristic polynomial, coefficients ascending by power
    // (size n+1, last entry 1). Faddeev-LeVerrier: exact over Q, divisions
    // only by the step index.
    std::vector<Rat> char_poly() const {
        std::vector<Rat> c(n_ + 1, Rat(0));
        c[n_] = 1;
        Mat m(*this);
        for (std::size_t k = 1; k <= n_; ++k) {
            if (k > 1) {
                Mat shifted(m);
                for (std::size_t i = 0; i < n_; ++i) shifted(i, i) += c[n_ - k + 1];
                m = (*this) * shifted;
            }
            c[n_ - k] = -m.trace() / Rat(static_cast<long long>(k));
        }
        return c;
    }

private:
    static void require_compatible(const Mat& a, const Mat& b) {
        require_same_prime(a.p_, b.p_);
        if (a.n_ != b.n_) throw std::invalid_argument("matrix dimension mismatch");
    }

    Prime p_;
    std::size_t n_;
    std::vector<Rat> e_;
};

inline NormExp op_norm(const Mat& t) { return t.op_norm(); }
inline bool is_isometry(const Mat& t) { return t.is_isometry(); }
inline std::vector<Rat> char_poly(const Mat& t) { return t.char_poly(); }

}  // namespace padsphere
