#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/matrix.hpp"

namespace padsphere {

// The normalized linear action on the unit sphere: T_bar(x) = ||T(x)||_p T(x).
// Factors through powers of p times the identity.
inline Vec apply_bar(const Mat& t, const Vec& x) {
    if (!x.on_sphere()) throw std::domain_error("input vector is not on the unit sphere");
    const Vec y = t * x;
    return y * y.norm().as_rational(t.prime());
}

class SphereMap {
public:
    explicit SphereMap(Mat t) : t_(std::move(t)), t_inv_(t_.inverse()) {}

    const Mat& matrix() const { return t_; }
    Vec operator()(const Vec& x) const { return apply_bar(t_, x); }
    Vec inverse_apply(const Vec& y) const { return apply_bar(t_inv_, y); }

private:
    Mat t_;
    Mat t_inv_;
};

// The 'affine' sphere map T_a_bar(x) = ||a + T(x)||_p (a + T(x)). Defined for
// nonzero a with ||T^{-1}(a)||_p != 1 (otherwise a + T(x) vanishes somewhere
// on the sphere); a homeomorphism exactly when ||T^{-1}(a)||_p < 1.
class AffineSphereMap {
public:
    enum class Mode { Homeomorphism, InjectiveOnly };

    AffineSphereMap(Mat t, Vec a) : t_(std::move(t)), t_inv_(t_.inverse()), a_(std::move(a)) {
        require_same_prime(t_.prime(), a_.prime());
        if (t_.dim() != a_.dim()) throw std::invalid_argument("translation dimension mismatch");
        if (a_.is_zero()) throw std::domain_error("translation must be nonzero");
        const NormExp pullback = (t_inv_ * a_).norm();
        if (pullback == NormExp::finite(0))
            throw std::domain_error("||T^-1(a)||_p = 1: the affine sphere map is undefined");
        mode_ = pullback < NormExp::finite(0) ? Mode::Homeomorphism : Mode::InjectiveOnly;
    }

    const Mat& matrix() const { return t_; }
    const Vec& translation() const { return a_; }
    Mode mode() const { return mode_; }

    Vec operator()(const Vec& x) const {
        if (!x.on_sphere()) throw std::domain_error("input vector is not on the unit sphere");
        const Vec y = a_ + t_ * x;
        return y * y.norm().as_rational(t_.prime());
    }

    // Explicit inverse: z = T^{-1}(y), x = ||z||_p z - T^{-1}(a).
    Vec inverse_apply(const Vec& y) const {
        if (mode_ != Mode::Homeomorphism)
            throw std::logic_error("inverse is only available for homeomorphisms");
        if (!y.on_sphere()) throw std::domain_error("input vector is not on the unit sphere");
        const Vec z = t_inv_ * y;
        return z * z.norm().as_rational(t_.prime()) - t_inv_ * a_;
    }

private:
    Mat t_;
    Mat t_inv_;
    Vec a_;
    Mode mode_;
};

inline Vec apply_bar_affine(const AffineSphereMap& m, const Vec& x) { return m(x); }
inline Vec inverse_bar_affine(const AffineSphereMap& m, const Vec& y) { return m.inverse_apply(y); }

// alpha_j(x) = ||T(T_a_bar^{j-1}(x))||_p, beta_{j,x} = alpha_1...alpha_j and
// gamma_{j,x} = ||T^{-j}(x)||_p, as norms (powers of p).
struct OrbitCoefficients {
    std::vector<NormExp> alpha;  // alpha[j-1] = alpha_j(x), j = 1..steps
    std::vector<NormExp> beta;   // beta[j] = beta_{j,x}, j = 0..steps, beta[0] = 1
    std::vector<NormExp> gamma;  // gamma[j-1] = ||T^{-j}(x)||_p, j = 1..steps
};

// Evaluates the closed orbit form
//   T_a_bar^j(x) = beta_j T^j(x) + beta_j sum_{i=1..j} beta_{j-i}^{-1} T^{i-1}(a)
// through the beta recursion, with alpha_j(x) = ||T_a(T_a_bar^{j-1}(x))||_p.
// Requires ||T^{-1}(a)||_p < 1, which every nonzero a in the safe ball
// satisfies. Must match iterated apply_bar_affine exactly; inside the safe
// ball the alphas also reduce to ||T(T_a_bar^{j-1}(x))||_p.
inline std::pair<Vec, OrbitCoefficients> closed_form_orbit(const Mat& t, const Vec& a,
                                                           const Vec& x, long long j) {
    if (!x.on_sphere()) throw std::domain_error("input vector is not on the unit sphere");
    if (j < 0) throw std::invalid_argument("step count must be >= 0");
    const Prime& p = t.prime();
    const Mat t_inv = t.inverse();
    if (a.is_zero() || !((t_inv * a).norm() < NormExp::finite(0)))
        throw std::domain_error("translation is outside the safe ball");

    OrbitCoefficients coeffs;
    coeffs.beta.push_back(NormExp::finite(0));

    // forward powers applied to x and a
    std::vector<Vec> tx{x}, ta{a};
    for (long long k = 1; k <= j; ++k) tx.push_back(t * tx.back());
    for (long long k = 1; k < j; ++k) ta.push_back(t * ta.back());

    Vec point = x;
    for (long long step = 1; step <= j; ++step) {
        const NormExp alpha = (a + t * point).norm();
        coeffs.alpha.push_back(alpha);
        coeffs.beta.push_back(coeffs.beta.back() * alpha);
        const Rat beta = coeffs.beta.back().as_rational(p);
        Vec sum = Vec::zero(p, x.dim());
        for (long long i = 1; i <= step; ++i) {
            const Rat beta_ji_inv = Rat(1) / coeffs.beta[step - i].as_rational(p);
            sum = sum + ta[i - 1] * beta_ji_inv;
        }
        point = tx[step] * beta + sum * beta;
    }
    Vec back = x;
    for (long long k = 1; k <= j; ++k) {
        back = t_inv * back;
        coeffs.gamma.push_back(back.norm());
    }
    return {point, coeffs};
}

// Exact separation sequence ||map^j(x) - map^j(y)||_p for j = 0..steps.
template <class MapFn>
std::vector<NormExp> pair_separation_series(MapFn&& map, const Vec& x, const Vec& y,
                                            long long steps) {
    if (x == y) throw std::invalid_argument("points must be distinct");
    if (!x.on_sphere() || !y.on_sphere())
        throw std::domain_error("points must lie on the unit sphere");
    std::vector<NormExp> out;
    Vec u = x, v = y;
    out.push_back((u - v).norm());
    for (long long j = 1; j <= steps; ++j) {
        u = map(u);
        v = map(v);
        out.push_back((u - v).norm());
    }
    return out;
}

}  // namespace padsphere
