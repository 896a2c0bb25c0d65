#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/sphere.hpp"

namespace padsphere {

// Raised by the witness constructor when D is a scalar matrix: that is the
// projectively distal regime, where no non-distality witness exists.
struct NoWitnessError : std::domain_error {
    using std::domain_error::domain_error;
};

// A matrix presented with its commuting isometry/diagonal factorization
// T^m = S * D, where S is an isometry commuting with T and D is diagonal
// with entries p^{l_1}, ..., p^{l_n}. The factorization is supplied by the
// caller and verified exactly here; computing it for arbitrary T needs field
// extensions and is out of scope.
class SDForm {
public:
    SDForm(Mat t, long long m, Mat s, std::vector<long long> d_exponents)
        : t_(std::move(t)), m_(m), s_(std::move(s)), d_exps_(std::move(d_exponents)) {
        const Prime& p = t_.prime();
        require_same_prime(p, s_.prime());
        const std::size_t n = t_.dim();
        if (s_.dim() != n || d_exps_.size() != n)
            throw std::invalid_argument("SD form dimension mismatch");
        if (m_ < 1) throw std::invalid_argument("power m must be >= 1");
        std::vector<Rat> diag;
        diag.reserve(n);
        for (const long long l : d_exps_) diag.push_back(p_power(p, l));
        const Mat d = Mat::diagonal(p, diag);
        if (!s_.is_isometry()) throw std::invalid_argument("S must be an isometry");
        if (t_.pow(m_) != s_ * d) throw std::invalid_argument("T^m != S*D");
        if (s_ * d != d * s_) throw std::invalid_argument("S and D must commute");
        if (t_ * s_ != s_ * t_) throw std::invalid_argument("S must commute with T");
    }

    const Mat& t() const { return t_; }
    const Mat& s() const { return s_; }
    long long m() const { return m_; }
    const std::vector<long long>& diagonal_exponents() const { return d_exps_; }
    const Prime& prime() const { return t_.prime(); }
    std::size_t dim() const { return t_.dim(); }

    long long min_exponent() const { return *std::min_element(d_exps_.begin(), d_exps_.end()); }

    bool scalar_d() const {
        return std::all_of(d_exps_.begin(), d_exps_.end(),
                           [&](long long l) { return l == d_exps_.front(); });
    }

    // coordinates of H = ker(D - p^l), the minimal-exponent eigenspace
    std::vector<std::size_t> h_coordinates() const {
        std::vector<std::size_t> out;
        const long long l = min_exponent();
        for (std::size_t i = 0; i < d_exps_.size(); ++i)
            if (d_exps_[i] == l) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> eigenspace_coordinates(long long l) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < d_exps_.size(); ++i)
            if (d_exps_[i] == l) out.push_back(i);
        return out;
    }

private:
    Mat t_;
    long long m_;
    Mat s_;
    std::vector<long long> d_exps_;
};

// The ball V from the affine dichotomy: every nonzero a in V gives a
// homeomorphism T_a_bar with the distal/non-distal behaviour decided by T.
// All comparisons are integer exponent arithmetic.
struct SafeRadiusData {
    long long c0_exponent = 0;      // c_0 = p^{c0_exponent}
    long long c1_exponent = 0;      // c_1 = p^{c1_exponent}
    long long radius_exponent = 0;  // V = closed ball of norm <= p^{radius_exponent}
};

// c_0 = min_{1<=j<=m-1} 1/||T^{-j}||, c_1 = max_{1<=j<=m-1} ||T^j|| (both 1
// for m = 1 by the empty-range convention). The radius is the largest power
// p^{-k} strictly below min{1, c_0, c_0^2, c_0^2 c_1^{-2}} and strictly below
// 1/||T^{-1}||; the latter bound is what makes every nonzero a in V satisfy
// ||T^{-1}(a)||_p < 1 (it is implied by c_0 when m >= 2 and needed when
// m = 1). Balls are automatically S-invariant since S is an isometry.
inline SafeRadiusData safe_radius(const SDForm& form) {
    const Mat& t = form.t();
    const Mat t_inv = t.inverse();
    long long c0 = 0, c1 = 0;
    Mat fwd = Mat::identity(t.prime(), t.dim());
    Mat bwd = fwd;
    for (long long j = 1; j <= form.m() - 1; ++j) {
        fwd = fwd * t;
        bwd = bwd * t_inv;
        c0 = std::min(c0, -bwd.op_norm().exponent());
        c1 = std::max(c1, fwd.op_norm().exponent());
    }
    const long long homeo = -t_inv.op_norm().exponent();
    const long long bound = std::min({0ll, c0, 2 * c0, 2 * c0 - 2 * c1, homeo});
    return SafeRadiusData{c0, c1, bound - 1};
}

// Output of the explicit non-distality construction: a in V intersect H,
// x on the sphere inside H, z in the l_1-eigenspace with y = x + z, and the
// certified geometric decay exponent l_1 - l.
struct NondistalWitness {
    Vec a;
    Vec x;
    Vec z;
    Vec y;
    long long l = 0;
    long long l1 = 0;
    long long decay_exponent = 0;
    SafeRadiusData radius;
    std::vector<NormExp> separations;  // ||T_a_bar^{km}(y) - T_a_bar^{km}(x)|| for k = 1..
};

// Builds the explicit witness pair: picks a = p^r e_H with
// p^{-r} the safe radius, x = e_H, z = p^s e_{H_1} with s minimal such that
// ||T^j(z)|| < ||T^j(x)|| for 0 <= j <= m-1, and y = x + z. Verifies the
// exact identity ||T_a_bar^{km}(y) - T_a_bar^{km}(x)|| = p^{-k(l1-l)} ||z||
// by simulation for k = 1..verify_steps.
inline NondistalWitness witness_nondistal(const SDForm& form,
                                          std::optional<long long> l1_choice = std::nullopt,
                                          long long verify_steps = 10) {
    if (form.scalar_d())
        throw NoWitnessError("D is scalar: projectively distal regime, no witness exists");
    const Prime& p = form.prime();
    const std::size_t n = form.dim();
    const long long l = form.min_exponent();

    long long l1;
    if (l1_choice) {
        l1 = *l1_choice;
        if (l1 <= l || form.eigenspace_coordinates(l1).empty())
            throw std::invalid_argument("l1 must name a diagonal exponent larger than l");
    } else {
        l1 = std::numeric_limits<long long>::max();
        for (const long long e : form.diagonal_exponents())
            if (e > l) l1 = std::min(l1, e);
    }

    const std::size_t h_coord = form.h_coordinates().front();
    const std::size_t h1_coord = form.eigenspace_coordinates(l1).front();

    const SafeRadiusData radius = safe_radius(form);
    const Vec x = Vec::basis(p, n, h_coord);
    const Vec a = x * p_power(p, -radius.radius_exponent);

    // scan for the smallest s with ||T^j(z)|| < ||T^j(x)|| for 0 <= j < m;
    // the norms differ by fixed exponents, so the scan terminates
    const Vec e1 = Vec::basis(p, n, h1_coord);
    Vec z = e1;
    for (long long s = 0;; ++s) {
        z = e1 * p_power(p, s);
        bool ok = true;
        Vec zx = z, xx = x;
        for (long long j = 0; j < form.m() && ok; ++j) {
            if (!(zx.norm() < xx.norm())) ok = false;
            zx = form.t() * zx;
            xx = form.t() * xx;
        }
        if (ok) break;
    }
    const Vec y = x + z;

    NondistalWitness w{a, x, z, y, l, l1, l1 - l, radius, {}};

    // simulator check of the decay identity
    const AffineSphereMap map(form.t(), a);
    Vec ox = x, oy = y;
    for (long long k = 1; k <= verify_steps; ++k) {
        for (long long i = 0; i < form.m(); ++i) {
            ox = map(ox);
            oy = map(oy);
        }
        const NormExp sep = (oy - ox).norm();
        const long long expected = -k * (l1 - l) + z.norm().exponent();
        if (sep != NormExp::finite(expected))
            throw std::logic_error("witness decay identity failed in simulation");
        w.separations.push_back(sep);
    }
    return w;
}

}  // namespace padsphere
