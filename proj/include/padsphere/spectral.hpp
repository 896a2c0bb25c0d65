#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/factor.hpp"
#include "padsphere/lattice.hpp"

namespace padsphere {

// V = C(T) + M(T) + C(T^{-1}): contracting, neutral and expanding subspaces,
// with bases carried at tracked precision. Dimensions are exact (they come
// from the Newton polygon); the basis vectors are approximate because the
// subspaces are Q_p-rational but generally not Q-rational.
struct SpectralSplit {
    long long contracting_dim = 0;
    long long neutral_dim = 0;
    long long expanding_dim = 0;
    std::vector<ApproxVec> contracting_basis;
    std::vector<ApproxVec> neutral_basis;
    std::vector<ApproxVec> expanding_basis;
    long long precision = 0;  // certified relative precision of the bases
};

namespace detail {

// Kernel basis of an approximate matrix with known kernel dimension.
// Gauss-Jordan with valuation-minimal pivoting; every leftover row must be
// indistinguishable from zero at the working precision.
inline std::vector<ApproxVec> approx_kernel_basis(ApproxMat m, long long expected_dim,
                                                  long long requested_precision) {
    const std::size_t n = m.n;
    const Prime& p = m.e.front().prime();
    std::vector<bool> row_used(n, false), col_used(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;

    for (long long step = 0; step < static_cast<long long>(n) - expected_dim; ++step) {
        std::size_t pi = n, pj = n;
        long long best_val = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (row_used[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (col_used[j] || !m.at(i, j).certified_nonzero()) continue;
                if (pi == n || m.at(i, j).valuation() < best_val) {
                    pi = i;
                    pj = j;
                    best_val = m.at(i, j).valuation();
                }
            }
        }
        if (pi == n)
            throw PrecisionError("kernel computation ran out of certified pivots",
                                 2 * requested_precision);
        row_used[pi] = true;
        col_used[pj] = true;
        pivots.emplace_back(pi, pj);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == pi || !m.at(k, pj).certified_nonzero()) continue;
            const PadicApprox f = m.at(k, pj) / m.at(pi, pj);
            for (std::size_t j = 0; j < n; ++j)
                m.at(k, j) = m.at(k, j) - f * m.at(pi, j);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (row_used[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (m.at(i, j).certified_nonzero())
                throw PrecisionError("kernel dimension smaller than the polygon predicts",
                                     2 * requested_precision);
    }

    std::vector<ApproxVec> basis;
    for (std::size_t jf = 0; jf < n; ++jf) {
        if (col_used[jf]) continue;
        ApproxVec x(n, PadicApprox::exact_zero(p));
        x[jf] = PadicApprox::from_rational(p, Rat(1), requested_precision * 4);
        for (const auto& [pi, pj] : pivots) x[pj] = -(m.at(pi, jf) / m.at(pi, pj));
        // scale so the minimal certified valuation is zero
        long long minv = 0;
        bool seen = false;
        for (const auto& c : x)
            if (c.certified_nonzero()) {
                minv = seen ? std::min(minv, c.valuation()) : c.valuation();
                seen = true;
            }
        for (auto& c : x) c = c.shifted(-minv);
        basis.push_back(std::move(x));
    }
    return basis;
}

inline ApproxMat approx_poly_eval(const ApproxPoly& f, const ApproxMat& a, const Prime& p) {
    ApproxMat acc{a.n, std::vector<PadicApprox>(a.n * a.n, PadicApprox::exact_zero(p))};
    for (std::size_t i = 0; i < a.n; ++i)
        acc.at(i, i) = f.back();
    for (auto it = std::next(f.rbegin()); it != f.rend(); ++it) {
        acc = acc * a;
        for (std::size_t i = 0; i < a.n; ++i) acc.at(i, i) = acc.at(i, i) + *it;
    }
    return acc;
}

}  // namespace detail

// Slope factorization at tracked precision: peels the characteristic
// polynomial of T^e (e clearing slope denominators) into per-valuation-level
// factors by Newton-polygon initialization plus quadratic Hensel lifting,
// lumps them by sign, and reads the three subspaces off as kernels.
inline SpectralSplit contraction_split(const Mat& t, long long requested_precision) {
    if (requested_precision < 1) throw std::invalid_argument("precision must be >= 1");
    const Prime& p = t.prime();
    const std::size_t n = t.dim();
    const SlopeData slopes = eigenvalue_valuations(t);  // rejects singular input

    SpectralSplit split;
    split.precision = requested_precision;
    for (const auto& [v, mult] : slopes.items) {
        if (v > 0)
            split.contracting_dim += mult;
        else if (v == 0)
            split.neutral_dim += mult;
        else
            split.expanding_dim += mult;
    }

    auto standard_basis = [&](std::vector<ApproxVec>& out) {
        for (std::size_t i = 0; i < n; ++i) {
            ApproxVec v(n, PadicApprox::exact_zero(p));
            v[i] = PadicApprox::from_rational(p, Rat(1), requested_precision);
            out.push_back(std::move(v));
        }
    };

    // single sign: the whole space belongs to one subspace, exactly
    if (split.contracting_dim == static_cast<long long>(n)) {
        standard_basis(split.contracting_basis);
        return split;
    }
    if (split.neutral_dim == static_cast<long long>(n)) {
        standard_basis(split.neutral_basis);
        return split;
    }
    if (split.expanding_dim == static_cast<long long>(n)) {
        standard_basis(split.expanding_basis);
        return split;
    }

    // clear slope denominators: T^e has integer eigenvalue valuations and
    // the same invariant subspaces
    long long e = 1;
    for (const auto& [v, mult] : slopes.items)
        e = std::lcm(e, static_cast<long long>(denominator(v)));
    const Mat a = t.pow(e);

    std::vector<std::pair<long long, long long>> levels;  // (valuation of T^e, multiplicity)
    for (const auto& [v, mult] : slopes.items) {
        const Rat lv = v * e;
        levels.push_back({static_cast<long long>(numerator(lv)), mult});
    }
    std::sort(levels.begin(), levels.end());

    long long shift_budget = 0;
    for (const auto& [v, mult] : levels) shift_budget += std::abs(v) * static_cast<long long>(n);
    const long long work = requested_precision + 2 * shift_budget + 16;

    detail::ApproxPoly rest = detail::approx_poly_from_exact(p, a.char_poly(), work);
    std::map<long long, detail::ApproxPoly> level_factor;

    for (std::size_t idx = 0; idx + 1 < levels.size(); ++idx) {
        const long long v = levels[idx].first;
        detail::ApproxPoly scaled = detail::approx_poly_scale(rest, v);
        long long avail = work;
        for (const auto& c : scaled) {
            if (c.is_exact_zero()) continue;
            if (c.certified_nonzero() && c.valuation() < 0)
                throw PrecisionError("scaled factor drifted off the polygon",
                                     2 * requested_precision);
            avail = std::min(avail, c.abs_precision());
        }
        if (avail < 4)
            throw PrecisionError("insufficient precision to separate slopes",
                                 2 * requested_precision);
        detail::ModPoly f_int;
        f_int.c.reserve(scaled.size());
        const Int modulus = detail::pow_int(p.value(), avail);
        for (const auto& c : scaled) {
            if (!c.certified_nonzero()) {
                f_int.c.push_back(Int(0));
            } else {
                Int rep = c.unit() * detail::pow_int(p.value(), c.valuation()) % modulus;
                f_int.c.push_back(rep);
            }
        }
        auto [g_plus, h_unit] = detail::hensel_unit_split(f_int, p, avail);

        auto unscale = [&](const detail::ModPoly& q) {
            detail::ApproxPoly out;
            const long long deg = q.degree();
            for (long long i = 0; i <= deg; ++i)
                out.push_back(
                    PadicApprox::from_parts(p, 0, q.c[i], avail).shifted(v * (deg - i)));
            return out;
        };
        level_factor[v] = unscale(h_unit);
        rest = unscale(g_plus);
    }
    level_factor[levels.back().first] = rest;

    const Prime prime = p;
    auto product_by_sign = [&](int sign) -> std::optional<detail::ApproxPoly> {
        std::optional<detail::ApproxPoly> acc;
        for (const auto& [v, f] : level_factor) {
            if ((sign > 0 && v <= 0) || (sign == 0 && v != 0) || (sign < 0 && v >= 0)) continue;
            acc = acc ? detail::approx_poly_mul(*acc, f) : f;
        }
        return acc;
    };

    const ApproxMat a_approx = ApproxMat::from_exact(a, work);
    long long certified = work;
    auto fill_basis = [&](int sign, long long dim, std::vector<ApproxVec>& out) {
        if (dim == 0) return;
        const auto f = product_by_sign(sign);
        const ApproxMat eval = detail::approx_poly_eval(*f, a_approx, prime);
        out = detail::approx_kernel_basis(eval, dim, requested_precision);
        for (const auto& vec : out)
            for (const auto& c : vec)
                if (c.certified_nonzero()) certified = std::min(certified, c.precision());
    };
    fill_basis(+1, split.contracting_dim, split.contracting_basis);
    fill_basis(0, split.neutral_dim, split.neutral_basis);
    fill_basis(-1, split.expanding_dim, split.expanding_basis);

    if (certified < requested_precision)
        throw PrecisionError("bases certified below the requested precision",
                             2 * requested_precision);
    split.precision = requested_precision;
    return split;
}

// Retry-doubling wrapper: quadratic lifting makes retries cheap.
inline SpectralSplit contraction_split_auto(const Mat& t, long long precision = 40,
                                            long long max_precision = 640) {
    for (long long n = precision;; n *= 2) {
        try {
            return contraction_split(t, n);
        } catch (const PrecisionError&) {
            if (2 * n > max_precision) throw;
        }
    }
}

enum class CertificateKind { IsometryPower, FlatPolygon, SlopeWitness };

// Verdict plus the evidence that backs it. Linear distality is certified by
// the minimal isometry power; projective distality by (m, l) with p^l T^m
// linearly distal; non-distality by the offending eigenvalue valuations.
struct DistalityVerdict {
    bool distal = false;
    CertificateKind kind = CertificateKind::SlopeWitness;
    std::optional<long long> isometry_power;
    std::optional<long long> power_m;
    std::optional<long long> scale_l;
    SlopeData slopes;
};

// T is distal on Q_p^n iff every eigenvalue valuation is 0 (flat polygon),
// in which case some power is an isometry.
inline DistalityVerdict is_distal_linear(const Mat& t) {
    DistalityVerdict verdict;
    verdict.slopes = eigenvalue_valuations(t);
    if (verdict.slopes.all_zero()) {
        verdict.distal = true;
        verdict.kind = CertificateKind::IsometryPower;
        verdict.isometry_power = minimal_isometry_power(t);
    }
    return verdict;
}

// The sphere action of T is distal iff all eigenvalue valuations are equal,
// say r = k/m in lowest terms; then p^{-k} T^m is linearly distal.
inline DistalityVerdict is_distal_projective(const Mat& t) {
    DistalityVerdict verdict;
    verdict.slopes = eigenvalue_valuations(t);
    if (verdict.slopes.single_valuation()) {
        const Rat r = verdict.slopes.items.front().first;
        verdict.distal = true;
        verdict.kind = CertificateKind::FlatPolygon;
        verdict.power_m = static_cast<long long>(denominator(r));
        verdict.scale_l = -static_cast<long long>(numerator(r));
    }
    return verdict;
}

}  // namespace padsphere
