#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "padsphere/spectral.hpp"
#include "padsphere/sphere.hpp"

namespace padsphere {

struct SearchParams {
    long long samples = 50;
    long long steps = 50;
    long long threshold_exponent = -10;
    unsigned long long seed = 12345;
    int digit_window = 6;  // sphere sampling draws coordinates from [0, p^B)
};

struct ProximalPair {
    Vec x;
    Vec y;
    long long sample_index = 0;
    long long step = 0;
    NormExp separation = NormExp::neg_infinity();
};

namespace detail {

inline Vec sample_sphere(std::mt19937_64& rng, const Prime& p, std::size_t n, int digits) {
    if (p.value() > Int(1) << 40)
        throw std::invalid_argument("sphere sampling supports primes below 2^40");
    const unsigned long long pl = static_cast<unsigned long long>(p.value());
    std::uniform_int_distribution<unsigned long long> digit(0, pl - 1);
    for (;;) {
        std::vector<Rat> c;
        c.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Int x = 0;
            for (int d = 0; d < digits; ++d) x = x * p.value() + Int(digit(rng));
            c.push_back(Rat(x));
        }
        Vec v(p, std::move(c));
        if (!v.is_zero()) return v.normalize_to_sphere();
    }
}

// Rounds an approximate vector to an exact rational vector, keeping `digits`
// unit digits per entry.
inline Vec round_approx_vector(const Prime& p, const ApproxVec& v, long long digits) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (const auto& e : v) {
        if (!e.certified_nonzero()) {
            c.push_back(Rat(0));
            continue;
        }
        const long long keep = std::min(digits, e.precision());
        Int u = e.unit() % pow_int(p.value(), keep);
        c.push_back(Rat(u) * p_power(p, e.valuation()));
    }
    return Vec(p, std::move(c));
}

// Perturbation directions along which orbits under the bar action of T
// genuinely approach each other: rational approximations of the contracting
// subspace of the min-slope normalization of T. Uniform random pairs almost
// never work, because the relative-contraction directions form a proper
// subspace.
inline std::vector<Vec> contraction_direction_candidates(const Mat& t, long long threshold_exp) {
    const DistalityVerdict verdict = is_distal_projective(t);
    if (verdict.distal) return {};
    const Rat r_min = verdict.slopes.items.front().first;
    const long long m = static_cast<long long>(denominator(r_min));
    const long long l = -static_cast<long long>(numerator(r_min));
    const Mat normalized = p_power(t.prime(), l) * t.pow(m);
    const long long digits = -threshold_exp + 16;
    const SpectralSplit split = contraction_split_auto(normalized, digits + 8, 16 * (digits + 8));
    std::vector<Vec> out;
    for (const auto& basis_vec : split.contracting_basis) {
        Vec delta = round_approx_vector(t.prime(), basis_vec, digits);
        if (delta.is_zero()) continue;
        // scale strictly inside the unit ball so x + delta stays on the sphere
        out.push_back(delta * p_power(t.prime(), delta.norm().exponent() + 1));
    }
    return out;
}

template <class MapFn>
std::optional<ProximalPair> run_pair_search(MapFn&& map,
                                            const std::vector<std::pair<Vec, Vec>>& pairs,
                                            long long steps, long long threshold_exp) {
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        const auto& [x, y] = pairs[idx];
        Vec u = x, v = y;
        for (long long j = 0; j <= steps; ++j) {
            if (j > 0) {
                u = map(u);
                v = map(v);
            }
            const NormExp sep = (u - v).norm();
            if (sep <= NormExp::finite(threshold_exp))
                return ProximalPair{x, y, static_cast<long long>(idx), j, sep};
        }
    }
    return std::nullopt;
}

template <class MapFn>
std::optional<ProximalPair> proximality_search_impl(MapFn&& map, const Mat& linear_part,
                                                    const SearchParams& params) {
    if (params.threshold_exponent >= 0)
        throw std::invalid_argument("threshold exponent must be negative");
    const Prime& p = linear_part.prime();
    const std::size_t n = linear_part.dim();
    std::mt19937_64 rng(params.seed);

    std::vector<std::pair<Vec, Vec>> pairs;
    for (const Vec& delta : contraction_direction_candidates(linear_part,
                                                             params.threshold_exponent)) {
        const Vec x = sample_sphere(rng, p, n, params.digit_window);
        pairs.push_back({x, x + delta});
        if (static_cast<long long>(pairs.size()) >= params.samples) break;
    }
    while (static_cast<long long>(pairs.size()) < params.samples) {
        const Vec x = sample_sphere(rng, p, n, params.digit_window);
        const Vec y = sample_sphere(rng, p, n, params.digit_window);
        if (x == y) continue;
        pairs.push_back({x, y});
    }
    return run_pair_search(map, pairs, params.steps, params.threshold_exponent);
}

}  // namespace detail

// Empirical falsifier for distality of the sphere action: simulates sampled
// pairs and reports the first one whose separation drops to p^threshold or
// below (minimal sample index, then minimal step). Deterministic per seed.
inline std::optional<ProximalPair> proximality_search(const SphereMap& map,
                                                      const SearchParams& params = {}) {
    return detail::proximality_search_impl(map, map.matrix(), params);
}

inline std::optional<ProximalPair> proximality_search(const AffineSphereMap& map,
                                                      const SearchParams& params = {}) {
    return detail::proximality_search_impl(map, map.matrix(), params);
}

struct WordProximalPair {
    Vec x;
    Vec y;
    std::vector<int> word;  // generator applied at each step, in order
    long long sample_index = 0;
    long long step = 0;
    NormExp separation = NormExp::neg_infinity();
};

// Random-word variant for semigroups: each sampled pair is driven by a fresh
// random generator word, applied to both points.
inline std::optional<WordProximalPair> word_proximality_search(const std::vector<Mat>& gens,
                                                               const SearchParams& params = {}) {
    if (params.threshold_exponent >= 0)
        throw std::invalid_argument("threshold exponent must be negative");
    if (gens.empty()) throw std::invalid_argument("generator list is empty");
    const Prime& p = gens.front().prime();
    const std::size_t n = gens.front().dim();
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);

    for (long long idx = 0; idx < params.samples; ++idx) {
        const Vec x = detail::sample_sphere(rng, p, n, params.digit_window);
        const Vec y = detail::sample_sphere(rng, p, n, params.digit_window);
        if (x == y) continue;
        Vec u = x, v = y;
        std::vector<int> word;
        for (long long j = 1; j <= params.steps; ++j) {
            const std::size_t g = pick(rng);
            word.push_back(static_cast<int>(g));
            u = apply_bar(gens[g], u);
            v = apply_bar(gens[g], v);
            const NormExp sep = (u - v).norm();
            if (sep <= NormExp::finite(params.threshold_exponent))
                return WordProximalPair{x, y, word, idx, j, sep};
        }
    }
    return std::nullopt;
}

}  // namespace padsphere
