#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "padsphere/newton.hpp"

namespace padsphere {

enum class LatticeMode { GL, PGL };

// Canonical form of a Z_p-lattice given by an invertible basis matrix, unique
// per lattice: column-reduced with pivot p^{e_i} on the diagonal, zeros above
// each pivot, and below-pivot entries reduced to c*p^v with integer
// 0 <= c < p^{e_i - v} coprime to p. Entries end up with denominators that
// are powers of p. In PGL mode the form is further scaled so the minimal
// entry valuation is 0, which identifies homothety classes.
class LatticeClass {
public:
    static LatticeClass standard(const Prime& p, std::size_t n, LatticeMode mode) {
        return LatticeClass(Mat::identity(p, n), mode);
    }

    static LatticeClass canonicalize(const Mat& basis, LatticeMode mode) {
        return LatticeClass(reduce(basis, mode), mode, /*already_reduced=*/true);
    }

    LatticeClass apply(const Mat& t) const {
        return canonicalize(t * basis_, mode_);
    }

    const Mat& basis() const { return basis_; }
    LatticeMode mode() const { return mode_; }
    const Prime& prime() const { return basis_.prime(); }
    std::size_t dim() const { return basis_.dim(); }

    const std::string& key() const { return key_; }

    friend bool operator==(const LatticeClass& a, const LatticeClass& b) {
        return a.mode_ == b.mode_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const LatticeClass& a, const LatticeClass& b) { return !(a == b); }

private:
    explicit LatticeClass(const Mat& basis, LatticeMode mode, bool already_reduced = false)
        : basis_(already_reduced ? basis : reduce(basis, mode)), mode_(mode), key_(make_key(basis_, mode_)) {}

    static std::string make_key(const Mat& m, LatticeMode mode) {
        std::string k = mode == LatticeMode::GL ? "GL:" : "PGL:";
        for (const auto& e : m.entries()) {
            k += rat_to_string(e);
            k += ',';
        }
        return k;
    }

    // Column Hermite form over the localization of Z at p.
    static Mat reduce(const Mat& basis, LatticeMode mode) {
        const Prime& p = basis.prime();
        const std::size_t n = basis.dim();
        Mat b(basis);

        std::vector<long long> pivot_exp(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            // pivot: valuation-minimal entry of row i among columns >= i
            std::size_t piv = n;
            Valuation best = Valuation::infinity();
            for (std::size_t j = i; j < n; ++j) {
                const Valuation v = valuation(p, b(i, j));
                if (!v.is_infinite() && (piv == n || v < best)) {
                    piv = j;
                    best = v;
                }
            }
            if (piv == n) throw std::domain_error("singular lattice basis");
            if (piv != i) swap_columns(b, i, piv);
            const long long e = best.value();
            pivot_exp[i] = e;
            // scale by a unit so the pivot becomes exactly p^e
            const Rat unit = b(i, i) / p_power(p, e);
            scale_column(b, i, Rat(1) / unit);
            for (std::size_t j = i + 1; j < n; ++j) {
                if (b(i, j) == 0) continue;
                const Rat q = b(i, j) / p_power(p, e);
                add_column(b, j, i, -q);
            }
        }

        // second pass: reduce below-pivot entries modulo the pivot to the
        // canonical residue c*p^v, using later columns
        for (std::size_t i = 1; i < n; ++i) {
            const long long e = pivot_exp[i];
            const Rat pe = p_power(p, e);
            for (std::size_t j = 0; j < i; ++j) {
                const Rat r = b(i, j);
                if (r == 0) continue;
                const long long v = valuation(p, r).value();
                Rat target = 0;
                if (v < e) {
                    const Rat u = r / p_power(p, v);
                    const Int modulus = numerator(p_power(p, e - v));
                    Int num = numerator(u) % modulus;
                    if (num < 0) num += modulus;
                    const Int c = num * detail::mod_inverse(denominator(u), modulus) % modulus;
                    target = Rat(c) * p_power(p, v);
                }
                const Rat q = (r - target) / pe;
                add_column(b, j, i, -q);
            }
        }

        if (mode == LatticeMode::PGL) {
            long long min_v = 0;
            bool first = true;
            for (const auto& x : b.entries()) {
                if (x == 0) continue;
                const long long v = valuation(p, x).value();
                if (first || v < min_v) min_v = v;
                first = false;
            }
            if (min_v != 0) {
                Mat scaled = p_power(p, -min_v) * b;
                b = scaled;
            }
        }
        return b;
    }

    static void swap_columns(Mat& m, std::size_t a, std::size_t c) {
        for (std::size_t i = 0; i < m.dim(); ++i) std::swap(m(i, a), m(i, c));
    }
    static void scale_column(Mat& m, std::size_t c, const Rat& s) {
        for (std::size_t i = 0; i < m.dim(); ++i) m(i, c) *= s;
    }
    static void add_column(Mat& m, std::size_t dst, std::size_t src, const Rat& f) {
        for (std::size_t i = 0; i < m.dim(); ++i) m(i, dst) += f * m(i, src);
    }

    Mat basis_;
    LatticeMode mode_;
    std::string key_;
};

inline LatticeClass canonicalize(const Mat& basis, LatticeMode mode) {
    return LatticeClass::canonicalize(basis, mode);
}
inline LatticeClass apply(const Mat& t, const LatticeClass& l) { return l.apply(t); }

// Least m >= 1 with T^m an isometry, found as the period of the standard
// lattice under T; nullopt when T is not distal (some eigenvalue valuation
// is nonzero, so no power is an isometry).
inline std::optional<long long> minimal_isometry_power(const Mat& t,
                                                       long long hard_cap = 1 << 20) {
    if (!eigenvalue_valuations(t).all_zero()) return std::nullopt;
    const LatticeClass start = LatticeClass::standard(t.prime(), t.dim(), LatticeMode::GL);
    LatticeClass current = start;
    for (long long m = 1; m <= hard_cap; ++m) {
        current = current.apply(t);
        if (current == start) return m;
    }
    throw std::runtime_error("lattice cycle did not close within the hard cap");
}

struct UnboundedWitness {
    std::vector<int> word;  // generator indices; element = gens[w0]*gens[w1]*...
    Mat element;
    SlopeData valuations;
};

struct BoundednessCertificate {
    bool compact = false;
    std::vector<LatticeClass> orbit;          // full orbit when compact
    std::size_t visited = 0;                  // classes discovered
    std::vector<std::size_t> growth;          // cumulative class count per BFS depth
    std::optional<UnboundedWitness> witness;  // cap-exceeded only
};

namespace detail {

inline bool is_unbounded_witness(const SlopeData& slopes, LatticeMode mode) {
    // Two distinct eigenvalue valuations certify unboundedness mod the
    // centre; in GL mode any nonzero valuation already does.
    if (mode == LatticeMode::PGL) return slopes.items.size() >= 2;
    return !slopes.all_zero();
}

inline std::optional<UnboundedWitness> scan_for_witness(const std::vector<Mat>& gens,
                                                        LatticeMode mode,
                                                        std::size_t scan_len,
                                                        std::size_t scan_cap) {
    // breadth-first over words of the generated semigroup, shortest and
    // lexicographically first witness reported
    struct Node {
        Mat element;
        std::vector<int> word;
    };
    std::deque<Node> frontier;
    std::unordered_set<std::string> seen;
    std::size_t scanned = 0;
    auto element_key = [](const Mat& m) {
        std::string k;
        for (const auto& e : m.entries()) {
            k += rat_to_string(e);
            k += ',';
        }
        return k;
    };
    for (std::size_t i = 0; i < gens.size(); ++i)
        frontier.push_back({gens[i], {static_cast<int>(i)}});
    while (!frontier.empty() && scanned < scan_cap) {
        Node node = std::move(frontier.front());
        frontier.pop_front();
        if (!seen.insert(element_key(node.element)).second) continue;
        ++scanned;
        const SlopeData slopes = eigenvalue_valuations(node.element);
        if (is_unbounded_witness(slopes, mode))
            return UnboundedWitness{node.word, node.element, slopes};
        if (node.word.size() < scan_len) {
            for (std::size_t i = 0; i < gens.size(); ++i) {
                std::vector<int> w = node.word;
                w.push_back(static_cast<int>(i));
                frontier.push_back({node.element * gens[i], std::move(w)});
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// BFS of the standard lattice-class orbit under the generators and their
// inverses. Closing within the cap certifies a compact closure (of the image
// in PGL when mode is PGL). Exceeding the cap is evidence only; it is
// upgraded to a certified verdict when the product scan finds an element
// with distinct eigenvalue valuations. The scan covers products of the given
// generators; this cannot detect groups that are unbounded although every
// element has a single eigenvalue valuation (see the cap-exceeded verdict's
// missing witness in that case).
//
// Runs single-threaded. A parallel frontier is admissible as long as the
// visited set behaves as one consistent insert-if-absent structure; the
// certificate must come out identical either way.
inline BoundednessCertificate group_boundedness(const std::vector<Mat>& gens, LatticeMode mode,
                                                std::size_t cap = 10000,
                                                std::size_t scan_len = 8,
                                                std::size_t scan_cap = 20000) {
    if (gens.empty()) throw std::invalid_argument("generator list is empty");
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    const Prime& p = gens.front().prime();
    const std::size_t n = gens.front().dim();
    std::vector<Mat> step;
    for (const auto& g : gens) {
        require_same_prime(p, g.prime());
        if (g.dim() != n) throw std::invalid_argument("generator dimension mismatch");
        step.push_back(g);
    }
    for (const auto& g : gens) step.push_back(g.inverse());

    BoundednessCertificate cert;
    const LatticeClass start = LatticeClass::standard(p, n, mode);
    std::unordered_set<std::string> visited{start.key()};
    std::vector<LatticeClass> orbit{start};
    std::deque<std::size_t> frontier{0};

    bool exceeded = false;
    while (!frontier.empty() && !exceeded) {
        std::deque<std::size_t> next;
        for (const std::size_t idx : frontier) {
            for (const auto& g : step) {
                LatticeClass image = orbit[idx].apply(g);
                if (visited.insert(image.key()).second) {
                    orbit.push_back(std::move(image));
                    next.push_back(orbit.size() - 1);
                    if (orbit.size() > cap) {
                        exceeded = true;
                        break;
                    }
                }
            }
            if (exceeded) break;
        }
        cert.growth.push_back(orbit.size());
        frontier = std::move(next);
    }

    cert.visited = orbit.size();
    if (!exceeded) {
        cert.compact = true;
        cert.orbit = std::move(orbit);
    } else {
        cert.witness = detail::scan_for_witness(gens, mode, scan_len, scan_cap);
    }
    return cert;
}

// Exhaustive re-check that every generator maps the orbit set into itself.
inline bool verify_compact_certificate(const std::vector<Mat>& gens,
                                       const std::vector<LatticeClass>& orbit) {
    std::unordered_set<std::string> keys;
    for (const auto& l : orbit) keys.insert(l.key());
    for (const auto& g : gens)
        for (const auto& l : orbit)
            if (!keys.count(l.apply(g).key())) return false;
    return true;
}

}  // namespace padsphere
