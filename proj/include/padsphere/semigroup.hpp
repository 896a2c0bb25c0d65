#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padsphere/search.hpp"

namespace padsphere {

// A finitely generated semigroup of GL(n, Q_p), validated for shared prime,
// dimension and invertibility.
class SemigroupSpec {
public:
    explicit SemigroupSpec(std::vector<Mat> generators) : gens_(std::move(generators)) {
        if (gens_.empty()) throw std::invalid_argument("generator list is empty");
        const Prime& p = gens_.front().prime();
        const std::size_t n = gens_.front().dim();
        all_unit_det_ = true;
        for (const auto& g : gens_) {
            require_same_prime(p, g.prime());
            if (g.dim() != n) throw std::invalid_argument("generator dimension mismatch");
            const Rat det = g.determinant();
            if (det == 0) throw std::domain_error("singular generator");
            if (valuation(p, det).value() != 0) all_unit_det_ = false;
        }
    }

    const std::vector<Mat>& generators() const { return gens_; }
    const Prime& prime() const { return gens_.front().prime(); }
    std::size_t dim() const { return gens_.front().dim(); }
    bool all_unit_det() const { return all_unit_det_; }

private:
    std::vector<Mat> gens_;
    bool all_unit_det_;
};

enum class SemigroupVerdictKind { Distal, NonDistal, Inconclusive };

struct ProximalEvidence {
    Vec x;
    Vec y;
    std::vector<int> word;
    long long step = 0;
    NormExp separation = NormExp::neg_infinity();
};

// Distal comes with a re-verifiable compact orbit certificate; NonDistal with
// either an element witness (two distinct eigenvalue valuations) or a
// proximal pair found by simulation; Inconclusive keeps the boundedness
// diagnostics. Boundedness is only semi-decided, so Inconclusive is a
// first-class outcome.
struct SemigroupVerdict {
    SemigroupVerdictKind kind = SemigroupVerdictKind::Inconclusive;
    LatticeMode mode_used = LatticeMode::PGL;
    std::optional<BoundednessCertificate> certificate;
    std::optional<UnboundedWitness> witness;
    std::optional<ProximalEvidence> proximal;
    std::size_t scan_length = 0;
    unsigned long long search_seed = 0;
};

// Decides distality of the semigroup action on the sphere: the action is
// distal iff the closure of the image in PGL(n, Q_p) is a compact group.
// The generated group is analyzed (inverses join the BFS), and GL mode is
// used when every generator has unit determinant, where compactness of the
// image upstairs is equivalent.
inline SemigroupVerdict semigroup_distality(const SemigroupSpec& spec, std::size_t cap = 10000,
                                            std::size_t scan_len = 8,
                                            const SearchParams& search = {}) {
    SemigroupVerdict verdict;
    verdict.scan_length = scan_len;
    verdict.search_seed = search.seed;
    verdict.mode_used = spec.all_unit_det() ? LatticeMode::GL : LatticeMode::PGL;

    BoundednessCertificate cert =
        group_boundedness(spec.generators(), verdict.mode_used, cap, scan_len);
    if (cert.compact) {
        verdict.kind = SemigroupVerdictKind::Distal;
        verdict.certificate = std::move(cert);
        return verdict;
    }
    if (cert.witness) {
        verdict.kind = SemigroupVerdictKind::NonDistal;
        verdict.witness = cert.witness;
        verdict.certificate = std::move(cert);
        return verdict;
    }
    verdict.certificate = std::move(cert);
    if (const auto hit = word_proximality_search(spec.generators(), search)) {
        verdict.kind = SemigroupVerdictKind::NonDistal;
        verdict.proximal =
            ProximalEvidence{hit->x, hit->y, hit->word, hit->step, hit->separation};
        return verdict;
    }
    verdict.kind = SemigroupVerdictKind::Inconclusive;
    return verdict;
}

}  // namespace padsphere
