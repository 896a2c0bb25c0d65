#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "padsphere/padsphere.hpp"

namespace padsphere {

// Canonical key order throughout: reports are built with ordered_json in a
// fixed insertion order, so serialize(parse(s)) == s.
using Json = nlohmann::ordered_json;

namespace jsonio {

inline Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw std::invalid_argument("expected a rational as \"num/den\" string");
}

inline Json rat_to_json(const Rat& r) { return rat_to_string(r); }

inline Json norm_to_json(const NormExp& n) {
    if (n.is_neg_infinity()) return nullptr;
    return n.exponent();
}

inline Prime prime_from_json(const Json& j) {
    if (!j.contains("p")) throw std::invalid_argument("missing field \"p\"");
    return Prime(j.at("p").get<long long>());
}

inline Vec vector_from_json(const Prime& p, const Json& arr) {
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument("expected a nonempty JSON array of rationals");
    std::vector<Rat> c;
    c.reserve(arr.size());
    for (const auto& e : arr) c.push_back(rat_from_json(e));
    return Vec(p, std::move(c));
}

inline Json vector_to_json(const Vec& v) {
    Json arr = Json::array();
    for (const auto& c : v.components()) arr.push_back(rat_to_string(c));
    return arr;
}

inline Mat rows_from_json(const Prime& p, std::size_t n, const Json& rows) {
    if (!rows.is_array() || rows.size() != n)
        throw std::invalid_argument("expected " + std::to_string(n) + " rows");
    std::vector<Rat> e;
    e.reserve(n * n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n)
            throw std::invalid_argument("expected " + std::to_string(n) + " entries per row");
        for (const auto& x : row) e.push_back(rat_from_json(x));
    }
    return Mat(p, n, std::move(e));
}

inline Json rows_to_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(rat_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// {"p": int, "n": int, "rows": [["num/den", ...], ...]}
inline Mat matrix_from_json(const Json& j) {
    const Prime p = prime_from_json(j);
    if (!j.contains("n")) throw std::invalid_argument("missing field \"n\"");
    const auto n = j.at("n").get<std::size_t>();
    if (!j.contains("rows")) throw std::invalid_argument("missing field \"rows\"");
    return rows_from_json(p, n, j.at("rows"));
}

inline Json matrix_to_json(const Mat& m) {
    Json j;
    j["p"] = static_cast<long long>(m.prime().value());
    j["n"] = m.dim();
    j["rows"] = rows_to_json(m);
    return j;
}

// {"p": int, "n": int, "generators": [rows, ...]}
inline std::vector<Mat> generators_from_json(const Json& j) {
    const Prime p = prime_from_json(j);
    if (!j.contains("n")) throw std::invalid_argument("missing field \"n\"");
    const auto n = j.at("n").get<std::size_t>();
    if (!j.contains("generators") || !j.at("generators").is_array() ||
        j.at("generators").empty())
        throw std::invalid_argument("missing or empty \"generators\"");
    std::vector<Mat> gens;
    for (const auto& rows : j.at("generators")) gens.push_back(rows_from_json(p, n, rows));
    return gens;
}

// {"p": int, "n": int, "m": int, "T": rows, "S": rows, "D": [exponent, ...]}
// D lists the diagonal exponents l_i (entries p^{l_i}).
inline SDForm sdform_from_json(const Json& j) {
    const Prime p = prime_from_json(j);
    if (!j.contains("n")) throw std::invalid_argument("missing field \"n\"");
    const auto n = j.at("n").get<std::size_t>();
    for (const char* key : {"m", "T", "S", "D"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    const long long m = j.at("m").get<long long>();
    const Mat t = rows_from_json(p, n, j.at("T"));
    const Mat s = rows_from_json(p, n, j.at("S"));
    const auto& d = j.at("D");
    if (!d.is_array() || d.size() != n)
        throw std::invalid_argument("\"D\" must list one diagonal exponent per coordinate");
    std::vector<long long> exps;
    for (const auto& e : d) exps.push_back(e.get<long long>());
    return SDForm(t, m, s, exps);
}

inline Json slopes_to_json(const SlopeData& s) {
    Json arr = Json::array();
    for (const auto& [v, m] : s.items) {
        Json item;
        item["valuation"] = rat_to_string(v);
        item["multiplicity"] = m;
        arr.push_back(std::move(item));
    }
    return arr;
}

inline Json approx_to_json(const PadicApprox& a) {
    Json j;
    if (!a.certified_nonzero()) {
        j["valuation"] = nullptr;
        j["valuation_lower_bound"] =
            a.is_exact_zero() ? Json(nullptr) : Json(a.valuation_lower_bound());
        j["digits"] = Json::array();
        j["precision"] = 0;
        return j;
    }
    j["valuation"] = a.valuation();
    Json digits = Json::array();
    for (const auto& d : a.digits(a.precision())) digits.push_back(static_cast<long long>(d));
    j["digits"] = std::move(digits);
    j["precision"] = a.precision();
    return j;
}

inline Json split_to_json(const SpectralSplit& s) {
    Json j;
    j["dims"] = {{"contracting", s.contracting_dim},
                 {"neutral", s.neutral_dim},
                 {"expanding", s.expanding_dim}};
    j["precision"] = s.precision;
    auto basis_json = [](const std::vector<ApproxVec>& basis) {
        Json arr = Json::array();
        for (const auto& vec : basis) {
            Json v = Json::array();
            for (const auto& c : vec) v.push_back(c.to_string());
            arr.push_back(std::move(v));
        }
        return arr;
    };
    j["bases"] = {{"contracting", basis_json(s.contracting_basis)},
                  {"neutral", basis_json(s.neutral_basis)},
                  {"expanding", basis_json(s.expanding_basis)}};
    return j;
}

inline Json safe_radius_to_json(const SafeRadiusData& r) {
    Json j;
    j["c0_exponent"] = r.c0_exponent;
    j["c1_exponent"] = r.c1_exponent;
    j["radius_exponent"] = r.radius_exponent;
    return j;
}

inline Json witness_to_json(const NondistalWitness& w) {
    Json j;
    j["a"] = vector_to_json(w.a);
    j["x"] = vector_to_json(w.x);
    j["z"] = vector_to_json(w.z);
    j["y"] = vector_to_json(w.y);
    j["l"] = w.l;
    j["l1"] = w.l1;
    j["decay_exponent"] = w.decay_exponent;
    j["radius"] = safe_radius_to_json(w.radius);
    Json seps = Json::array();
    for (std::size_t k = 0; k < w.separations.size(); ++k) {
        Json item;
        item["k"] = k + 1;
        item["exponent"] = norm_to_json(w.separations[k]);
        seps.push_back(std::move(item));
    }
    j["separations"] = std::move(seps);
    return j;
}

inline Json boundedness_to_json(const BoundednessCertificate& cert) {
    Json j;
    j["compact"] = cert.compact;
    j["orbit_size"] = cert.compact ? Json(cert.orbit.size()) : Json(nullptr);
    j["visited"] = cert.visited;
    j["growth"] = cert.growth;
    if (cert.witness) {
        Json w;
        w["word"] = cert.witness->word;
        Json cp = Json::array();
        for (const auto& c : cert.witness->element.char_poly()) cp.push_back(rat_to_string(c));
        w["char_poly"] = std::move(cp);
        w["valuations"] = slopes_to_json(cert.witness->valuations);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline Json semigroup_verdict_to_json(const SemigroupVerdict& v) {
    Json j;
    switch (v.kind) {
        case SemigroupVerdictKind::Distal: j["verdict"] = "Distal"; break;
        case SemigroupVerdictKind::NonDistal: j["verdict"] = "NonDistal"; break;
        case SemigroupVerdictKind::Inconclusive: j["verdict"] = "Inconclusive"; break;
    }
    j["mode"] = v.mode_used == LatticeMode::GL ? "GL" : "PGL";
    j["seed"] = v.search_seed;
    j["certificate"] = v.certificate ? boundedness_to_json(*v.certificate) : Json(nullptr);
    if (v.proximal) {
        Json prox;
        prox["x"] = vector_to_json(v.proximal->x);
        prox["y"] = vector_to_json(v.proximal->y);
        prox["word"] = v.proximal->word;
        prox["step"] = v.proximal->step;
        prox["separation_exponent"] = norm_to_json(v.proximal->separation);
        j["proximal"] = std::move(prox);
    } else {
        j["proximal"] = nullptr;
    }
    if (v.kind == SemigroupVerdictKind::Inconclusive) {
        Json diag;
        diag["visited"] = v.certificate ? Json(v.certificate->visited) : Json(nullptr);
        diag["orbit_growth"] = v.certificate ? Json(v.certificate->growth) : Json(nullptr);
        diag["deepest_word_scanned"] = v.scan_length;
        j["diagnostics"] = std::move(diag);
    }
    return j;
}

inline Json distality_to_json(const DistalityVerdict& v) {
    Json j;
    j["distal"] = v.distal;
    switch (v.kind) {
        case CertificateKind::IsometryPower: j["certificate"] = "isometry-power"; break;
        case CertificateKind::FlatPolygon: j["certificate"] = "flat-polygon"; break;
        case CertificateKind::SlopeWitness: j["certificate"] = "slope-witness"; break;
    }
    j["isometry_power"] = v.isometry_power ? Json(*v.isometry_power) : Json(nullptr);
    j["m"] = v.power_m ? Json(*v.power_m) : Json(nullptr);
    j["l"] = v.scale_l ? Json(*v.scale_l) : Json(nullptr);
    return j;
}

}  // namespace jsonio
}  // namespace padsphere
