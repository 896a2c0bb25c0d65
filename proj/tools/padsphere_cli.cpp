// Command-line front end: single-matrix analysis, orbit dumps, safe radii,
// non-distality witnesses and semigroup verdicts, all as JSON.
//
// Exit codes: 0 success / distal verdict, 3 non-distal verdict,
// 4 inconclusive, 2 usage or domain errors.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "padsphere/json_io.hpp"

namespace {

using namespace padsphere;
using padsphere::Json;
namespace io = padsphere::jsonio;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNonDistal = 3;
constexpr int kExitInconclusive = 4;

Json load_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        text = buffer.str();
    }
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

// inline JSON array (starts with '[') or a path to a file holding one
Json load_vector_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '[') {
        try {
            return Json::parse(spec);
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("malformed vector literal: ") + e.what());
        }
    }
    return load_json(spec);
}

void apply_prime_override(Json& j, const std::optional<long long>& p) {
    if (p) j["p"] = *p;
}

int run_analyze(const std::string& input, bool with_split, long long precision, bool verify,
                const std::optional<long long>& p_override) {
    Json j = load_json(input);
    apply_prime_override(j, p_override);
    const Mat t = io::matrix_from_json(j);

    const auto started = std::chrono::steady_clock::now();
    const DistalityVerdict linear = is_distal_linear(t);
    const DistalityVerdict projective = is_distal_projective(t);

    Json report;
    report["input"] = io::matrix_to_json(t);
    report["linear"] = io::distality_to_json(linear);
    report["projective"] = io::distality_to_json(projective);
    report["slopes"] = io::slopes_to_json(linear.slopes);
    if (with_split) report["split"] = io::split_to_json(contraction_split_auto(t, precision));

    if (verify) {
        if (linear.distal) {
            const long long m = *linear.isometry_power;
            if (!t.pow(m).is_isometry())
                throw std::logic_error("verification failed: T^m is not an isometry");
            for (long long k = 1; k < m; ++k)
                if (t.pow(k).is_isometry())
                    throw std::logic_error("verification failed: smaller isometry power exists");
        }
        if (projective.distal) {
            const Mat normalized = p_power(t.prime(), *projective.scale_l) * t.pow(*projective.power_m);
            if (!is_distal_linear(normalized).distal)
                throw std::logic_error("verification failed: p^l T^m is not linearly distal");
        }
        report["verified"] = true;
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

    std::cout << report.dump(2) << "\n";
    return projective.distal ? kExitOk : kExitNonDistal;
}

int run_orbit(const std::string& map_path, const std::optional<std::string>& affine,
              const std::string& start, const std::optional<std::string>& pair,
              long long steps, const std::optional<long long>& p_override) {
    Json j = load_json(map_path);
    apply_prime_override(j, p_override);
    const Mat t = io::matrix_from_json(j);
    const Prime& p = t.prime();

    Vec x = io::vector_from_json(p, load_vector_spec(start)).normalize_to_sphere();
    std::optional<Vec> y;
    if (pair) y = io::vector_from_json(p, load_vector_spec(*pair)).normalize_to_sphere();

    std::optional<AffineSphereMap> affine_map;
    if (affine) affine_map.emplace(t, io::vector_from_json(p, load_vector_spec(*affine)));
    auto step = [&](const Vec& v) { return affine_map ? (*affine_map)(v) : apply_bar(t, v); };

    for (long long k = 0; k <= steps; ++k) {
        Json line;
        line["step"] = k;
        line["vector"] = io::vector_to_json(x);
        if (y) {
            line["pair_vector"] = io::vector_to_json(*y);
            line["separation_exponent"] = io::norm_to_json((x - *y).norm());
        }
        std::cout << line.dump() << "\n";
        if (k < steps) {
            x = step(x);
            if (y) y = step(*y);
        }
    }
    return kExitOk;
}

int run_witness(const std::string& input, const std::optional<long long>& l1, long long steps,
                bool verify, const std::optional<long long>& p_override) {
    Json j = load_json(input);
    apply_prime_override(j, p_override);
    const SDForm form = io::sdform_from_json(j);
    const NondistalWitness w =
        witness_nondistal(form, l1 ? std::optional<long long>(*l1) : std::nullopt, steps);

    Json report = io::witness_to_json(w);
    if (verify) {
        // replay the decay identity through the generic pair simulator
        const AffineSphereMap map(form.t(), w.a);
        const auto seps = pair_separation_series(map, w.x, w.y, steps * form.m());
        for (long long k = 1; k <= steps; ++k) {
            const long long expected = -k * w.decay_exponent + w.z.norm().exponent();
            if (seps[k * form.m()] != NormExp::finite(expected))
                throw std::logic_error("verification failed: decay identity mismatch");
        }
        report["verified"] = true;
    }
    std::cout << report.dump(2) << "\n";
    return kExitNonDistal;  // a witness demonstrates non-distality
}

int run_safe_radius(const std::string& input, const std::optional<long long>& p_override) {
    Json j = load_json(input);
    apply_prime_override(j, p_override);
    const SDForm form = io::sdform_from_json(j);
    std::cout << io::safe_radius_to_json(safe_radius(form)).dump(2) << "\n";
    return kExitOk;
}

int run_semigroup(const std::string& input, std::size_t cap, std::size_t scan_len,
                  const SearchParams& search, bool verify,
                  const std::optional<long long>& p_override) {
    Json j = load_json(input);
    apply_prime_override(j, p_override);
    const SemigroupSpec spec(io::generators_from_json(j));
    const SemigroupVerdict verdict = semigroup_distality(spec, cap, scan_len, search);

    Json report = io::semigroup_verdict_to_json(verdict);
    if (verify) {
        if (verdict.kind == SemigroupVerdictKind::Distal &&
            !verify_compact_certificate(spec.generators(), verdict.certificate->orbit))
            throw std::logic_error("verification failed: orbit is not generator-closed");
        if (verdict.witness) {
            const SlopeData slopes = eigenvalue_valuations(verdict.witness->element);
            if (!(slopes == verdict.witness->valuations))
                throw std::logic_error("verification failed: witness valuations changed");
        }
        if (verdict.proximal) {
            Vec u = verdict.proximal->x, v = verdict.proximal->y;
            for (const int g : verdict.proximal->word) {
                u = apply_bar(spec.generators()[g], u);
                v = apply_bar(spec.generators()[g], v);
            }
            if (!((u - v).norm() <= NormExp::finite(search.threshold_exponent)))
                throw std::logic_error("verification failed: proximal pair does not separate");
        }
        report["verified"] = true;
    }
    std::cout << report.dump(2) << "\n";
    switch (verdict.kind) {
        case SemigroupVerdictKind::Distal: return kExitOk;
        case SemigroupVerdictKind::NonDistal: return kExitNonDistal;
        case SemigroupVerdictKind::Inconclusive: return kExitInconclusive;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic sphere dynamics: distality analysis and certificates"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::optional<long long> p_override;
    app.add_option("--p", p_override, "override the prime from the input file");

    long long precision = 40;
    std::size_t cap = 10000;
    long long steps = 50;
    bool verify = false;
    unsigned long long seed = 12345;
    app.add_option("--precision", precision, "working precision for spectral splits")
        ->capture_default_str();
    app.add_option("--cap", cap, "lattice-class cap for orbit searches")->capture_default_str();
    app.add_option("--steps", steps, "iteration count for orbits and searches")
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized searches")->capture_default_str();
    app.add_flag("--verify", verify, "independently re-check every certificate emitted");

    auto* analyze = app.add_subcommand("analyze", "single-matrix distality report");
    std::string analyze_input;
    bool with_split = false;
    analyze->add_option("input", analyze_input, "matrix JSON file (or - for stdin)")->required();
    analyze->add_flag("--split", with_split, "include the contraction/neutral/expansion split");

    auto* orbit = app.add_subcommand("orbit", "dump a sphere orbit as JSON lines");
    std::string orbit_map, orbit_start;
    std::optional<std::string> orbit_affine, orbit_pair;
    orbit->add_option("--map", orbit_map, "matrix JSON file")->required();
    orbit->add_option("--affine", orbit_affine, "translation vector (inline JSON or file)");
    orbit->add_option("--start", orbit_start, "start vector (inline JSON or file)")->required();
    orbit->add_option("--pair", orbit_pair, "second vector: also dump separations");

    auto* witness = app.add_subcommand("witness", "explicit non-distality witness from an SD form");
    std::string witness_input;
    std::optional<long long> witness_l1;
    witness->add_option("input", witness_input, "SD-form JSON file")->required();
    witness->add_option("--l1", witness_l1, "diagonal exponent to use for the fast direction");

    auto* semigroup = app.add_subcommand("semigroup", "distality verdict for generated semigroups");
    std::string semigroup_input;
    std::size_t scan_len = 8;
    long long samples = 50;
    semigroup->add_option("input", semigroup_input, "generators JSON file")->required();
    semigroup->add_option("--scan-len", scan_len, "maximum witness product length")
        ->capture_default_str();
    semigroup->add_option("--samples", samples, "pairs sampled by the proximality fallback")
        ->capture_default_str();

    auto* radius = app.add_subcommand("safe-radius", "safe translation ball for an SD form");
    std::string radius_input;
    radius->add_option("input", radius_input, "SD-form JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(analyze_input, with_split, precision, verify, p_override);
        if (*orbit) return run_orbit(orbit_map, orbit_affine, orbit_start, orbit_pair, steps,
                                     p_override);
        if (*witness) return run_witness(witness_input, witness_l1, 10, verify, p_override);
        if (*radius) return run_safe_radius(radius_input, p_override);
        if (*semigroup) {
            SearchParams search;
            search.samples = samples;
            search.steps = steps;
            search.seed = seed;
            return run_semigroup(semigroup_input, cap, scan_len, search, verify, p_override);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
