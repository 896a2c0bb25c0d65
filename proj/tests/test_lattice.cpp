#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "padsphere/lattice.hpp"

using namespace padsphere;
using testutil::Rng;

TEST_CASE("canonical lattice forms", "[lattice-orbits]") {
    SECTION("identity basis is already canonical") {
        const Prime p(3);
        const auto l = canonicalize(Mat::identity(p, 2), LatticeMode::GL);
        CHECK(l.basis() == Mat::identity(p, 2));
    }
    SECTION("column operations do not change the class") {
        const Prime p(2);
        const auto a = canonicalize(Mat::diagonal(p, {Rat(2), Rat(1)}), LatticeMode::GL);
        const auto b = canonicalize(Mat(p, 2, {Rat(2), Rat(2), Rat(0), Rat(1)}), LatticeMode::GL);
        CHECK(a == b);
    }
    SECTION("homothety classes collapse scalar lattices") {
        const Prime p(3);
        const auto l = canonicalize(Mat::diagonal(p, {Rat(3), Rat(3)}), LatticeMode::PGL);
        CHECK(l.basis() == Mat::identity(p, 2));
    }
    SECTION("canonicalization is idempotent") {
        Rng rng(777);
        const Prime p(3);
        for (int rep = 0; rep < 20; ++rep) {
            const auto l = canonicalize(testutil::random_invertible(rng, p, 3), LatticeMode::GL);
            CHECK(canonicalize(l.basis(), LatticeMode::GL) == l);
        }
    }
    SECTION("singular bases are rejected") {
        const Prime p(3);
        CHECK_THROWS_AS(canonicalize(Mat(p, 2, {Rat(1), Rat(2), Rat(2), Rat(4)}), LatticeMode::GL),
                        std::domain_error);
    }
}

TEST_CASE("canonical form is invariant under GL(n, Z_(p)) column moves", "[lattice-orbits]") {
    Rng rng(888);
    for (const long long pv : {2ll, 3ll, 5ll}) {
        const Prime p(pv);
        for (const std::size_t n : {2u, 3u, 4u}) {
            for (int rep = 0; rep < 25; ++rep) {
                const Mat b = testutil::random_invertible(rng, p, n);
                const Mat u = testutil::random_unimodular(rng, p, n);
                for (const auto mode : {LatticeMode::GL, LatticeMode::PGL}) {
                    CHECK(canonicalize(b * u, mode) == canonicalize(b, mode));
                }
                // PGL forms also absorb scalar factors
                const Rat c = testutil::random_rational(rng, p, -2, 2);
                CHECK(canonicalize(c * b, LatticeMode::PGL) == canonicalize(b, LatticeMode::PGL));
            }
        }
    }
}

TEST_CASE("applying matrices to lattice classes", "[lattice-orbits]") {
    const Prime p2(2);
    const auto standard = LatticeClass::standard(p2, 2, LatticeMode::GL);

    SECTION("identity acts trivially") {
        CHECK(standard.apply(Mat::identity(p2, 2)) == standard);
    }
    SECTION("an order-two map returns after two steps") {
        const Mat t(p2, 2, {Rat(0), Rat(1, 2), Rat(2), Rat(0)});
        const auto once = standard.apply(t);
        CHECK(once != standard);
        CHECK(once.basis() == Mat::diagonal(p2, {Rat(1, 2), Rat(2)}));
        CHECK(once.apply(t) == standard);
    }
    SECTION("valuation drift produces a fresh class each step") {
        const Prime p3(3);
        const Mat t = Mat::diagonal(p3, {Rat(3), Rat(1, 3)});
        auto l = LatticeClass::standard(p3, 2, LatticeMode::GL);
        std::vector<std::string> keys{l.key()};
        for (int i = 0; i < 6; ++i) {
            l = l.apply(t);
            for (const auto& k : keys) CHECK(l.key() != k);
            keys.push_back(l.key());
        }
    }
    SECTION("the action respects composition") {
        Rng rng(999);
        const Prime p(3);
        for (int rep = 0; rep < 20; ++rep) {
            const Mat a = testutil::random_invertible(rng, p, 2);
            const Mat b = testutil::random_invertible(rng, p, 2);
            const auto l = canonicalize(testutil::random_invertible(rng, p, 2), LatticeMode::GL);
            CHECK(l.apply(b).apply(a) == l.apply(a * b));
        }
    }
}

TEST_CASE("minimal isometry power", "[lattice-orbits]") {
    CHECK(minimal_isometry_power(Mat::identity(Prime(5), 2)) == 1);
    CHECK(minimal_isometry_power(Mat(Prime(2), 2, {Rat(1), Rat(1, 2), Rat(0), Rat(1)})) == 2);
    CHECK(minimal_isometry_power(Mat(Prime(2), 2, {Rat(0), Rat(1, 2), Rat(2), Rat(0)})) == 2);
    CHECK_FALSE(minimal_isometry_power(Mat::diagonal(Prime(3), {Rat(3), Rat(1, 3)})).has_value());

    SECTION("agrees with the direct power-norm oracle and is minimal") {
        Rng rng(1234);
        const Prime p(3);
        int distal_seen = 0;
        for (int rep = 0; rep < 40; ++rep) {
            // conjugated isometries are distal with a possibly nontrivial power
            const Mat u = testutil::random_unimodular(rng, p, 2);
            const Mat c = testutil::random_invertible(rng, p, 2);
            const Mat t = c * u * c.inverse();
            const auto m = minimal_isometry_power(t);
            REQUIRE(m.has_value());
            ++distal_seen;
            CHECK(m == testutil::oracle_isometry_power(t, 2000));
            CHECK(t.pow(*m).is_isometry());
            for (long long k = 1; k < *m; ++k) CHECK_FALSE(t.pow(k).is_isometry());
        }
        CHECK(distal_seen == 40);
    }
}

TEST_CASE("group boundedness certificates", "[lattice-orbits]") {
    SECTION("integer generators stabilize the standard lattice") {
        const Prime p(5);
        const std::vector<Mat> gens{Mat(p, 2, {Rat(1), Rat(1), Rat(0), Rat(1)}),
                                    Mat(p, 2, {Rat(0), Rat(1), Rat(-1), Rat(0)})};
        const auto cert = group_boundedness(gens, LatticeMode::GL);
        REQUIRE(cert.compact);
        CHECK(cert.orbit.size() == 1);
        CHECK(verify_compact_certificate(gens, cert.orbit));
    }
    SECTION("central generators are trivial in PGL mode") {
        const Prime p(3);
        const std::vector<Mat> gens{Mat::diagonal(p, {Rat(3), Rat(3)})};
        const auto cert = group_boundedness(gens, LatticeMode::PGL);
        REQUIRE(cert.compact);
        CHECK(cert.orbit.size() == 1);
    }
    SECTION("the unipotent pair over Q_3 exceeds any cap and yields a witness") {
        const Prime p(3);
        const std::vector<Mat> gens{Mat(p, 2, {Rat(1), Rat(1, 3), Rat(0), Rat(1)}),
                                    Mat(p, 2, {Rat(1), Rat(0), Rat(1), Rat(1)})};
        const auto cert = group_boundedness(gens, LatticeMode::PGL, 500);
        REQUIRE_FALSE(cert.compact);
        REQUIRE(cert.witness.has_value());
        CHECK(cert.witness->word == std::vector<int>{0, 1});
        CHECK(cert.witness->element.char_poly() ==
              std::vector<Rat>{Rat(1), Rat(-7, 3), Rat(1)});
        REQUIRE(cert.witness->valuations.items.size() == 2);
        CHECK(cert.witness->valuations.items[0].first == Rat(-1));
        CHECK(cert.witness->valuations.items[1].first == Rat(1));
    }
    SECTION("the verdict is invariant under scaling generators in PGL mode") {
        Rng rng(4321);
        const Prime p(3);
        const std::vector<Mat> gens{Mat(p, 2, {Rat(1), Rat(1, 3), Rat(0), Rat(1)}),
                                    Mat(p, 2, {Rat(1), Rat(0), Rat(1), Rat(1)})};
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Mat> scaled = gens;
            const Rat c = testutil::random_rational(rng, p, -2, 2);
            scaled[rep % 2] = c * scaled[rep % 2];
            CHECK(group_boundedness(scaled, LatticeMode::PGL, 500).compact ==
                  group_boundedness(gens, LatticeMode::PGL, 500).compact);
        }
        const std::vector<Mat> compact_gens{Mat(p, 2, {Rat(0), Rat(1), Rat(-1), Rat(0)})};
        std::vector<Mat> scaled{Rat(9) * compact_gens[0]};
        CHECK(group_boundedness(scaled, LatticeMode::PGL).compact ==
              group_boundedness(compact_gens, LatticeMode::PGL).compact);
    }
}
