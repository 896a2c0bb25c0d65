#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "padsphere/sdform.hpp"
#include "padsphere/search.hpp"

using namespace padsphere;
using testutil::Rng;

TEST_CASE("normalized sphere action", "[sphere-dynamics]") {
    const Prime p(3);
    const Mat t = Mat::diagonal(p, {Rat(3), Rat(1)});

    CHECK(apply_bar(Mat::identity(p, 2), Vec(p, {Rat(1), Rat(3)})) == Vec(p, {Rat(1), Rat(3)}));
    CHECK(apply_bar(t, Vec(p, {Rat(1), Rat(3)})) == Vec(p, {Rat(1), Rat(1)}));
    CHECK(apply_bar(t, Vec(p, {Rat(1), Rat(1)})) == Vec(p, {Rat(3), Rat(1)}));
    CHECK_THROWS_AS(apply_bar(t, Vec(p, {Rat(3), Rat(3)})), std::domain_error);

    SECTION("homomorphism and scaling laws") {
        Rng rng(11);
        for (int rep = 0; rep < 50; ++rep) {
            const Mat a = testutil::random_invertible(rng, p, 2);
            const Mat b = testutil::random_invertible(rng, p, 2);
            const Vec x = testutil::random_sphere_vector(rng, p, 2);
            CHECK(apply_bar(a * b, x) == apply_bar(a, apply_bar(b, x)));
            const long long k = testutil::uniform_ll(rng, -2, 2);
            CHECK(apply_bar(p_power(p, k) * a, x) == apply_bar(a, x));
        }
    }
}

TEST_CASE("affine sphere maps", "[sphere-dynamics]") {
    const Prime p(3);

    SECTION("dimension one: translation by a small amount") {
        const Mat one = Mat::identity(p, 1);
        const AffineSphereMap m(one, Vec(p, {Rat(3)}));
        CHECK(m.mode() == AffineSphereMap::Mode::Homeomorphism);
        for (const long long u : {1ll, 2ll, 4ll, 5ll, 7ll}) {
            CHECK(m(Vec(p, {Rat(u)})) == Vec(p, {Rat(u + 3)}));
        }
    }

    SECTION("two dimensional fixture") {
        const Mat t = Mat::diagonal(p, {Rat(1), Rat(3)});
        const AffineSphereMap m(t, Vec(p, {Rat(3), Rat(0)}));
        CHECK(m(Vec(p, {Rat(1), Rat(0)})) == Vec(p, {Rat(4), Rat(0)}));
        CHECK(m(Vec(p, {Rat(1), Rat(3)})) == Vec(p, {Rat(4), Rat(9)}));
    }

    SECTION("the boundary case ||T^-1 a|| = 1 is rejected") {
        CHECK_THROWS_AS(AffineSphereMap(Mat::identity(p, 2), Vec(p, {Rat(1), Rat(0)})),
                        std::domain_error);
        CHECK_THROWS_AS(AffineSphereMap(Mat::identity(p, 2), Vec::zero(p, 2)),
                        std::domain_error);
    }

    SECTION("||T^-1 a|| > 1 is injective-only") {
        const AffineSphereMap m(Mat::identity(p, 2), Vec(p, {Rat(1, 3), Rat(0)}));
        CHECK(m.mode() == AffineSphereMap::Mode::InjectiveOnly);
        CHECK_THROWS_AS(m.inverse_apply(Vec(p, {Rat(1), Rat(0)})), std::logic_error);
    }
}

TEST_CASE("affine inverse and round trips", "[sphere-dynamics]") {
    const Prime p(3);
    const Mat t = Mat::diagonal(p, {Rat(1), Rat(3)});
    const AffineSphereMap m(t, Vec(p, {Rat(3), Rat(0)}));

    CHECK(m.inverse_apply(Vec(p, {Rat(4), Rat(0)})) == Vec(p, {Rat(1), Rat(0)}));

    SECTION("scalar translation inverse") {
        const AffineSphereMap one(Mat::identity(p, 1), Vec(p, {Rat(3)}));
        CHECK(one.inverse_apply(Vec(p, {Rat(5)})) == Vec(p, {Rat(2)}));
    }

    SECTION("round trip on random sphere points") {
        Rng rng(22);
        for (int rep = 0; rep < 100; ++rep) {
            const Vec x = testutil::random_sphere_vector(rng, p, 2);
            CHECK(m.inverse_apply(m(x)) == x);
            CHECK(m(m.inverse_apply(x)) == x);
        }
    }

    SECTION("no surjectivity when ||T^-1 a|| > 1") {
        const Vec a(p, {Rat(1, 3), Rat(0)});
        const Mat id = Mat::identity(p, 2);
        const Vec y = a * a.norm().as_rational(p);  // y = ||a|| a, on the sphere
        REQUIRE(y.on_sphere());
        const Vec z = id.inverse() * y;
        const Vec x = z * z.norm().as_rational(p) - id.inverse() * a;
        CHECK(x.norm() != NormExp::finite(0));
    }
}

TEST_CASE("closed orbit form equals direct iteration", "[sphere-dynamics]") {
    const Prime p(3);
    const Mat t = Mat::diagonal(p, {Rat(1), Rat(3)});
    const Vec a(p, {Rat(3), Rat(0)});
    const Vec x(p, {Rat(1), Rat(3)});

    SECTION("fixture steps") {
        CHECK(closed_form_orbit(t, a, x, 0).first == x);
        CHECK(closed_form_orbit(t, a, x, 1).first == Vec(p, {Rat(4), Rat(9)}));
        CHECK(closed_form_orbit(t, a, x, 2).first == Vec(p, {Rat(7), Rat(27)}));
        const auto [pt, coeffs] = closed_form_orbit(t, a, x, 2);
        CHECK(coeffs.beta[0] == NormExp::finite(0));
        CHECK(coeffs.beta.size() == 3);
        CHECK(coeffs.alpha.size() == 2);
    }

    SECTION("agreement with the simulator for 50 steps") {
        Rng rng(33);
        const AffineSphereMap map(t, a);
        for (int rep = 0; rep < 5; ++rep) {
            const Vec x0 = testutil::random_sphere_vector(rng, p, 2);
            Vec u = x0;
            for (long long j = 1; j <= 50; ++j) {
                u = map(u);
                if (j % 10 == 0 || j <= 3)
                    CHECK(closed_form_orbit(t, a, x0, j).first == u);
            }
        }
    }

    SECTION("translations outside the safe ball are rejected") {
        CHECK_THROWS_AS(closed_form_orbit(t, Vec(p, {Rat(1), Rat(0)}), x, 3),
                        std::domain_error);
    }
}

TEST_CASE("SD form validation", "[sphere-dynamics]") {
    const Prime p(3);
    const Mat t = Mat::diagonal(p, {Rat(1), Rat(3)});
    CHECK_NOTHROW(SDForm(t, 1, Mat::identity(p, 2), {0, 1}));
    // wrong diagonal
    CHECK_THROWS_AS(SDForm(t, 1, Mat::identity(p, 2), {0, 2}), std::invalid_argument);
    // S must be an isometry
    CHECK_THROWS_AS(SDForm(t, 1, Mat::diagonal(p, {Rat(3), Rat(1)}), {0, 1}),
                    std::invalid_argument);
    // T^2 = 3*Id presented with m = 2
    const Mat r(p, 2, {Rat(0), Rat(3), Rat(1), Rat(0)});
    CHECK_NOTHROW(SDForm(r, 2, Mat::identity(p, 2), {1, 1}));
    // S must commute with T
    const Mat s_bad(p, 2, {Rat(0), Rat(1), Rat(1), Rat(0)});
    CHECK_THROWS_AS(SDForm(Mat::identity(p, 2), 1, s_bad, {0, 0}), std::invalid_argument);
}

TEST_CASE("safe radius", "[sphere-dynamics]") {
    const Prime p(3);

    SECTION("m = 1 diagonal fixture") {
        const SDForm f(Mat::diagonal(p, {Rat(1), Rat(3)}), 1, Mat::identity(p, 2), {0, 1});
        const auto r = safe_radius(f);
        CHECK(r.c0_exponent == 0);
        CHECK(r.c1_exponent == 0);
        // the homeomorphism bound 1/||T^-1|| = 3^-1 is what bites here
        CHECK(r.radius_exponent == -2);
    }

    SECTION("m = 2 antidiagonal fixture") {
        const SDForm f(Mat(p, 2, {Rat(0), Rat(3), Rat(1), Rat(0)}), 2, Mat::identity(p, 2),
                       {1, 1});
        const auto r = safe_radius(f);
        CHECK(r.c0_exponent == -1);
        CHECK(r.c1_exponent == 0);
        CHECK(r.radius_exponent == -3);
    }

    SECTION("identity") {
        const SDForm f(Mat::identity(p, 2), 1, Mat::identity(p, 2), {0, 0});
        CHECK(safe_radius(f).radius_exponent == -1);
    }

    SECTION("every nonzero a in the ball yields a homeomorphism") {
        Rng rng(44);
        const SDForm f(Mat::diagonal(p, {Rat(3), Rat(3)}), 1, Mat::identity(p, 2), {1, 1});
        const auto r = safe_radius(f);
        for (int rep = 0; rep < 30; ++rep) {
            const Vec a = testutil::random_sphere_vector(rng, p, 2) *
                          p_power(p, -r.radius_exponent + testutil::uniform_ll(rng, 0, 2));
            REQUIRE(a.norm() <= NormExp::finite(r.radius_exponent));
            const AffineSphereMap m(f.t(), a);
            CHECK(m.mode() == AffineSphereMap::Mode::Homeomorphism);
        }
    }
}

TEST_CASE("non-distality witness constructor", "[sphere-dynamics]") {
    const Prime p(3);

    SECTION("diag(1,3) fixture") {
        const SDForm f(Mat::diagonal(p, {Rat(1), Rat(3)}), 1, Mat::identity(p, 2), {0, 1});
        const auto w = witness_nondistal(f);
        CHECK(w.x == Vec(p, {Rat(1), Rat(0)}));
        CHECK(w.z == Vec(p, {Rat(0), Rat(3)}));
        CHECK(w.y == Vec(p, {Rat(1), Rat(3)}));
        CHECK(w.a == Vec(p, {Rat(9), Rat(0)}));
        CHECK(w.decay_exponent == 1);
        REQUIRE(w.separations.size() == 10);
        CHECK(w.separations[0] == NormExp::finite(-2));
        CHECK(w.separations[1] == NormExp::finite(-3));
    }

    SECTION("diag(1,1,9) decays by two digits per step") {
        const SDForm f(Mat::diagonal(p, {Rat(1), Rat(1), Rat(9)}), 1, Mat::identity(p, 3),
                       {0, 0, 2});
        const auto w = witness_nondistal(f);
        CHECK(w.decay_exponent == 2);
        CHECK(w.separations[0] == NormExp::finite(-3));
        CHECK(w.separations[1] == NormExp::finite(-5));
    }

    SECTION("scalar D has no witness") {
        const SDForm f(Mat::diagonal(p, {Rat(3), Rat(3)}), 1, Mat::identity(p, 2), {1, 1});
        CHECK_THROWS_AS(witness_nondistal(f), NoWitnessError);
    }

    SECTION("explicit l1 choice is validated") {
        const SDForm f(Mat::diagonal(p, {Rat(1), Rat(3)}), 1, Mat::identity(p, 2), {0, 1});
        CHECK_NOTHROW(witness_nondistal(f, 1));
        CHECK_THROWS_AS(witness_nondistal(f, 2), std::invalid_argument);
    }
}

TEST_CASE("pair separation series", "[sphere-dynamics]") {
    const Prime p(3);
    const Vec x(p, {Rat(1), Rat(0)});
    const Vec y(p, {Rat(1), Rat(3)});

    SECTION("identity map gives a constant series") {
        const auto seps = pair_separation_series(
            [&](const Vec& v) { return apply_bar(Mat::identity(p, 2), v); }, x, y, 10);
        for (const auto& s : seps) CHECK(s == NormExp::finite(-1));
    }

    SECTION("diag(1,3) contracts the witness pair geometrically") {
        const Mat t = Mat::diagonal(p, {Rat(1), Rat(3)});
        const auto seps =
            pair_separation_series([&](const Vec& v) { return apply_bar(t, v); }, x, y, 5);
        for (std::size_t j = 0; j < seps.size(); ++j)
            CHECK(seps[j] == NormExp::finite(-1 - static_cast<long long>(j)));
    }

    SECTION("central scalars act trivially") {
        const Mat t = Mat::diagonal(p, {Rat(3), Rat(3)});
        const auto seps =
            pair_separation_series([&](const Vec& v) { return apply_bar(t, v); }, x, y, 5);
        for (const auto& s : seps) CHECK(s == NormExp::finite(-1));
    }

    SECTION("distal maps have periodic separations") {
        Rng rng(55);
        const Prime p2(2);
        const Mat t(p2, 2, {Rat(1), Rat(1, 2), Rat(0), Rat(1)});  // isometry power 2
        for (int rep = 0; rep < 10; ++rep) {
            const Vec u = testutil::random_sphere_vector(rng, p2, 2);
            const Vec v = testutil::random_sphere_vector(rng, p2, 2);
            if (u == v) continue;
            const auto seps =
                pair_separation_series([&](const Vec& w) { return apply_bar(t, w); }, u, v, 20);
            for (std::size_t j = 0; j + 2 < seps.size(); ++j) CHECK(seps[j] == seps[j + 2]);
        }
    }
}

TEST_CASE("distance preservation for projectively distal affine maps",
          "[sphere-dynamics]") {
    Rng rng(66);
    const Prime p(3);
    // T^2 = 3*Id: projectively distal with m = 2
    const SDForm f(Mat(p, 2, {Rat(0), Rat(3), Rat(1), Rat(0)}), 2, Mat::identity(p, 2), {1, 1});
    const auto radius = safe_radius(f);
    const Vec a = Vec::basis(p, 2, 0) * p_power(p, -radius.radius_exponent);
    const AffineSphereMap map(f.t(), a);
    for (int rep = 0; rep < 10; ++rep) {
        const Vec x = testutil::random_sphere_vector(rng, p, 2);
        const Vec y = testutil::random_sphere_vector(rng, p, 2);
        if (x == y) continue;
        const auto seps = pair_separation_series(map, x, y, 2 * 10);
        for (long long k = 1; k <= 10; ++k) CHECK(seps[2 * k] == seps[0]);
    }
}

TEST_CASE("proximality search", "[sphere-dynamics]") {
    const Prime p(3);

    SECTION("finds contraction for diag(1,3)") {
        const SphereMap map(Mat::diagonal(p, {Rat(1), Rat(3)}));
        SearchParams params;
        params.steps = 15;
        const auto hit = proximality_search(map, params);
        REQUIRE(hit.has_value());
        CHECK(hit->separation <= NormExp::finite(-10));
        CHECK(hit->step <= 15);
    }

    SECTION("reports nothing for isometries") {
        const SphereMap map(Mat(p, 2, {Rat(1), Rat(1), Rat(0), Rat(1)}));
        SearchParams params;
        params.samples = 20;
        params.steps = 20;
        CHECK_FALSE(proximality_search(map, params).has_value());
    }

    SECTION("finds the witness pair for the affine witness map") {
        const SDForm f(Mat::diagonal(p, {Rat(1), Rat(3)}), 1, Mat::identity(p, 2), {0, 1});
        const auto w = witness_nondistal(f);
        const AffineSphereMap map(f.t(), w.a);
        SearchParams params;
        params.steps = 20;
        const auto hit = proximality_search(map, params);
        REQUIRE(hit.has_value());
        CHECK(hit->separation <= NormExp::finite(-10));
    }

    SECTION("threshold must be negative") {
        const SphereMap map(Mat::identity(p, 2));
        SearchParams params;
        params.threshold_exponent = 0;
        CHECK_THROWS_AS(proximality_search(map, params), std::invalid_argument);
    }

    SECTION("identical seeds give identical results") {
        const SphereMap map(Mat::diagonal(p, {Rat(1), Rat(3)}));
        SearchParams params;
        params.steps = 15;
        const auto a = proximality_search(map, params);
        const auto b = proximality_search(map, params);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->x == b->x);
        CHECK(a->y == b->y);
        CHECK(a->step == b->step);
        CHECK(a->sample_index == b->sample_index);
    }
}
