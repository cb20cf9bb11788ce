#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "shadow/branching.hpp"
#include "shadow/census.hpp"
#include "shadow/complexity.hpp"
#include "shadow/invariants.hpp"
#include "shadow/shadow_build.hpp"

using namespace shadow;

namespace {

// Cl_2(x) = x - x log x + sum |B_2k| x^(2k+1) / (2k (2k+1)!), 0 < x < 2 pi
long double clausen2(long double x)
{
    std::vector<long double> B(64, 0);
    B[0] = 1;
    for (int m = 1; m < 64; ++m) {
        long double s = 0, binom = 1;  // C(m+1, k)
        for (int k = 0; k < m; ++k) {
            s += binom * B[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        B[m] = -s / (m + 1);
    }
    long double sum = x - x * std::log(x);
    long double fact = 1;  // (2k+1)!
    long double pw = x;    // x^(2k+1)
    for (int k = 1; 2 * k < 64; ++k) {
        fact *= (2 * k) * (2 * k + 1);
        pw *= x * x;
        sum += std::fabs(B[2 * k]) * pw / (2 * k * fact);
    }
    return sum;
}

// Lobachevsky function
long double lob(long double t) { return clausen2(2 * t) / 2; }

const long double PI = std::numbers::pi_v<long double>;

long double lower_oracle(int c, long double sl)
{
    long double v = 8 * lob(PI / 4);
    long double q = 2 * PI / sl;
    return 2 * c * v * std::pow(1 - q * q, 1.5L);
}

Shadow cap_all(Shadow S)
{
    std::vector<std::string> ids;
    for (auto& c : S.poly.boundary)
        ids.push_back(c.id);
    for (auto& id : ids) {
        try {
            S = cap_boundary(S, id, HalfInteger{0});
        } catch (const Error&) {
            S = cap_boundary(S, id, HalfInteger{1});
        }
    }
    return S;
}

}  // namespace

TEST_CASE("volume constants from the Lobachevsky function")
{
    CHECK(std::fabs(V_OCT - static_cast<double>(8 * lob(PI / 4))) < 1e-12);
    CHECK(std::fabs(V_TET - static_cast<double>(3 * lob(PI / 3))) < 1e-12);
}

TEST_CASE("stable map complexity")
{
    CHECK(stable_map_complexity({0, 0}) == 0);
    CHECK(stable_map_complexity({1, 0}) == 1);
    CHECK(stable_map_complexity({3, 2}) == 7);
}

TEST_CASE("fiber census")
{
    Shadow F = fixture("fig10");
    FiberCensus f = fiber_census(F.poly, *F.branching);
    CHECK(f.signature.ii2 == 0);
    CHECK(f.signature.ii3 == 0);
    CHECK(f.i1_families == 1);
    LinkShadow L = shadow_from_diagram(diagram("fig8"));
    REQUIRE(L.reduced.branching);
    FiberCensus g = fiber_census(L.reduced.poly, *L.reduced.branching);
    CHECK(g.signature.ii2 == 2);
    CHECK(g.signature.ii3 == 0);
    Shadow S = fixture("sphere");
    FiberCensus s = fiber_census(S.poly, *find_branching(S.poly));
    CHECK(s.signature.ii2 == 0);
    CHECK(s.i0_families == 0);
    CHECK(s.i1_families == 0);
    Shadow Y = fixture("YxI");
    CHECK_THROWS_AS(fiber_census(Y.poly, *Y.branching), Error);
}

TEST_CASE("ii2 equals c on every branched fixture without boundary vertices")
{
    for (auto& name : asp_fixtures()) {
        CAPTURE(name);
        Shadow S = fixture(name);
        if (!S.branching || S.poly.boundary_vertices() > 0 || !validate(S.poly).valid)
            continue;
        FiberCensus f = fiber_census(S.poly, *S.branching);
        CHECK(stable_map_complexity(f.signature) == complexity_c(S.poly));
    }
}

TEST_CASE("smc upper bounds")
{
    CHECK(smc_upper_bound(fixture("fig10").poly).c == 0);
    CHECK(smc_upper_bound(fixture("fig10").poly).graph);
    CHECK(smc_upper_bound(shadow_from_diagram(diagram("fig8")).reduced.poly).c == 2);
    CHECK(smc_upper_bound(cap_all(load_model("27-iv")).poly).c == 1);
}

TEST_CASE("slope lengths on the capped 27-ii model")
{
    Shadow base = cap_boundary(cap_boundary(load_model("27-ii"), "l1", HalfInteger{1}), "l2", HalfInteger{2});
    for (auto [g, expect] : {std::pair{1, std::sqrt(20.0)}, std::pair{5, std::sqrt(116.0)}}) {
        Shadow S = cap_boundary(base, "l3", HalfInteger{2 * g});
        SlopeData d = sl_of(S.poly);
        const RegionSlope* r3 = nullptr;
        for (auto& r : d.regions)
            if (r.region == "r3")
                r3 = &r;
        REQUIRE(r3);
        CHECK(r3->k == 4);
        CHECK(r3->g2 == 2 * g);
        CHECK(r3->sl == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("sl_of needs a special polyhedron")
{
    try {
        sl_of(fixture("fig10").poly);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSpecial);
    }
}

TEST_CASE("volume window")
{
    const double threshold = 2 * std::numbers::pi * std::sqrt(2.0);
    CHECK(threshold == doctest::Approx(8.8857659).epsilon(1e-8));
    CHECK_FALSE(volume_window(1, threshold - 1e-6).certificate);
    CHECK(volume_window(1, threshold + 1e-6).certificate);

    VolumeReport r = volume_window(2, 10.0);
    REQUIRE(r.lower);
    CHECK(std::fabs(*r.lower - static_cast<double>(lower_oracle(2, 10))) < 1e-9);
    CHECK(*r.lower == doctest::Approx(6.9005).epsilon(1e-4));
    CHECK(r.upper_strict == doctest::Approx(14.6554).epsilon(1e-4));
    CHECK_FALSE(volume_window(2, 5.0).lower.has_value());

    Shadow S = fixture("sl10");
    VolumeReport f = volume_window(S.poly);
    CHECK(f.c == 2);
    CHECK(f.sl_min == doctest::Approx(10.0));
    CHECK_FALSE(f.certificate);
    CHECK(volume_window(fixture("certified").poly).certificate);
}

TEST_CASE("lower bound is monotone in sl")
{
    for (int c = 1; c <= 5; ++c) {
        double prev = 0;
        for (double sl = 6.3; sl < 60; sl += 0.37) {
            double lo = *volume_window(c, sl).lower;
            CHECK(lo >= prev);
            prev = lo;
        }
    }
}

TEST_CASE("Gromov norm bound")
{
    CHECK(gromov_lower_bound(0).value == 0);
    GromovBound b = gromov_lower_bound(2);
    CHECK(b.value == doctest::Approx(0.27704).epsilon(1e-4));
    CHECK(b.ceil == 1);
    GromovBound c = gromov_lower_bound(7.2191);
    const long double ratio = 3 * lob(PI / 3) / (2 * 8 * lob(PI / 4));
    CHECK(std::fabs(c.value - static_cast<double>(7.2191L * ratio)) < 1e-12);
    CHECK(c.value < 1);
    CHECK(c.ceil == 1);
    CHECK_THROWS_AS(gromov_lower_bound(-1), Error);
}
