#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "shadow/asp.hpp"
#include "shadow/branching.hpp"
#include "shadow/census.hpp"
#include "shadow/group.hpp"
#include "shadow/invariants.hpp"
#include "shadow/shadow_build.hpp"

using namespace shadow;

namespace {

// cap with the first gleam of the right parity among 0, 1/2
Shadow cap_any(const Shadow& S, const std::string& circle)
{
    try {
        return cap_boundary(S, circle, HalfInteger{0});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidInput)
            throw;
        return cap_boundary(S, circle, HalfInteger{1});
    }
}

bool branched(const Shadow& S) { return S.branching && is_branching(S.poly, *S.branching); }

bool mentions(const Shadow& S, const std::string& prefix)
{
    return std::any_of(S.poly.regions.begin(), S.poly.regions.end(), [&](auto& r) { return r.id.rfind(prefix, 0) == 0; });
}

Shadow e_disk()
{
    Shadow D = recolor_boundary(fixture("disk"), "l1", Color::E);
    D.branching = find_branching(D.poly);
    return D;
}

}  // namespace

TEST_CASE("capping a disk gives a sphere")
{
    Shadow D = fixture("disk");
    Shadow S = cap_boundary(D, "l1", HalfInteger{0});
    CHECK(validate(S.poly).valid);
    CHECK(euler_characteristic(S.poly) == euler_characteristic(D.poly) + 1);
    CHECK(predicates(S.poly).is_closed);
}

TEST_CASE("cap errors")
{
    Shadow D = fixture("disk");
    CHECK_THROWS_AS(cap_boundary(D, "nope", HalfInteger{0}), Error);
    try {
        cap_boundary(D, "l1", HalfInteger{1});
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidInput);
    }
    Shadow Y = fixture("YxI");
    try {
        cap_boundary(Y, "g1", HalfInteger{0});
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotCappable);
    }
}

TEST_CASE("27-ii capped with 1/2 and 1")
{
    Shadow C = cap_boundary(cap_boundary(load_model("27-ii"), "l1", HalfInteger{1}), "l2", HalfInteger{2});
    CHECK(validate(C.poly).valid);
    CHECK(complexity_c(C.poly) == 1);
    CHECK(branched(C));
}

TEST_CASE("27-i capped twice is the abalone")
{
    Shadow one = cap_any(load_model("27-i"), "l1");
    CHECK(validate(one.poly).valid);
    Shadow C = cap_any(one, "l2");
    CHECK(validate(C.poly).valid);
    CHECK(predicates(C.poly).is_special);
    C.poly.name = "abalone";
    CHECK(serialize_polyhedron(canonicalize(C.poly)) == serialize_polyhedron(canonicalize(fixture("fig35-abalone").poly)));
    CHECK(is_trivial_group(pi1_presentation(C.poly)).verdict == Triviality::Trivial);
}

TEST_CASE("towers")
{
    Shadow D = fixture("disk");
    int loops = vertexless_loops(D.poly);
    Shadow T1 = attach_tower(D, "l1", 1, {HalfInteger{0}});
    CHECK(validate(T1.poly).valid);
    CHECK(vertexless_loops(T1.poly) == loops + 1);
    CHECK(complexity_c(T1.poly) == complexity_c(D.poly));
    Shadow T3 = attach_tower(D, "l1", 3, {HalfInteger{0}, HalfInteger{2}, HalfInteger{-2}});
    CHECK(validate(T3.poly).valid);
    CHECK(vertexless_loops(T3.poly) == loops + 3);
    CHECK_THROWS_AS(attach_tower(D, "l1", 2, {HalfInteger{0}}), Error);
    CHECK_THROWS_AS(attach_tower(D, "l1", 0, {}), Error);
}

TEST_CASE("32-ii with a tower on each of l1, l2")
{
    Shadow S = load_model("32-ii");
    S = attach_tower(S, "l1", 1, {HalfInteger{0}});
    S = attach_tower(S, "l2", 1, {HalfInteger{0}});
    CHECK(validate(S.poly).valid);
    CHECK(complexity_c(S.poly) == 1);
}

TEST_CASE("recolor keeps everything else")
{
    Shadow S = fixture("fig10");
    Shadow T = recolor_boundary(S, "k1", Color::F);
    CHECK(T.poly.circle("k1")->color == Color::F);
    CHECK(complexity_c(T.poly) == 0);
    CHECK_FALSE(predicates(T.poly).is_proper);
    CHECK_THROWS_AS(recolor_boundary(S, "zz", Color::E), Error);
}

TEST_CASE("eliminating boundary vertices")
{
    Shadow F = fixture("fig10");
    CHECK(serialize_asp(eliminate_boundary_vertices(F).poly, F.branching) == serialize_asp(F.poly, F.branching));
    for (auto [name, bv] : {std::pair{"YxI", 2}, std::pair{"HxI", 4}}) {
        CAPTURE(name);
        Shadow S = fixture(name);
        REQUIRE(S.poly.boundary_vertices() == bv);
        Shadow E = eliminate_boundary_vertices(S);
        CHECK(validate(E.poly).valid);
        CHECK(E.poly.true_vertices() == bv);
        CHECK(E.poly.boundary_vertices() == 0);
        CHECK(complexity_c(E.poly) == complexity_c(S.poly));
        CHECK(branched(E));
    }
}

TEST_CASE("connected sums")
{
    Shadow sphere = fixture("sphere");
    Shadow SS = connected_sum(sphere, sphere);
    CHECK(validate(SS.poly).valid);
    CHECK(complexity_c(SS.poly) == 0);
    Shadow F = fixture("fig10");
    Shadow FF = connected_sum(F, F);
    CHECK(validate(FF.poly).valid);
    CHECK(complexity_c(FF.poly) == 0);
    CHECK(branched(FF));
    Shadow C = cap_any(cap_any(load_model("27-iv"), "l1"), "l2");
    Shadow CF = connected_sum(C, F);
    CHECK(validate(CF.poly).valid);
    CHECK(complexity_c(CF.poly) == 1);
}

TEST_CASE("torus sums")
{
    Shadow D = e_disk();
    Shadow DD = torus_sum(D, "l1", D, "l1", false);
    CHECK(validate(DD.poly).valid);
    CHECK(complexity_c(DD.poly) == 0);
    Shadow E = torus_sum(load_model("27-iv"), "l1", D, "l1", false);
    CHECK(validate(E.poly).valid);
    CHECK(complexity_c(E.poly) == 1);
    CHECK(branched(E));
    CHECK_THROWS_AS(torus_sum(fixture("disk"), "l1", D, "l1", false), Error);
}

TEST_CASE("Q0 goes in when Q cannot carry the branching")
{
    Shadow A = load_model("27-iv");
    // a branching with opposite signs on the regions of l1 and l2
    const std::string r1 = A.poly.circle("l1")->region, r2 = A.poly.circle("l2")->region;
    bool tried = false;
    for (auto& b : enumerate_branchings(A.poly)) {
        if (b.sign.at(r1) == b.sign.at(r2))
            continue;
        tried = true;
        Shadow B = A;
        B.branching = b;
        Shadow T = torus_self_sum(B, "l1", "l2", false);
        CHECK(validate(T.poly).valid);
        CHECK(branched(T));
        CHECK(complexity_c(T.poly) == 1);
        CHECK(mentions(T, "p_"));
    }
    CHECK(tried);
    // same signs: Q alone
    Shadow T = torus_self_sum(A, "l1", "l2", false);
    CHECK(mentions(T, "q_"));
    CHECK_FALSE(mentions(T, "p_"));
}

TEST_CASE("resolving H-shaped boundaries")
{
    Shadow F = fixture("fig10");
    CHECK(serialize_asp(resolve_all_type3(F).poly, F.branching) == serialize_asp(F.poly, F.branching));
    Shadow H = fixture("HxI");
    Shadow R = resolve_type3(H, "h1");
    CHECK(validate(R.poly).valid);
    CHECK(R.poly.true_vertices() == H.poly.true_vertices() + 2);
    CHECK(R.poly.boundary_vertices() == 0);
    CHECK(branched(R));
    Shadow HH = connected_sum(H, H);
    Shadow RR = resolve_all_type3(HH);
    CHECK(validate(RR.poly).valid);
    CHECK(RR.poly.true_vertices() == HH.poly.true_vertices() + 4);
    CHECK(branched(RR));
    CHECK_THROWS_AS(resolve_type3(fixture("YxI"), "g1"), Error);
}

TEST_CASE("Q, Q0 and Q_i fixtures")
{
    for (auto S : {fixture_Q(), fixture_Q0(), fixture_Qi()}) {
        CAPTURE(S.poly.name);
        CHECK(validate(S.poly).valid);
        CHECK(branched(S));
    }
    CHECK(complexity_c(fixture_Q().poly) == 0);
    CHECK(fixture_Qi().poly.true_vertices() == 2);
    CHECK(fixture_Qi().poly.boundary_vertices() == 4);
    // the shipped files agree with the embedded ones
    CHECK(serialize_asp(fixture("Q").poly, fixture("Q").branching) == serialize_asp(fixture_Q().poly, fixture_Q().branching));
    CHECK(serialize_asp(fixture("Qi").poly, fixture("Qi").branching) == serialize_asp(fixture_Qi().poly, fixture_Qi().branching));
}

TEST_CASE("special only once every circle is capped")
{
    Shadow two = cap_any(cap_any(load_model("27-iv"), "l1"), "l2");
    CHECK_FALSE(predicates(two.poly).is_special);
    Shadow all = cap_any(cap_any(two, "l3"), "l4");
    CHECK(predicates(all.poly).is_special);
}
