#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "shadow/asp.hpp"
#include "shadow/branching.hpp"
#include "shadow/census.hpp"
#include "shadow/complexity.hpp"
#include "shadow/invariants.hpp"
#include "shadow/isomorphism.hpp"
#include "shadow/shadow_build.hpp"

using namespace shadow;

namespace {

// Laurent polynomial in A
using Poly = std::map<int, long long>;

Poly mul(const Poly& a, const Poly& b)
{
    Poly r;
    for (auto& [i, x] : a)
        for (auto& [j, y] : b)
            r[i + j] += x * y;
    std::erase_if(r, [](auto& p) { return p.second == 0; });
    return r;
}

// state sum; X[a,b,c,d]: A-smoothing pairs (a,b),(c,d), B-smoothing (a,d),(b,c)
Poly jones_in_A(const LinkDiagram& D)
{
    if (D.round_unknot || D.X.empty())
        return {{0, 1}};
    int n = D.crossing_count();
    const Poly delta{{2, -1}, {-2, -1}};
    Poly total;
    for (long mask = 0; mask < (1L << n); ++mask) {
        std::map<int, int> parent;
        std::function<int(int)> find = [&](int x) {
            if (!parent.count(x))
                parent[x] = x;
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        int a = 0;
        for (int x = 0; x < n; ++x) {
            auto& c = D.X[x];
            bool A = !((mask >> x) & 1);
            a += A ? 1 : -1;
            if (A) {
                parent[find(c[0])] = find(c[1]);
                parent[find(c[2])] = find(c[3]);
            } else {
                parent[find(c[0])] = find(c[3]);
                parent[find(c[1])] = find(c[2]);
            }
        }
        int loops = 0;
        for (auto& [k, v] : parent)
            if (find(k) == k)
                ++loops;
        Poly term{{a, 1}};
        for (int i = 1; i < loops; ++i)
            term = mul(term, delta);
        for (auto& [e, v] : term)
            total[e] += v;
    }
    int w = std::accumulate(D.sign.begin(), D.sign.end(), 0);
    // (-A^3)^{-w}
    Poly norm{{-3 * w, (w % 2) ? -1 : 1}};
    Poly r = mul(total, norm);
    std::erase_if(r, [](auto& p) { return p.second == 0; });
    return r;
}

const char* TREFOIL = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]";
const char* FIG8 = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";

}  // namespace

TEST_CASE("PD faces by Euler's formula")
{
    LinkDiagram T = parse_pd(TREFOIL);
    CHECK(T.crossing_count() == 3);
    CHECK(T.face_count() == 5);
    LinkDiagram F = parse_pd(FIG8);
    CHECK(F.crossing_count() == 4);
    CHECK(F.face_count() == 6);
    LinkDiagram U = parse_pd("PD[]");
    CHECK(U.component_count() == 1);
    CHECK(U.face_count() == 2);
}

TEST_CASE("Seifert circles")
{
    CHECK(seifert_circles(parse_pd(TREFOIL)).circles.size() == 2);
    CHECK(seifert_circles(parse_pd(FIG8)).circles.size() == 3);
    CHECK(seifert_circles(parse_pd("PD[]")).circles.size() == 1);
}

TEST_CASE("malformed PD codes")
{
    auto code = [](const char* txt) {
        try {
            parse_pd(txt);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidInput;
    };
    CHECK(code("PD[X[1,2,3]]") == ErrorCode::MalformedCode);
    CHECK(code("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,7]]") == ErrorCode::MalformedCode);
    CHECK(code("XX") == ErrorCode::MalformedCode);
}

TEST_CASE("admissibility of a closed 2-braid")
{
    LinkDiagram T = braid_diagram(2, "aaa");
    CHECK(T.crossing_count() == 3);
    // no distinguished face yet
    CHECK_FALSE(is_admissible(T).admissible);
    LinkDiagram O = with_outer_face(T, 0);
    CHECK(is_admissible(O).admissible);
    AdmissibilityReport r = is_admissible(reversed(O));
    CHECK_FALSE(r.admissible);
    CHECK_FALSE(r.reasons.empty());
    CHECK(is_admissible(make_admissible(diagram("fig8")).diagram).admissible);
}

TEST_CASE("make_admissible keeps the crossings")
{
    AdmissibleDiagram A = make_admissible(parse_pd(TREFOIL));
    CHECK(A.diagram.crossing_count() == 3);
    CHECK(is_admissible(A.diagram).admissible);
    AdmissibleDiagram U = make_admissible(parse_pd("PD[]"));
    CHECK(U.diagram.crossing_count() == 0);
    AdmissibleDiagram F = make_admissible(parse_pd(FIG8));
    CHECK(F.diagram.crossing_count() == 4);
}

TEST_CASE("the U diagrams are unknots")
{
    for (auto name : {"U1", "U2", "U3", "U4", "unknot0"}) {
        CAPTURE(name);
        Poly j = jones_in_A(diagram(name));
        CHECK(j == Poly{{0, 1}});
    }
    // and the oracle does see knotting
    CHECK(jones_in_A(parse_pd(TREFOIL)) != Poly{{0, 1}});
}

TEST_CASE("figure-eight pipeline")
{
    LinkDiagram D = make_admissible(diagram("fig8")).diagram;
    MappingCylinderShadow M = mapping_cylinder_shadow(D);
    CHECK(M.shadow.poly.true_vertices() == 4);
    CHECK(M.wall_regions.size() == 1);
    REQUIRE(M.shadow.branching);
    CHECK(is_branching(M.shadow.poly, *M.shadow.branching));
    Shadow R = remove_region(M.shadow, M.outer_region);
    CHECK(validate(R.poly).valid);
    CHECK(complexity_c(R.poly) == 2);
    LinkShadow L = shadow_from_diagram(parse_pd(FIG8));
    CHECK(complexity_c(L.reduced.poly) == 2);
    CHECK(complexity_c(shadow_from_diagram(diagram("fig8-braid")).reduced.poly) == 2);
}

TEST_CASE("unknot pipeline")
{
    MappingCylinderShadow M = mapping_cylinder_shadow(make_admissible(parse_pd("PD[]")).diagram);
    CHECK(M.shadow.poly.true_vertices() == 0);
    CHECK(M.wall_regions.size() == 1);
    CHECK(complexity_c(shadow_from_diagram(parse_pd("PD[]")).reduced.poly) == 0);
}

TEST_CASE("trefoil pipeline")
{
    CHECK(complexity_c(shadow_from_diagram(diagram("trefoil-braid")).reduced.poly) <= 1);
    CHECK(complexity_c(shadow_from_diagram(diagram("trefoil")).reduced.poly) <= 1);
}

TEST_CASE("removing the only region")
{
    Shadow S = fixture("sphere");
    try {
        remove_region(S, "r1");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IllegalResult);
    }
}

TEST_CASE("U3 gives the capped 27-ii shadow with gleams 1/2 and 1")
{
    LinkShadow L = shadow_from_diagram(diagram("U3"));
    Shadow C = cap_boundary(cap_boundary(load_model("27-ii"), "l1", HalfInteger{1}), "l2", HalfInteger{2});
    auto iso = find_isomorphism(C, L.reduced, {true, false, true});
    REQUIRE(iso);
    const Region* d1 = L.reduced.poly.region(iso->region.at("r1"));
    const Region* d2 = L.reduced.poly.region(iso->region.at("r2"));
    REQUIRE(d1->gleam);
    REQUIRE(d2->gleam);
    CHECK(d1->gleam->twice == 1);
    CHECK(d2->gleam->twice == 2);
}

TEST_CASE("remove_region output validates over the braid corpus")
{
    std::ifstream f(fixture_path("braids.txt"));
    std::string line;
    int n = 0;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        CAPTURE(line);
        LinkDiagram D = parse_diagram(line);
        LinkShadow L = shadow_from_diagram(D);
        CHECK(validate(L.reduced.poly).valid);
        ++n;
    }
    CHECK(n >= 20);
}

TEST_CASE("surgery presentation bound")
{
    CHECK(surgery_presentation_bound(diagram("fig8")) == 2);
    CHECK(surgery_presentation_bound(diagram("trefoil-braid")) <= 1);
    CHECK(surgery_presentation_bound(braid_diagram(2, "aA")) == 0);
    CHECK_THROWS_AS(surgery_presentation_bound(diagram("U1")), Error);
}
