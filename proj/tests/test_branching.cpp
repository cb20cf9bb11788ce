#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "shadow/branching.hpp"
#include "shadow/invariants.hpp"

using namespace shadow;

namespace {

// three disks on a trivial triple circle
const char* three_disks = R"(polyhedron three
edge c1 - -
region r1 genus 0 gleam 0/2
  walk c1 + 0
region r2 genus 0 gleam 0/2
  walk c1 + 1
region r3 genus 0 gleam 0/2
  walk c1 + 2
)";

Branching signs(std::initializer_list<std::pair<const char*, int>> l)
{
    Branching b;
    for (auto& [r, s] : l)
        b.sign[r] = s;
    return b;
}

}  // namespace

TEST_CASE("empty singular set: any orientation, two branchings")
{
    Shadow S = fixture("sphere");
    CHECK(is_branching(S.poly, signs({{"r1", 1}})));
    CHECK(is_branching(S.poly, signs({{"r1", -1}})));
    CHECK(enumerate_branchings(S.poly).size() == 2);
}

TEST_CASE("three equal directions on a triple line are not a branching")
{
    Shadow S = parse_asp(three_disks);
    CHECK_FALSE(is_branching(S.poly, signs({{"r1", 1}, {"r2", 1}, {"r3", 1}})));
    CHECK(is_branching(S.poly, signs({{"r1", 1}, {"r2", 1}, {"r3", -1}})));
    // 8 assignments minus the two constant ones
    CHECK(enumerate_branchings(S.poly).size() == 6);
}

TEST_CASE("missing or unknown regions in an assignment")
{
    Shadow S = parse_asp(three_disks);
    CHECK_THROWS_AS(is_branching(S.poly, signs({{"r1", 1}, {"r2", 1}})), Error);
    try {
        is_branching(S.poly, signs({{"r1", 1}, {"r2", 1}}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IncompleteAssignment);
    }
}

TEST_CASE("fig10 carries its branching")
{
    Shadow S = fixture("fig10");
    REQUIRE(S.branching);
    CHECK(is_branching(S.poly, *S.branching));
    CHECK(find_branching(S.poly).has_value());
    CHECK_FALSE(enumerate_branchings(S.poly).empty());
}

TEST_CASE("the abalone is branched")
{
    Shadow S = fixture("fig35-abalone");
    CHECK(predicates(S.poly).is_special);
    CHECK(find_branching(S.poly).has_value());
}

TEST_CASE("non-orientable region: no branching")
{
    Shadow S = fixture("mobius-leg");
    CHECK(validate(S.poly).valid);
    CHECK_FALSE(find_branching(S.poly).has_value());
    CHECK(enumerate_branchings(S.poly).empty());
    Branching b;
    for (auto& r : S.poly.regions)
        b.sign[r.id] = 1;
    try {
        is_branching(S.poly, b);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonOrientableRegion);
    }
}

TEST_CASE("backtracking agrees with the exhaustive filter and is closed under negation")
{
    for (auto& name : asp_fixtures()) {
        CAPTURE(name);
        Shadow S = fixture(name);
        if (!validate(S.poly).valid || S.poly.regions.size() > 20)
            continue;
        auto fast = enumerate_branchings(S.poly);
        auto slow = enumerate_branchings_exhaustive(S.poly);
        CHECK(std::set<Branching>(fast.begin(), fast.end()) == std::set<Branching>(slow.begin(), slow.end()));
        std::set<Branching> all(fast.begin(), fast.end());
        for (auto& b : fast)
            CHECK(all.count(b.negated()) == 1);
        auto first = find_branching(S.poly);
        CHECK(first.has_value() == !fast.empty());
        if (first)
            CHECK(*first == fast.front());
    }
}

TEST_CASE("region cap")
{
    Shadow S = fixture("Qi");
    CHECK_THROWS_AS(enumerate_branchings(S.poly, 3), Error);
}
