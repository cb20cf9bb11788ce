#pragma once

#include <map>
#include <optional>
#include <string>

#include "shadow/polyhedron.hpp"

namespace shadow {

struct IsoOptions {
    bool gleams = true;    // gleams must agree
    bool colors = true;    // boundary colors must agree
    bool branched = false; // branchings must agree up to global negation
};

struct Isomorphism {
    std::map<std::string, std::string, NaturalLess> node, edge, region, circle;
    int branching_sign = 1;  // -1 when B's branching is matched to the negation of A's
};

// brute force over edge bijections, orientations and slot permutations with corner pruning;
// meant for polyhedra with a handful of edges
std::optional<Isomorphism> find_isomorphism(const Shadow& A, const Shadow& B, IsoOptions opt = {});

}  // namespace shadow
