#pragma once

#include <string>
#include <vector>

#include "shadow/group.hpp"
#include "shadow/polyhedron.hpp"

namespace shadow {

// Regular neighborhood of a bouquet of two loops at one branched vertex. The vertex is the
// mapping-cylinder crossing (sign +-1); each loop runs from an outgoing end to an incoming one.
// two_circles: each strand closes on itself (S(P) smooths to two circles); otherwise the
// loops join the strands into one immersed circle. swap_a / swap_b exchange the two sheets
// inducing the same edge direction along the loop leaving the under strand / the other loop.
// Every region is a collar carrying one e-colored circle.
Shadow bouquet_neighborhood(bool two_circles, bool swap_a, bool swap_b, int crossing_sign = 1);

struct CappingPattern {
    std::vector<std::string> disks;   // circles capped by disks
    std::vector<std::string> towers;  // circles receiving a tower
    std::string str() const;          // "{l1,l2}" or "{l1} towers {l2}"
};

struct PatternVerdict {
    CappingPattern pattern;
    TrivialityVerdict verdict;
    std::string presentation;
};

struct CensusResult {
    std::string model;
    bool towers = false;
    std::vector<PatternVerdict> patterns;
    // patterns with a trivial group; disks and towers merged, sorted
    std::vector<std::vector<std::string>> simply_connected() const;
    int unknown_count() const;
};

// model ids 27-i .. 27-iv, 32-i .. 32-iv
const std::vector<std::string>& model_ids();
// throws UnknownId
Shadow load_model(const std::string& id);

// Disks only: every nonempty proper subset of circles is capped. With towers: every assignment
// of {none, disk, tower} to the circles that uses at least one tower. Throws Unsupported when a
// circle is not a plain circle.
CensusResult classify_shadow(const Shadow& S, bool allow_towers, TietzeBudget budget = {});
CensusResult classify_model(const std::string& id, bool allow_towers, TietzeBudget budget = {});

}  // namespace shadow
