#pragma once

#include <optional>
#include <vector>

#include "shadow/polyhedron.hpp"

namespace shadow {

// throws IncompleteAssignment, NonOrientableRegion
bool is_branching(const Polyhedron& P, const Branching& b);

// first branching in canonical order, nullopt if none
std::optional<Branching> find_branching(const Polyhedron& P);

// all branchings, sorted canonically; throws CapExceeded above `cap` regions
std::vector<Branching> enumerate_branchings(const Polyhedron& P, size_t cap = 24);

// plain 2^n filter, kept as an oracle
std::vector<Branching> enumerate_branchings_exhaustive(const Polyhedron& P, size_t cap = 24);

}  // namespace shadow
