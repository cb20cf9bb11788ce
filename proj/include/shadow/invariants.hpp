#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shadow/polyhedron.hpp"

namespace shadow {

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
    std::map<std::string, std::string, NaturalLess> node_links;  // "K4", "bv"
    std::map<std::string, std::string, NaturalLess> edge_links;  // "theta", "circle-edge: theta", ...
};

ValidationReport validate(const Polyhedron& P);

int complexity_c(const Polyhedron& P);

// boundary components of a region: walks plus plain circles it owns
int region_boundary_count(const Polyhedron& P, const Region& R);
int region_euler(const Polyhedron& P, const Region& R);
bool region_internal(const Polyhedron& P, const Region& R);
bool region_is_disk(const Polyhedron& P, const Region& R);

// 0 two-sided, 1 one-sided (sum over the region's walks); nullopt through boundary vertices
std::optional<int> region_twist(const Polyhedron& P, const Region& R);

// number of boundary arcs between boundary vertices
int boundary_arc_count(const Polyhedron& P);

int euler_characteristic(const Polyhedron& P);
// same number from an explicit cell decomposition
int euler_characteristic_cw(const Polyhedron& P);

struct Predicates {
    bool is_closed = false;
    bool is_proper = false;
    bool is_special = false;
    bool is_almost_special = false;
};

Predicates predicates(const Polyhedron& P);

int vertexless_loops(const Polyhedron& P);

}  // namespace shadow
