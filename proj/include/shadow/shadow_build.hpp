#pragma once

#include <map>
#include <string>
#include <vector>

#include "shadow/link_diagram.hpp"
#include "shadow/polyhedron.hpp"

namespace shadow {

struct MappingCylinderShadow {
    Shadow shadow;
    std::map<int, std::string> wall_regions;       // link component -> A_j
    std::map<int, std::string> face_regions;       // diagram face -> region
    std::map<int, std::string> crossing_vertices;  // crossing -> node
    std::string outer_region;                      // R, the face touching the puncture
};

// throws NotAdmissible
MappingCylinderShadow mapping_cylinder_shadow(const LinkDiagram& D);

// throws IllegalResult, UnknownId
Shadow remove_region(const Shadow& S, const std::string& region);

struct LinkShadow {
    AdmissibleDiagram diagram;
    MappingCylinderShadow cylinder;
    Shadow reduced;  // cylinder with R removed
};

// make_admissible, mapping cylinder, removal of R
LinkShadow shadow_from_diagram(const LinkDiagram& D);

// surgeries; all throw UnknownId on a missing circle
Shadow cap_boundary(const Shadow& S, const std::string& circle, HalfInteger gleam);
Shadow attach_tower(const Shadow& S, const std::string& circle, int height, const std::vector<HalfInteger>& gleams);
Shadow recolor_boundary(const Shadow& S, const std::string& circle, Color color);
Shadow eliminate_boundary_vertices(const Shadow& S);
Shadow connected_sum(const Shadow& A, const Shadow& B);
Shadow torus_sum(const Shadow& A, const std::string& l1, const Shadow& B, const std::string& l2, bool use_Q0);
// both circles on one polyhedron; Q0 goes in automatically when the orientations clash
Shadow torus_self_sum(const Shadow& A, const std::string& l1, const std::string& l2, bool use_Q0);
// `circle` is a boundary component through 4 boundary vertices shaped like H
Shadow resolve_type3(const Shadow& S, const std::string& circle);
// every H-shaped boundary component, in id order
Shadow resolve_all_type3(const Shadow& S);

// fixture polyhedra shipped with the library
Shadow fixture_Q();
Shadow fixture_Q0();
Shadow fixture_Qi();

// prefix every id, for gluing disjoint copies
Shadow prefixed(const Shadow& S, const std::string& prefix);

}  // namespace shadow
