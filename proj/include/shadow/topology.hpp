#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shadow/polyhedron.hpp"

namespace shadow {

// end id = 2 * edge index + side, side 0 = `from`, 1 = `to`
inline int end_id(int edge, int side) { return 2 * edge + side; }
inline int end_edge(int end) { return end / 2; }
inline int end_side(int end) { return end % 2; }

inline int step_start_side(const Step& s) { return s.dir > 0 ? 0 : 1; }
inline int step_end_side(const Step& s) { return s.dir > 0 ? 1 : 0; }

struct GermRef {
    int region, walk, step;
};

// one sheet passage between consecutive steps of a walk
struct Corner {
    int region, walk, step;  // the step arriving at the node
    int end_in, slot_in;     // where the arriving step ends
    int end_out, slot_out;   // where the next step starts
    bool arc = false;        // passes along a boundary arc between boundary vertices
};

struct Topology {
    const Polyhedron* P = nullptr;
    std::map<std::string, int> node_idx, edge_idx, region_idx;
    std::vector<int> end_node;                 // node index or -1
    std::vector<std::vector<int>> node_ends;   // ends at each node
    std::vector<std::array<std::vector<GermRef>, 3>> occ;
    std::vector<Corner> corners;
    std::vector<std::array<int, 3>> nb;        // per end: slot -> end across the corner, -1 if none
    std::vector<std::string> problems;         // structural faults found while indexing

    int edge_of(const Step& s) const { return edge_idx.at(s.edge); }
    int start_end(const Step& s) const { return end_id(edge_of(s), step_start_side(s)); }
    int finish_end(const Step& s) const { return end_id(edge_of(s), step_end_side(s)); }
    bool is_circle(int edge) const { return P->edges[edge].is_circle(); }
    bool is_flip(int edge) const { return P->edges[edge].flip; }
    bool at_boundary_vertex(int end) const;
};

Topology build_topology(const Polyhedron& P);

// for a true-vertex end: slot -> the end reached through that sheet's corner (-1 if unknown)
std::array<int, 3> corner_neighbors(const Topology& T, int end);

// Z/2 twist of the transverse pair of sheets along a walk: 0 annulus-like, 1 Moebius-like.
// nullopt when the walk passes boundary vertices.
std::optional<int> walk_twist(const Topology& T, const Walk& w);

}  // namespace shadow
