#include "shadow/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "shadow/topology.hpp"

namespace shadow {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(int a, int b) { p[find(a)] = find(b); }
};

bool walks_through_boundary(const Topology& T, int region)
{
    for (auto& c : T.corners)
        if (c.region == region && c.arc)
            return true;
    return false;
}

}  // namespace

int complexity_c(const Polyhedron& P) { return P.true_vertices() + P.boundary_vertices(); }

int region_boundary_count(const Polyhedron& P, const Region& R)
{
    int b = static_cast<int>(R.walks.size());
    for (auto& c : P.boundary)
        if (c.plain() && c.region == R.id)
            ++b;
    return b;
}

int region_euler(const Polyhedron& P, const Region& R)
{
    int b = region_boundary_count(P, R);
    return R.orientable ? 2 - 2 * R.genus - b : 2 - R.genus - b;
}

bool region_internal(const Polyhedron& P, const Region& R)
{
    for (auto& c : P.boundary)
        if (c.plain() && c.region == R.id)
            return false;
    Topology T = build_topology(P);
    auto it = T.region_idx.find(R.id);
    return it == T.region_idx.end() || !walks_through_boundary(T, it->second);
}

bool region_is_disk(const Polyhedron& P, const Region& R)
{
    return R.orientable && R.genus == 0 && region_boundary_count(P, R) == 1;
}

std::optional<int> region_twist(const Polyhedron& P, const Region& R)
{
    Topology T = build_topology(P);
    int t = 0;
    for (auto& w : R.walks) {
        auto x = walk_twist(T, w);
        if (!x)
            return std::nullopt;
        t ^= *x;
    }
    return t;
}

int boundary_arc_count(const Polyhedron& P)
{
    Topology T = build_topology(P);
    return static_cast<int>(std::count_if(T.corners.begin(), T.corners.end(), [](const Corner& c) { return c.arc; }));
}

int euler_characteristic(const Polyhedron& P)
{
    int open_edges = 0;
    for (auto& e : P.edges)
        if (!e.is_circle())
            ++open_edges;
    int chi = static_cast<int>(P.nodes.size()) - open_edges - boundary_arc_count(P);
    for (auto& r : P.regions)
        chi += region_euler(P, r);
    return chi;
}

int euler_characteristic_cw(const Polyhedron& P)
{
    // explicit cells: a vertex on every circle, one 2-cell per region joined to its
    // boundary circles by connector arcs, handles as loops at a base point
    std::vector<std::string> v0;
    std::vector<std::pair<std::string, std::string>> v1;
    int v2 = 0;
    for (auto& n : P.nodes)
        v0.push_back(n.id);
    for (auto& e : P.edges) {
        if (e.is_circle()) {
            v0.push_back("o:" + e.id);
            v1.push_back({"o:" + e.id, "o:" + e.id});
        } else {
            v1.push_back({e.from, e.to});
        }
    }
    for (auto& c : P.boundary) {
        if (!c.plain())
            continue;
        v0.push_back("o:" + c.id);
        v1.push_back({"o:" + c.id, "o:" + c.id});
    }
    Topology T = build_topology(P);
    for (auto& c : T.corners)
        if (c.arc)
            v1.push_back({P.nodes[T.end_node[c.end_in]].id, P.nodes[T.end_node[c.end_out]].id});
    for (auto& r : P.regions) {
        std::vector<std::string> anchors;
        for (auto& w : r.walks) {
            const Edge* e = P.edge(w[0].edge);
            anchors.push_back(e->is_circle() ? "o:" + e->id : (w[0].dir > 0 ? e->from : e->to));
        }
        for (auto& c : P.boundary)
            if (c.plain() && c.region == r.id)
                anchors.push_back("o:" + c.id);
        if (anchors.empty()) {
            v0.push_back("b:" + r.id);
            anchors.push_back("b:" + r.id);
        }
        for (size_t i = 1; i < anchors.size(); ++i)
            v1.push_back({anchors[0], anchors[i]});
        int loops = r.orientable ? 2 * r.genus : r.genus;
        for (int i = 0; i < loops; ++i)
            v1.push_back({anchors[0], anchors[0]});
        ++v2;
    }
    return static_cast<int>(v0.size()) - static_cast<int>(v1.size()) + v2;
}

int vertexless_loops(const Polyhedron& P)
{
    return static_cast<int>(std::count_if(P.edges.begin(), P.edges.end(), [](const Edge& e) { return e.is_circle(); }));
}

ValidationReport validate(const Polyhedron& P)
{
    ValidationReport rep;
    auto bad = [&](const std::string& s) {
        rep.valid = false;
        rep.violations.push_back(s);
    };

    std::set<std::string> ids;
    auto note_id = [&](const std::string& id) {
        if (!ids.insert(id).second)
            bad("duplicate id " + id);
    };
    for (auto& n : P.nodes)
        note_id(n.id);
    for (auto& e : P.edges)
        note_id(e.id);
    for (auto& r : P.regions)
        note_id(r.id);
    for (auto& c : P.boundary)
        note_id(c.id);

    Topology T = build_topology(P);
    for (auto& p : T.problems)
        bad(p);

    for (auto& e : P.edges) {
        if (e.from.empty() != e.to.empty())
            bad("edge " + e.id + " has a dangling end");
        if (e.flip && !e.is_circle())
            bad("edge " + e.id + " has endpoints but flip monodromy");
    }

    for (size_t n = 0; n < P.nodes.size(); ++n) {
        size_t want = P.nodes[n].kind == NodeKind::True ? 4 : 1;
        if (T.node_ends[n].size() != want)
            bad("node " + P.nodes[n].id + " has " + std::to_string(T.node_ends[n].size()) + " edge endpoints");
    }

    // sheets along edges
    std::vector<bool> edge_ok(P.edges.size(), true);
    for (size_t i = 0; i < P.edges.size(); ++i) {
        const Edge& e = P.edges[i];
        int germs = 0;
        for (int s = 0; s < 3; ++s) {
            size_t k = T.occ[i][s].size();
            if (k > 0)
                ++germs;
            if (k > 1) {
                bad("edge " + e.id + " slot " + std::to_string(s) + " filled " + std::to_string(k) + " times");
                edge_ok[i] = false;
            }
        }
        if (germs != 3) {
            bad("edge " + e.id + " has " + std::to_string(germs) + " germs");
            edge_ok[i] = false;
            continue;
        }
        if (!edge_ok[i])
            continue;
        auto walk_of = [&](const GermRef& g) -> const Walk& { return P.regions[g.region].walks[g.walk]; };
        if (e.flip) {
            const Walk& w2 = walk_of(T.occ[i][2][0]);
            const GermRef g0 = T.occ[i][0][0], g1 = T.occ[i][1][0];
            const Walk& w0 = walk_of(g0);
            if (w2.size() != 1)
                bad("flip circle " + e.id + ": fixed sheet must be walked once");
            if (g0.region != g1.region || g0.walk != g1.walk || w0.size() != 2 || w0[0].dir != w0[1].dir) {
                bad("flip circle " + e.id + ": swapped sheets must be one walk around the circle twice");
                edge_ok[i] = false;
            }
        } else if (e.is_circle()) {
            for (int s = 0; s < 3; ++s)
                if (walk_of(T.occ[i][s][0]).size() != 1) {
                    bad("circle " + e.id + " sheet " + std::to_string(s) + " walk must be a single step");
                    edge_ok[i] = false;
                }
        }
        if (edge_ok[i])
            rep.edge_links[e.id] = e.is_circle() ? "circle-edge: theta" : "theta";
    }

    // vertex links
    std::vector<std::vector<const Corner*>> at_node(P.nodes.size());
    for (auto& c : T.corners)
        if (!c.arc)
            at_node[T.end_node[c.end_in]].push_back(&c);
    for (size_t n = 0; n < P.nodes.size(); ++n) {
        const Node& node = P.nodes[n];
        if (node.kind == NodeKind::Boundary) {
            if (T.node_ends[n].size() == 1 && edge_ok[end_edge(T.node_ends[n][0])])
                rep.node_links[node.id] = "bv";
            continue;
        }
        std::set<std::pair<int, int>> pairs;
        bool ok = T.node_ends[n].size() == 4;
        for (auto* c : at_node[n]) {
            if (c->end_in == c->end_out)
                ok = false;
            pairs.insert({std::min(c->end_in, c->end_out), std::max(c->end_in, c->end_out)});
        }
        if (!ok || pairs.size() != 6 || at_node[n].size() != 6)
            bad("vertex " + node.id + " link is not K4");
        else
            rep.node_links[node.id] = "K4";
    }

    // boundary graph through boundary vertices
    std::vector<int> bv_nodes;
    for (size_t n = 0; n < P.nodes.size(); ++n)
        if (P.nodes[n].kind == NodeKind::Boundary)
            bv_nodes.push_back(static_cast<int>(n));
    UnionFind uf(P.nodes.size());
    for (auto& c : T.corners)
        if (c.arc)
            uf.join(T.end_node[c.end_in], T.end_node[c.end_out]);
    std::map<std::string, int> bv_owner;
    for (auto& c : P.boundary) {
        if (c.plain()) {
            if (!P.region(c.region))
                bad("boundary circle " + c.id + " lies in unknown region " + c.region);
            continue;
        }
        std::set<int> comps;
        for (auto& b : c.bvs) {
            auto it = T.node_idx.find(b);
            if (it == T.node_idx.end() || P.nodes[it->second].kind != NodeKind::Boundary) {
                bad("boundary circle " + c.id + " lists " + b + " which is not a boundary vertex");
                continue;
            }
            if (bv_owner.count(b))
                bad("boundary vertex " + b + " lies on two boundary circles");
            bv_owner[b] = 1;
            comps.insert(uf.find(it->second));
        }
        if (comps.size() > 1)
            bad("boundary circle " + c.id + " spans several boundary components");
        if (comps.size() == 1) {
            int root = *comps.begin();
            for (int n : bv_nodes)
                if (uf.find(n) == root && std::find(c.bvs.begin(), c.bvs.end(), P.nodes[n].id) == c.bvs.end())
                    bad("boundary circle " + c.id + " misses boundary vertex " + P.nodes[n].id);
        }
    }
    for (int n : bv_nodes)
        if (!bv_owner.count(P.nodes[n].id))
            bad("boundary vertex " + P.nodes[n].id + " lies on no boundary circle");

    // regions
    for (size_t r = 0; r < P.regions.size(); ++r) {
        const Region& R = P.regions[r];
        if (R.genus < 0 || (!R.orientable && R.genus < 1))
            bad("region " + R.id + " has an impossible genus");
        for (auto& w : R.walks)
            if (w.empty())
                bad("region " + R.id + " has an empty walk");
        bool internal = true;
        for (auto& c : P.boundary)
            if (c.plain() && c.region == R.id)
                internal = false;
        if (walks_through_boundary(T, static_cast<int>(r)))
            internal = false;
        if (internal && !R.gleam)
            bad("internal region " + R.id + " has no gleam");
        if (!internal && R.gleam)
            bad("external region " + R.id + " carries a gleam");
        if (internal && R.gleam && R.orientable && rep.valid) {
            int t = 0;
            bool known = true;
            for (auto& w : R.walks) {
                auto x = walk_twist(T, w);
                if (!x)
                    known = false;
                else
                    t ^= *x;
            }
            int odd = static_cast<int>(((R.gleam->twice % 2) + 2) % 2);
            if (known && odd != t)
                bad("region " + R.id + " gleam " + R.gleam->str() +
                    (t ? " must be a strict half-integer (one-sided neighborhood)" : " must be an integer (two-sided neighborhood)"));
        }
    }
    return rep;
}

Predicates predicates(const Polyhedron& P)
{
    Predicates p;
    p.is_closed = P.boundary.empty();
    p.is_proper = std::none_of(P.boundary.begin(), P.boundary.end(), [](const BoundaryCircle& c) { return c.color == Color::F; });
    p.is_almost_special = validate(P).valid;
    p.is_special = p.is_closed && p.is_almost_special && !P.edges.empty() && vertexless_loops(P) == 0 &&
                   std::all_of(P.regions.begin(), P.regions.end(), [&](const Region& r) { return region_is_disk(P, r); });
    return p;
}

}  // namespace shadow
