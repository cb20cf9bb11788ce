#include "shadow/topology.hpp"

namespace shadow {

bool Topology::at_boundary_vertex(int end) const
{
    int n = end_node[end];
    return n >= 0 && P->nodes[n].kind == NodeKind::Boundary;
}

Topology build_topology(const Polyhedron& P)
{
    Topology T;
    T.P = &P;
    for (size_t i = 0; i < P.nodes.size(); ++i)
        T.node_idx[P.nodes[i].id] = static_cast<int>(i);
    for (size_t i = 0; i < P.edges.size(); ++i)
        T.edge_idx[P.edges[i].id] = static_cast<int>(i);
    for (size_t i = 0; i < P.regions.size(); ++i)
        T.region_idx[P.regions[i].id] = static_cast<int>(i);

    T.node_ends.assign(P.nodes.size(), {});
    T.end_node.assign(2 * P.edges.size(), -1);
    T.occ.assign(P.edges.size(), {});
    T.nb.assign(2 * P.edges.size(), {-1, -1, -1});
    for (size_t i = 0; i < P.edges.size(); ++i) {
        const Edge& e = P.edges[i];
        const std::string* ends[2] = {&e.from, &e.to};
        for (int side = 0; side < 2; ++side) {
            if (ends[side]->empty())
                continue;
            auto it = T.node_idx.find(*ends[side]);
            if (it == T.node_idx.end()) {
                T.problems.push_back("edge " + e.id + " refers to unknown node " + *ends[side]);
                continue;
            }
            int end = end_id(static_cast<int>(i), side);
            T.end_node[end] = it->second;
            T.node_ends[it->second].push_back(end);
        }
    }

    for (size_t r = 0; r < P.regions.size(); ++r) {
        const Region& R = P.regions[r];
        for (size_t w = 0; w < R.walks.size(); ++w) {
            const Walk& W = R.walks[w];
            bool ok = true;
            for (size_t k = 0; k < W.size(); ++k) {
                auto it = T.edge_idx.find(W[k].edge);
                if (it == T.edge_idx.end()) {
                    T.problems.push_back("region " + R.id + " walks unknown edge " + W[k].edge);
                    ok = false;
                    continue;
                }
                if (W[k].slot < 0 || W[k].slot > 2 || (W[k].dir != 1 && W[k].dir != -1)) {
                    T.problems.push_back("region " + R.id + " has a malformed step on " + W[k].edge);
                    ok = false;
                    continue;
                }
                T.occ[it->second][W[k].slot].push_back({static_cast<int>(r), static_cast<int>(w), static_cast<int>(k)});
            }
            if (!ok)
                continue;
            for (size_t k = 0; k < W.size(); ++k) {
                const Step& s = W[k];
                const Step& t = W[(k + 1) % W.size()];
                int es = T.edge_of(s), et = T.edge_of(t);
                bool cs = T.is_circle(es), ct = T.is_circle(et);
                if (cs || ct) {
                    if (es != et)
                        T.problems.push_back("region " + R.id + " walk leaves circle edge " + (cs ? s.edge : t.edge));
                    continue;
                }
                int fin = T.finish_end(s), st = T.start_end(t);
                int n1 = T.end_node[fin], n2 = T.end_node[st];
                if (n1 < 0 || n2 < 0) {
                    T.problems.push_back("region " + R.id + " walk runs off a dangling end of " + (n1 < 0 ? s.edge : t.edge));
                    continue;
                }
                Corner c{static_cast<int>(r), static_cast<int>(w), static_cast<int>(k), fin, s.slot, st, t.slot, false};
                bool b1 = P.nodes[n1].kind == NodeKind::Boundary, b2 = P.nodes[n2].kind == NodeKind::Boundary;
                if (b1 && b2) {
                    c.arc = true;
                } else if (n1 != n2) {
                    T.problems.push_back("region " + R.id + " walk is broken between " + s.edge + " and " + t.edge);
                    continue;
                } else {
                    T.nb[fin][s.slot] = st;
                    T.nb[st][t.slot] = fin;
                }
                T.corners.push_back(c);
            }
        }
    }
    return T;
}

std::array<int, 3> corner_neighbors(const Topology& T, int end) { return T.nb[end]; }

std::optional<int> walk_twist(const Topology& T, const Walk& w)
{
    if (w.empty())
        return 0;
    static const int sigma[3] = {1, 0, 2};
    int cur = w[0].slot;
    int a = -1, b = -1;
    for (int x = 0; x < 3; ++x)
        if (x != cur)
            (a < 0 ? a : b) = x;
    int p = a, q = b;
    for (size_t i = 0; i < w.size(); ++i) {
        const Step& s = w[i];
        const Step& t = w[(i + 1) % w.size()];
        auto ie = T.edge_idx.find(s.edge);
        if (ie == T.edge_idx.end())
            return std::nullopt;
        int e = ie->second;
        if (T.is_flip(e)) {
            cur = sigma[cur];
            p = sigma[p];
            q = sigma[q];
        }
        if (T.is_circle(e)) {
            if (t.edge != s.edge || t.slot != cur)
                return std::nullopt;
            continue;
        }
        int fin = T.finish_end(s), st = T.start_end(t);
        if (T.end_node[fin] < 0 || T.at_boundary_vertex(fin))
            return std::nullopt;
        auto na = T.nb[fin], nbb = T.nb[st];
        auto carry = [&](int x) {
            int target = na[x];
            for (int y = 0; y < 3; ++y)
                if (y != t.slot && target >= 0 && nbb[y] == target)
                    return y;
            return -1;
        };
        p = carry(p);
        q = carry(q);
        cur = t.slot;
        if (p < 0 || q < 0)
            return std::nullopt;
    }
    if (p == a && q == b)
        return 0;
    if (p == b && q == a)
        return 1;
    return std::nullopt;
}

}  // namespace shadow
