#include <algorithm>
#include <set>

#include "shadow/branching.hpp"
#include "shadow/invariants.hpp"
#include "shadow/shadow_build.hpp"
#include "shadow/topology.hpp"

namespace shadow {

namespace {

[[noreturn]] void illegal(const std::string& msg) { throw Error(ErrorCode::IllegalResult, msg); }

struct RegionState {
    int chi = 0;
    bool orientable = true;
    long long gleam2 = 0;
    int sign = 1;
};

struct Germ {
    size_t region, walk, step;
};

void reverse_walk(Walk& w)
{
    std::reverse(w.begin(), w.end());
    for (auto& s : w)
        s.dir = -s.dir;
}

// the walk with step i removed, starting right after it
Walk after(const Walk& w, size_t i)
{
    Walk out;
    for (size_t k = 1; k < w.size(); ++k)
        out.push_back(w[(i + k) % w.size()]);
    return out;
}

class Remover {
public:
    explicit Remover(const Shadow& S) : P_(S.poly), have_b_(S.branching.has_value())
    {
        for (auto& r : P_.regions) {
            RegionState st;
            st.chi = region_euler(P_, r);
            st.orientable = r.orientable;
            st.gleam2 = r.gleam ? r.gleam->twice : 0;
            if (have_b_) {
                auto it = S.branching->sign.find(r.id);
                st.sign = it == S.branching->sign.end() ? 1 : it->second;
            }
            state_[r.id] = st;
        }
        branching_ok_ = have_b_;
    }

    Shadow run(const std::string& rid)
    {
        if (!P_.region(rid))
            throw Error(ErrorCode::UnknownId, "no region " + rid);
        {
            Topology T = build_topology(P_);
            int ri = T.region_idx.at(rid);
            for (auto& c : T.corners)
                if (c.region == ri && c.arc)
                    illegal("region " + rid + " meets boundary vertices");
        }
        P_.regions.erase(std::find_if(P_.regions.begin(), P_.regions.end(), [&](const Region& r) { return r.id == rid; }));
        P_.boundary.erase(std::remove_if(P_.boundary.begin(), P_.boundary.end(),
                                         [&](const BoundaryCircle& c) { return c.plain() && c.region == rid; }),
                          P_.boundary.end());
        state_.erase(rid);

        bool changed = true;
        while (changed) {
            changed = false;
            while (dissolve_one())
                changed = true;
            while (reclassify_one())
                changed = true;
        }
        if (P_.regions.empty())
            illegal("nothing remains after removing " + rid);
        return finish();
    }

private:
    std::vector<Germ> germs_on(const std::string& e) const
    {
        std::vector<Germ> g;
        for (size_t r = 0; r < P_.regions.size(); ++r)
            for (size_t w = 0; w < P_.regions[r].walks.size(); ++w)
                for (size_t k = 0; k < P_.regions[r].walks[w].size(); ++k)
                    if (P_.regions[r].walks[w][k].edge == e)
                        g.push_back({r, w, k});
        return g;
    }

    std::string resolve(std::string id) const
    {
        while (alias_.count(id))
            id = alias_.at(id);
        return id;
    }

    void reverse_region(Region& R)
    {
        for (auto& w : R.walks)
            reverse_walk(w);
        state_[R.id].sign = -state_[R.id].sign;
    }

    // B's walks and circles move into A; returns A's index
    size_t merge(size_t a, size_t b, int chi_shift)
    {
        Region& A = P_.regions[a];
        Region& B = P_.regions[b];
        auto& sa = state_[A.id];
        auto& sb = state_[B.id];
        if (sa.sign != sb.sign)
            branching_ok_ = false;
        sa.chi += sb.chi + chi_shift;
        sa.orientable = sa.orientable && sb.orientable;
        sa.gleam2 += sb.gleam2;
        for (auto& w : B.walks)
            A.walks.push_back(w);
        for (auto& c : P_.boundary)
            if (c.plain() && c.region == B.id)
                c.region = A.id;
        alias_[B.id] = A.id;
        state_.erase(B.id);
        std::string aid = A.id;
        P_.regions.erase(P_.regions.begin() + static_cast<long>(b));
        for (size_t i = 0; i < P_.regions.size(); ++i)
            if (P_.regions[i].id == aid)
                return i;
        return 0;
    }

    void erase_edge(const std::string& e)
    {
        P_.edges.erase(std::find_if(P_.edges.begin(), P_.edges.end(), [&](const Edge& x) { return x.id == e; }));
    }

    std::vector<std::string> edge_ids_sorted() const
    {
        std::vector<std::string> ids;
        for (auto& e : P_.edges)
            ids.push_back(e.id);
        std::sort(ids.begin(), ids.end(), NaturalLess{});
        return ids;
    }

    bool dissolve_one()
    {
        for (auto& eid : edge_ids_sorted()) {
            auto g = germs_on(eid);
            if (g.size() == 3)
                continue;
            const Edge E = *P_.edge(eid);
            for (auto* end : {&E.from, &E.to})
                if (!end->empty() && P_.node(*end)->kind == NodeKind::Boundary)
                    illegal("edge " + eid + " at a boundary vertex loses a sheet");
            if (g.size() == 1)
                illegal("edge " + eid + " would keep a single sheet");
            if (g.empty()) {
                erase_edge(eid);
                return true;
            }
            if (g.size() > 3)
                illegal("edge " + eid + " has " + std::to_string(g.size()) + " sheets");
            dissolve(E, g[0], g[1]);
            return true;
        }
        return false;
    }

    void dissolve(const Edge& E, Germ g1, Germ g2)
    {
        for (auto* end : {&E.from, &E.to})
            if (!end->empty())
                node_region_[*end] = P_.regions[g1.region].id;

        if (E.flip) {
            Region& A = P_.regions[g1.region];
            if (g1.region != g2.region || g1.walk != g2.walk)
                illegal("flip circle " + E.id + " keeps sheets from two walks");
            A.walks.erase(A.walks.begin() + static_cast<long>(g1.walk));
            state_[A.id].orientable = false;
            erase_edge(E.id);
            return;
        }

        if (P_.regions[g1.region].id != P_.regions[g2.region].id) {
            Region& B = P_.regions[g2.region];
            int da = P_.regions[g1.region].walks[g1.walk][g1.step].dir;
            int db = B.walks[g2.walk][g2.step].dir;
            if (da == db)
                reverse_region(B);
            // reversing moved B's step within its walk
            size_t wb = g2.walk;
            size_t nb = B.walks[wb].size();
            size_t ib = B.walks[wb].size() == 0 ? 0 : (da == db ? nb - 1 - g2.step : g2.step);
            Walk wa_after = after(P_.regions[g1.region].walks[g1.walk], g1.step);
            Walk wb_after = after(B.walks[wb], ib);
            size_t wa_index = g1.walk;
            size_t b_walks_before = P_.regions[g1.region].walks.size();
            size_t a = merge(g1.region, g2.region, E.is_circle() ? 0 : -1);
            Region& A = P_.regions[a];
            size_t wb_index = b_walks_before + wb;
            if (E.is_circle()) {
                A.walks.erase(A.walks.begin() + static_cast<long>(wb_index));
                A.walks.erase(A.walks.begin() + static_cast<long>(wa_index));
            } else {
                Walk merged = wa_after;
                merged.insert(merged.end(), wb_after.begin(), wb_after.end());
                A.walks[wa_index] = merged;
                A.walks.erase(A.walks.begin() + static_cast<long>(wb_index));
            }
            erase_edge(E.id);
            return;
        }

        Region& A = P_.regions[g1.region];
        auto& st = state_[A.id];
        int da = A.walks[g1.walk][g1.step].dir;
        int db = A.walks[g2.walk][g2.step].dir;
        if (E.is_circle()) {
            if (da == db)
                st.orientable = false;
            size_t hi = std::max(g1.walk, g2.walk), lo = std::min(g1.walk, g2.walk);
            A.walks.erase(A.walks.begin() + static_cast<long>(hi));
            A.walks.erase(A.walks.begin() + static_cast<long>(lo));
            erase_edge(E.id);
            return;
        }
        st.chi -= 1;
        if (g1.walk == g2.walk) {
            Walk& W = A.walks[g1.walk];
            size_t i = std::min(g1.step, g2.step), j = std::max(g1.step, g2.step);
            Walk p1(W.begin() + static_cast<long>(i) + 1, W.begin() + static_cast<long>(j));
            Walk p2(W.begin() + static_cast<long>(j) + 1, W.end());
            p2.insert(p2.end(), W.begin(), W.begin() + static_cast<long>(i));
            A.walks.erase(A.walks.begin() + static_cast<long>(g1.walk));
            if (da != db) {
                for (auto* p : {&p1, &p2})
                    if (!p->empty())
                        A.walks.push_back(*p);
            } else {
                st.orientable = false;
                reverse_walk(p1);
                p2.insert(p2.end(), p1.begin(), p1.end());
                if (!p2.empty())
                    A.walks.push_back(p2);
            }
        } else {
            size_t ib = g2.step;
            if (da == db) {
                st.orientable = false;
                reverse_walk(A.walks[g2.walk]);
                ib = A.walks[g2.walk].size() - 1 - g2.step;
            }
            Walk merged = after(A.walks[g1.walk], g1.step);
            Walk wb_after = after(A.walks[g2.walk], ib);
            merged.insert(merged.end(), wb_after.begin(), wb_after.end());
            A.walks[g1.walk] = merged;
            A.walks.erase(A.walks.begin() + static_cast<long>(g2.walk));
        }
        erase_edge(E.id);
    }

    bool reclassify_one()
    {
        std::vector<std::string> ids;
        for (auto& n : P_.nodes)
            ids.push_back(n.id);
        std::sort(ids.begin(), ids.end(), NaturalLess{});
        for (auto& nid : ids) {
            const Node* node = P_.node(nid);
            std::vector<std::pair<std::string, int>> ends;
            for (auto& e : P_.edges) {
                if (e.from == nid)
                    ends.push_back({e.id, 0});
                if (e.to == nid)
                    ends.push_back({e.id, 1});
            }
            if (node->kind == NodeKind::Boundary) {
                if (ends.size() != 1)
                    illegal("boundary vertex " + nid + " loses its edge");
                continue;
            }
            if (ends.size() == 4)
                continue;
            if (ends.empty()) {
                auto it = node_region_.find(nid);
                if (it != node_region_.end()) {
                    std::string r = resolve(it->second);
                    if (state_.count(r))
                        state_[r].chi += 1;
                }
                P_.nodes.erase(std::find_if(P_.nodes.begin(), P_.nodes.end(), [&](const Node& n) { return n.id == nid; }));
                return true;
            }
            if (ends.size() != 2)
                illegal("vertex " + nid + " keeps " + std::to_string(ends.size()) + " edge ends");
            merge_through(nid, ends[0], ends[1]);
            return true;
        }
        return false;
    }

    // node with two ends whose link is a theta graph: join the two edges
    void merge_through(const std::string& nid, std::pair<std::string, int> p, std::pair<std::string, int> q)
    {
        Topology T = build_topology(P_);
        int ep = end_id(T.edge_idx.at(p.first), p.second);
        int eq = end_id(T.edge_idx.at(q.first), q.second);
        std::array<int, 3> perm{-1, -1, -1};  // slot at p -> slot at q
        for (auto& c : T.corners) {
            if (c.arc)
                continue;
            if (c.end_in == ep && c.end_out == eq)
                perm[c.slot_in] = c.slot_out;
            else if (c.end_in == eq && c.end_out == ep)
                perm[c.slot_out] = c.slot_in;
            else if (T.end_node[c.end_in] == T.node_idx.at(nid))
                illegal("vertex " + nid + " link is not a theta graph");
        }
        std::array<bool, 3> hit{};
        for (int x : perm) {
            if (x < 0 || hit[x])
                illegal("vertex " + nid + " link is not a theta graph");
            hit[x] = true;
        }

        if (p.first == q.first) {
            // loop: becomes a vertexless circle with monodromy perm
            int fixed = -1, moved = 0;
            for (int x = 0; x < 3; ++x)
                if (perm[x] == x)
                    fixed = x;
                else
                    ++moved;
            std::array<int, 3> relabel{0, 1, 2};
            bool flip = false;
            if (moved == 3 && fixed < 0)
                illegal("loop through " + nid + " closes with a cyclic permutation of sheets");
            if (moved == 2) {
                flip = true;
                int k = 0;
                for (int x = 0; x < 3; ++x)
                    relabel[x] = x == fixed ? 2 : k++;
            }
            for (auto& r : P_.regions)
                for (auto& w : r.walks)
                    for (auto& s : w)
                        if (s.edge == p.first)
                            s.slot = relabel[s.slot];
            Edge* e = P_.edge(p.first);
            e->from.clear();
            e->to.clear();
            e->flip = flip;
        } else {
            // keep the edge with the smaller id
            if (natural_less(q.first, p.first)) {
                std::swap(p, q);
                std::array<int, 3> inv{};
                for (int x = 0; x < 3; ++x)
                    inv[perm[x]] = x;
                perm = inv;
            }
            std::array<int, 3> inv{};
            for (int x = 0; x < 3; ++x)
                inv[perm[x]] = x;
            const Edge E1 = *P_.edge(p.first), E2 = *P_.edge(q.first);
            int s1 = p.second == 1 ? 1 : -1;  // E1 already points at the node
            int s2 = q.second == 0 ? 1 : -1;  // E2 already leaves the node
            for (auto& r : P_.regions)
                for (auto& w : r.walks) {
                    std::vector<int> origin(w.size(), 0);
                    for (size_t k = 0; k < w.size(); ++k) {
                        Step& s = w[k];
                        if (s.edge == E1.id) {
                            s.dir *= s1;
                            origin[k] = 1;
                        } else if (s.edge == E2.id) {
                            s.edge = E1.id;
                            s.dir *= s2;
                            s.slot = inv[s.slot];
                            origin[k] = 2;
                        }
                    }
                    // each E2 passage continues an E1 passage through the node
                    Walk out;
                    for (size_t k = 0; k < w.size(); ++k)
                        if (origin[k] != 2)
                            out.push_back(w[k]);
                    w = out;
                }
            Edge* e = P_.edge(E1.id);
            e->from = p.second == 1 ? E1.from : E1.to;
            e->to = q.second == 0 ? E2.to : E2.from;
            erase_edge(E2.id);
        }
        P_.nodes.erase(std::find_if(P_.nodes.begin(), P_.nodes.end(), [&](const Node& n) { return n.id == nid; }));
    }

    Shadow finish()
    {
        Topology T = build_topology(P_);
        for (size_t r = 0; r < P_.regions.size(); ++r) {
            Region& R = P_.regions[r];
            auto& st = state_[R.id];
            R.orientable = st.orientable;
            int b = region_boundary_count(P_, R);
            int rest = 2 - b - st.chi;
            if (R.orientable) {
                if (rest < 0 || rest % 2)
                    illegal("region " + R.id + " gets inconsistent topology");
                R.genus = rest / 2;
            } else {
                if (rest < 1)
                    illegal("region " + R.id + " gets inconsistent topology");
                R.genus = rest;
            }
            bool internal = true;
            for (auto& c : P_.boundary)
                if (c.plain() && c.region == R.id)
                    internal = false;
            for (auto& c : T.corners)
                if (c.arc && c.region == static_cast<int>(r))
                    internal = false;
            if (internal)
                R.gleam = HalfInteger{st.gleam2};
            else
                R.gleam.reset();
        }
        Shadow out;
        out.poly = P_;
        if (have_b_ && branching_ok_) {
            Branching b;
            bool orientable = true;
            for (auto& r : P_.regions) {
                b.sign[r.id] = state_[r.id].sign;
                orientable = orientable && r.orientable;
            }
            if (orientable && is_branching(P_, b))
                out.branching = b;
        }
        return out;
    }

    Polyhedron P_;
    bool have_b_;
    bool branching_ok_ = false;
    std::map<std::string, RegionState> state_;
    std::map<std::string, std::string> alias_;
    std::map<std::string, std::string> node_region_;
};

}  // namespace

Shadow remove_region(const Shadow& S, const std::string& region) { return Remover(S).run(region); }

}  // namespace shadow
