#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <set>
#include <tuple>

#include "shadow/asp.hpp"
#include "shadow/branching.hpp"
#include "shadow/invariants.hpp"
#include "shadow/shadow_build.hpp"
#include "shadow/topology.hpp"

namespace shadow {

const std::string& embedded_fixture(const std::string& name);

namespace {

const BoundaryCircle& plain_circle(const Polyhedron& P, const std::string& id)
{
    const BoundaryCircle* c = P.circle(id);
    if (!c)
        throw Error(ErrorCode::UnknownId, "no boundary circle '" + id + "'");
    if (!c->plain())
        throw Error(ErrorCode::NotCappable, "circle '" + id + "' runs through boundary vertices");
    return *c;
}

std::set<std::string> all_ids(const Polyhedron& P)
{
    std::set<std::string> ids;
    for (auto& n : P.nodes)
        ids.insert(n.id);
    for (auto& e : P.edges)
        ids.insert(e.id);
    for (auto& r : P.regions)
        ids.insert(r.id);
    for (auto& c : P.boundary)
        ids.insert(c.id);
    return ids;
}

// first of base, base2, base3, ... unused as an id prefix
std::string fresh_prefix(const Polyhedron& P, const std::string& base)
{
    auto ids = all_ids(P);
    for (int k = 1;; ++k) {
        std::string p = k == 1 ? base + "_" : base + std::to_string(k) + "_";
        bool clash = false;
        for (auto& id : ids)
            if (id.compare(0, p.size(), p) == 0)
                clash = true;
        if (!clash)
            return p;
    }
}

Shadow disjoint_union(const std::vector<Shadow>& parts, const std::string& name)
{
    Shadow U;
    U.poly.name = name;
    bool branched = true;
    Branching b;
    std::set<std::string> ids;
    for (auto& S : parts) {
        for (auto& id : all_ids(S.poly))
            if (!ids.insert(id).second)
                throw Error(ErrorCode::DuplicateId, "id '" + id + "' occurs in two summands");
        auto append = [](auto& dst, const auto& src) { dst.insert(dst.end(), src.begin(), src.end()); };
        append(U.poly.nodes, S.poly.nodes);
        append(U.poly.edges, S.poly.edges);
        append(U.poly.regions, S.poly.regions);
        append(U.poly.boundary, S.poly.boundary);
        if (S.branching)
            for (auto& [r, s] : S.branching->sign)
                b.sign[r] = s;
        else
            branched = false;
    }
    if (branched)
        U.branching = b;
    return U;
}

int twist_parity(const Polyhedron& P, const Region& R)
{
    auto t = region_twist(P, R);
    return t ? *t % 2 : 0;
}

// internal regions get a gleam (kept if its parity is right, else the smallest nonnegative
// one of the right parity); external regions lose theirs
void settle_gleam(Polyhedron& P, const std::string& region)
{
    Region* R = P.region(region);
    if (!region_internal(P, *R)) {
        R->gleam.reset();
        return;
    }
    int parity = twist_parity(P, *R);
    if (!R->gleam || ((R->gleam->twice % 2 + 2) % 2) != parity)
        R->gleam = HalfInteger{parity};
}

void recompute_genus(const Polyhedron& P, Region& R, int chi)
{
    int b = region_boundary_count(P, R);
    R.genus = R.orientable ? (2 - chi - b) / 2 : 2 - chi - b;
}

// glue the free circles ca (region A) and cb (region B != A): B is absorbed into A
void glue_circles(Shadow& S, const std::string& ca, const std::string& cb)
{
    Polyhedron& P = S.poly;
    std::string ra = plain_circle(P, ca).region;
    std::string rb = plain_circle(P, cb).region;
    if (ra == rb)
        throw Error(ErrorCode::IllegalResult, "gluing two circles of one region");
    int chi = region_euler(P, *P.region(ra)) + region_euler(P, *P.region(rb));
    Region B = *P.region(rb);
    std::optional<HalfInteger> g;
    if (P.region(ra)->gleam || B.gleam)
        g = HalfInteger{(P.region(ra)->gleam ? P.region(ra)->gleam->twice : 0) + (B.gleam ? B.gleam->twice : 0)};
    P.boundary.erase(std::remove_if(P.boundary.begin(), P.boundary.end(), [&](auto& c) { return c.id == ca || c.id == cb; }),
                     P.boundary.end());
    for (auto& c : P.boundary)
        if (c.region == rb)
            c.region = ra;
    P.regions.erase(std::remove_if(P.regions.begin(), P.regions.end(), [&](auto& r) { return r.id == rb; }), P.regions.end());
    Region* A = P.region(ra);
    A->walks.insert(A->walks.end(), B.walks.begin(), B.walks.end());
    A->orientable = A->orientable && B.orientable;
    A->gleam = g;
    recompute_genus(P, *A, chi);
    settle_gleam(P, ra);
    if (S.branching) {
        int sa = S.branching->sign.at(ra), sb = S.branching->sign.at(rb);
        S.branching->sign.erase(rb);
        if (sa != sb)
            S.branching.reset();
    }
}

void drop_branching_if_invalid(Shadow& S)
{
    if (!S.branching)
        return;
    try {
        if (!is_branching(S.poly, *S.branching))
            S.branching.reset();
    } catch (const Error&) {
        S.branching.reset();
    }
}

Shadow negated(Shadow S)
{
    if (S.branching)
        S.branching = S.branching->negated();
    return S;
}

}  // namespace

Shadow prefixed(const Shadow& S, const std::string& prefix)
{
    Shadow T = S;
    Polyhedron& P = T.poly;
    for (auto& n : P.nodes)
        n.id = prefix + n.id;
    for (auto& e : P.edges) {
        e.id = prefix + e.id;
        if (!e.from.empty())
            e.from = prefix + e.from;
        if (!e.to.empty())
            e.to = prefix + e.to;
    }
    for (auto& r : P.regions) {
        r.id = prefix + r.id;
        for (auto& w : r.walks)
            for (auto& s : w)
                s.edge = prefix + s.edge;
    }
    for (auto& c : P.boundary) {
        c.id = prefix + c.id;
        if (!c.region.empty())
            c.region = prefix + c.region;
        for (auto& v : c.bvs)
            v = prefix + v;
    }
    if (T.branching) {
        Branching b;
        for (auto& [r, s] : T.branching->sign)
            b.sign[prefix + r] = s;
        T.branching = b;
    }
    return T;
}

Shadow cap_boundary(const Shadow& S, const std::string& circle, HalfInteger gleam)
{
    Shadow T = S;
    Polyhedron& P = T.poly;
    std::string r = plain_circle(P, circle).region;
    int chi = region_euler(P, *P.region(r)) + 1;
    P.boundary.erase(std::remove_if(P.boundary.begin(), P.boundary.end(), [&](auto& c) { return c.id == circle; }), P.boundary.end());
    Region* R = P.region(r);
    recompute_genus(P, *R, chi);
    if (region_internal(P, *R)) {
        int parity = twist_parity(P, *R);
        if (((gleam.twice % 2) + 2) % 2 != parity)
            throw Error(ErrorCode::InvalidInput, "gleam " + gleam.str() + " on " + r + " needs " + (parity ? "a strict half-integer" : "an integer"));
        R->gleam = gleam;
    } else {
        R->gleam.reset();
    }
    return T;
}

Shadow attach_tower(const Shadow& S, const std::string& circle, int height, const std::vector<HalfInteger>& gleams)
{
    if (height < 1)
        throw Error(ErrorCode::InvalidInput, "tower height must be positive");
    if (static_cast<int>(gleams.size()) != height)
        throw Error(ErrorCode::InvalidInput, "a tower of height " + std::to_string(height) + " takes " + std::to_string(height) + " gleams");
    Shadow T = S;
    Polyhedron& P = T.poly;
    const BoundaryCircle base = plain_circle(P, circle);
    const std::string pre = fresh_prefix(P, circle);
    // the circle becomes a walk: b and chi unchanged
    const int chi = region_euler(P, *P.region(base.region));
    P.boundary.erase(std::remove_if(P.boundary.begin(), P.boundary.end(), [&](auto& c) { return c.id == circle; }), P.boundary.end());
    Region* R = P.region(base.region);
    const int sign = T.branching ? T.branching->sign.at(base.region) : 1;
    auto c_id = [&](int k) { return pre + "c" + std::to_string(k); };
    for (int k = 1; k <= height; ++k)
        P.edges.push_back({c_id(k), "", "", false});
    R->walks.push_back({{c_id(1), 1, 0}});
    recompute_genus(P, *R, chi);
    for (int k = 1; k <= height; ++k) {
        std::string side = pre + "t" + std::to_string(k);
        P.regions.push_back({side, 0, true, {{{c_id(k), -1, 2}}}, std::nullopt});
        P.boundary.push_back({pre + "s" + std::to_string(k), base.color, side, {}});
        std::string next = k < height ? pre + "a" + std::to_string(k) : pre + "d";
        Region up{next, 0, true, {{{c_id(k), -1, 1}}}, gleams[k - 1]};
        if (k < height)
            up.walks.push_back({{c_id(k + 1), 1, 0}});
        P.regions.push_back(up);
        if (T.branching) {
            T.branching->sign[side] = sign;
            T.branching->sign[next] = sign;
        }
    }
    settle_gleam(P, base.region);
    for (int k = 1; k <= height; ++k) {
        std::string id = k < height ? pre + "a" + std::to_string(k) : pre + "d";
        const Region* U = P.region(id);
        if (((U->gleam->twice % 2) + 2) % 2 != twist_parity(P, *U))
            throw Error(ErrorCode::InvalidInput, "tower gleam " + U->gleam->str() + " has the wrong parity");
    }
    drop_branching_if_invalid(T);
    return T;
}

Shadow recolor_boundary(const Shadow& S, const std::string& circle, Color color)
{
    Shadow T = S;
    BoundaryCircle* c = T.poly.circle(circle);
    if (!c)
        throw Error(ErrorCode::UnknownId, "no boundary circle '" + circle + "'");
    c->color = color;
    return T;
}

Shadow connected_sum(const Shadow& A, const Shadow& B)
{
    if (A.poly.regions.empty() || B.poly.regions.empty())
        throw Error(ErrorCode::InvalidInput, "connected sum needs a region on both sides");
    Shadow U = disjoint_union({prefixed(A, "a_"), prefixed(B, "b_")}, A.poly.name + "#" + B.poly.name);
    auto first_region = [](const Polyhedron& P) {
        std::string best = P.regions.front().id;
        for (auto& r : P.regions)
            if (natural_less(r.id, best))
                best = r.id;
        return best;
    };
    std::string r1 = "a_" + first_region(A.poly);
    std::string r2 = "b_" + first_region(B.poly);
    const std::string pre = fresh_prefix(U.poly, "sum");
    const std::string s = pre + "c", d = pre + "d";
    U.poly.edges.push_back({s, "", "", false});
    int s1 = U.branching ? U.branching->sign.at(r1) : 1;
    int s2 = U.branching ? U.branching->sign.at(r2) : 1;
    // effective directions s1, -s1 and + on the new circle
    U.poly.region(r1)->walks.push_back({{s, 1, 0}});
    U.poly.region(r2)->walks.push_back({{s, -s1 * s2, 1}});
    U.poly.regions.push_back({d, 0, true, {{{s, 1, 2}}}, HalfInteger{0}});
    if (U.branching)
        U.branching->sign[d] = 1;
    drop_branching_if_invalid(U);
    return U;
}

Shadow eliminate_boundary_vertices(const Shadow& S)
{
    if (S.poly.boundary_vertices() == 0)
        return S;
    Shadow T = S;
    Polyhedron& P = T.poly;
    const Topology topo = build_topology(S.poly);
    if (!topo.problems.empty())
        throw Error(ErrorCode::InvalidInput, topo.problems.front());
    const std::string pre = fresh_prefix(P, "arc");

    // each boundary arc becomes an edge between its two boundary vertices
    struct Arc {
        std::string id;
        int from, to;  // node indices
    };
    std::vector<Arc> arcs;
    std::map<std::tuple<int, int, int>, std::string> after_step;
    for (auto& c : topo.corners) {
        if (!c.arc)
            continue;
        Arc a{pre + std::to_string(arcs.size() + 1), topo.end_node[c.end_in], topo.end_node[c.end_out]};
        arcs.push_back(a);
        after_step[{c.region, c.walk, c.step}] = a.id;
    }
    for (auto& a : arcs)
        P.edges.push_back({a.id, S.poly.nodes[a.from].id, S.poly.nodes[a.to].id, false});
    for (size_t r = 0; r < S.poly.regions.size(); ++r) {
        Region& R = P.regions[r];
        for (size_t w = 0; w < R.walks.size(); ++w) {
            Walk out;
            for (size_t k = 0; k < R.walks[w].size(); ++k) {
                out.push_back(R.walks[w][k]);
                auto it = after_step.find({static_cast<int>(r), static_cast<int>(w), static_cast<int>(k)});
                if (it != after_step.end())
                    out.push_back({it->second, 1, 0});
            }
            R.walks[w] = out;
        }
    }

    // ribbon surface around the boundary graph; rotation at a vertex = natural order of arc ends
    std::map<int, std::vector<std::pair<int, int>>> rotation;  // node -> (arc, side)
    for (size_t a = 0; a < arcs.size(); ++a) {
        rotation[arcs[a].from].push_back({static_cast<int>(a), 0});
        rotation[arcs[a].to].push_back({static_cast<int>(a), 1});
    }
    std::set<std::pair<int, int>> used;  // (arc, forward?)
    std::vector<std::string> faces;
    for (size_t a0 = 0; a0 < arcs.size(); ++a0) {
        for (int fwd0 : {1, 0}) {
            if (used.count({static_cast<int>(a0), fwd0}))
                continue;
            Walk w;
            int a = static_cast<int>(a0), fwd = fwd0;
            while (used.insert({a, fwd}).second) {
                w.push_back(fwd ? Step{arcs[a].id, 1, 1} : Step{arcs[a].id, -1, 2});
                int v = fwd ? arcs[a].to : arcs[a].from;
                auto& rot = rotation.at(v);
                auto pos = std::find(rot.begin(), rot.end(), std::make_pair(a, fwd ? 1 : 0)) - rot.begin();
                auto [b, side] = rot[(pos + 1) % rot.size()];
                a = b;
                fwd = side == 0;
            }
            std::string id = pre + "f" + std::to_string(faces.size() + 1);
            faces.push_back(id);
            P.regions.push_back({id, 0, true, {w}, std::nullopt});
            P.boundary.push_back({pre + "l" + std::to_string(faces.size()), Color::F, id, {}});
        }
    }
    P.boundary.erase(std::remove_if(P.boundary.begin(), P.boundary.end(), [](auto& c) { return !c.plain(); }), P.boundary.end());
    for (auto& n : P.nodes)
        n.kind = NodeKind::True;
    for (auto& R : S.poly.regions)
        settle_gleam(P, R.id);

    if (T.branching) {
        // the surface is oriented as a whole; try both orientations, then any signs on it
        std::optional<Branching> found;
        const int k = static_cast<int>(faces.size());
        std::vector<int> masks{0, (1 << k) - 1};
        for (int m = 1; k < 20 && m < (1 << k) - 1; ++m)
            masks.push_back(m);
        for (int m : masks) {
            Branching b = *T.branching;
            for (int i = 0; i < k; ++i)
                b.sign[faces[i]] = (m >> i & 1) ? -1 : 1;
            if (is_branching(P, b)) {
                found = b;
                break;
            }
        }
        T.branching = found;
    }
    return T;
}

namespace {

Shadow insert_Q(Shadow U, const std::string& l1, const std::string& l2, bool use_Q0)
{
    // chain l1 = alpha1 (Q0) , alpha2 (Q0) = alpha1 (Q), alpha2 (Q) = l2
    std::vector<Shadow> pieces;
    std::string qp = fresh_prefix(U.poly, "q");
    std::string pp;
    Shadow Q = prefixed(fixture_Q(), qp);
    Shadow Q0;
    if (use_Q0) {
        Shadow tmp = disjoint_union({U, Q}, U.poly.name);
        pp = fresh_prefix(tmp.poly, "p");
        Q0 = prefixed(fixture_Q0(), pp);
    }
    const bool branched = U.branching.has_value();
    // try orientation reversals of the inserted pieces until the signs glue
    for (int nq : {1, -1}) {
        for (int n0 : {1, -1}) {
            if (!use_Q0 && n0 < 0)
                continue;
            std::vector<Shadow> parts{U, nq > 0 ? Q : negated(Q)};
            if (use_Q0)
                parts.push_back(n0 > 0 ? Q0 : negated(Q0));
            Shadow W = disjoint_union(parts, U.poly.name);
            if (branched) {
                auto sign_of_circle = [&](const std::string& c) { return W.branching->sign.at(W.poly.circle(c)->region); };
                bool ok;
                if (use_Q0)
                    ok = sign_of_circle(l1) == sign_of_circle(pp + "alpha1") && sign_of_circle(pp + "alpha2") == sign_of_circle(qp + "alpha1") &&
                         sign_of_circle(qp + "alpha2") == sign_of_circle(l2);
                else
                    ok = sign_of_circle(l1) == sign_of_circle(qp + "alpha1") && sign_of_circle(qp + "alpha2") == sign_of_circle(l2);
                if (!ok)
                    continue;
            }
            if (use_Q0) {
                glue_circles(W, l1, pp + "alpha1");
                glue_circles(W, qp + "alpha1", pp + "alpha2");
            } else {
                glue_circles(W, l1, qp + "alpha1");
            }
            glue_circles(W, l2, qp + "alpha2");
            drop_branching_if_invalid(W);
            return W;
        }
    }
    throw Error(ErrorCode::NotAchievable, "branching does not extend");
}

void check_torus_circle(const Polyhedron& P, const std::string& c)
{
    const BoundaryCircle& b = plain_circle(P, c);
    if (b.color != Color::E)
        throw Error(ErrorCode::InvalidInput, "circle '" + c + "' is not e-colored");
}

}  // namespace

Shadow torus_sum(const Shadow& A, const std::string& l1, const Shadow& B, const std::string& l2, bool use_Q0)
{
    check_torus_circle(A.poly, l1);
    check_torus_circle(B.poly, l2);
    // a branching of B may be reversed as a whole
    for (const Shadow& Bv : {prefixed(B, "b_"), negated(prefixed(B, "b_"))}) {
        Shadow U = disjoint_union({prefixed(A, "a_"), Bv}, A.poly.name + "+" + B.poly.name);
        try {
            return insert_Q(U, "a_" + l1, "b_" + l2, use_Q0);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAchievable)
                throw;
        }
        if (!A.branching || !B.branching)
            break;
    }
    if (!use_Q0)
        return torus_sum(A, l1, B, l2, true);
    throw Error(ErrorCode::NotAchievable, "branching does not extend across the torus gluing");
}

Shadow torus_self_sum(const Shadow& A, const std::string& l1, const std::string& l2, bool use_Q0)
{
    check_torus_circle(A.poly, l1);
    check_torus_circle(A.poly, l2);
    if (l1 == l2)
        throw Error(ErrorCode::InvalidInput, "torus self-sum needs two distinct circles");
    try {
        return insert_Q(A, l1, l2, use_Q0);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotAchievable || use_Q0)
            throw;
    }
    return insert_Q(A, l1, l2, true);
}

namespace {

// boundary arcs of one component through boundary vertices
struct ArcCorner {
    int region, walk, in_step, out_step;  // walk steps before / after the arc
    int x, y;                             // node indices: arc runs x -> y
    int slot_x, slot_y;                   // germs used at x and y
};

std::vector<ArcCorner> arcs_of(const Topology& T, const std::set<int>& bvs)
{
    std::vector<ArcCorner> out;
    for (auto& c : T.corners) {
        if (!c.arc)
            continue;
        int x = T.end_node[c.end_in], y = T.end_node[c.end_out];
        if (!bvs.count(x))
            continue;
        if (!bvs.count(y))
            throw Error(ErrorCode::InvalidInput, "boundary arc leaves the component");
        int n = static_cast<int>(T.P->regions[c.region].walks[c.walk].size());
        out.push_back({c.region, c.walk, c.step, (c.step + 1) % n, x, y, c.slot_in, c.slot_out});
    }
    return out;
}

// 6 arcs on 4 vertices: two disjoint doubled pairs joined by two single arcs
bool h_shaped(const std::vector<ArcCorner>& arcs, const std::vector<int>& verts)
{
    if (arcs.size() != 6 || verts.size() != 4)
        return false;
    std::map<std::pair<int, int>, int> mult;
    std::map<int, int> deg;
    for (auto& a : arcs) {
        if (a.x == a.y)
            return false;
        ++mult[{std::min(a.x, a.y), std::max(a.x, a.y)}];
        ++deg[a.x];
        ++deg[a.y];
    }
    int doubles = 0;
    std::set<int> in_double;
    for (auto& [k, m] : mult) {
        if (m > 2)
            return false;
        if (m == 2) {
            ++doubles;
            in_double.insert(k.first);
            in_double.insert(k.second);
        }
    }
    for (int v : verts)
        if (deg[v] != 3)
            return false;
    return doubles == 2 && in_double.size() == 4;
}

struct GlobalStep {
    bool q;         // from Q_i
    int region;
    Step step;
};

}  // namespace

Shadow resolve_type3(const Shadow& S, const std::string& circle)
{
    const BoundaryCircle* bc = S.poly.circle(circle);
    if (!bc)
        throw Error(ErrorCode::UnknownId, "no boundary circle '" + circle + "'");
    const Topology TP = build_topology(S.poly);
    if (!TP.problems.empty())
        throw Error(ErrorCode::InvalidInput, TP.problems.front());
    std::vector<int> pv;
    for (auto& v : bc->bvs)
        pv.push_back(TP.node_idx.at(v));
    const std::vector<ArcCorner> pa = arcs_of(TP, std::set<int>(pv.begin(), pv.end()));
    if (!h_shaped(pa, pv))
        throw Error(ErrorCode::InvalidInput, "boundary component '" + circle + "' is not H-shaped");

    Shadow Qs = prefixed(fixture_Qi(), fresh_prefix(S.poly, "qi"));
    const Polyhedron& Q = Qs.poly;
    const Topology TQ = build_topology(Q);
    std::vector<int> qv;
    for (auto& v : Q.boundary.front().bvs)
        qv.push_back(TQ.node_idx.at(v));
    const std::vector<ArcCorner> qa = arcs_of(TQ, std::set<int>(qv.begin(), qv.end()));
    const Polyhedron& P = S.poly;

    // the single edge germ at a boundary vertex: (edge index, side)
    auto bv_end = [](const Topology& T, int node) {
        for (size_t e = 0; e < T.end_node.size(); ++e)
            if (T.end_node[e] == node)
                return static_cast<int>(e);
        throw Error(ErrorCode::IllegalResult, "boundary vertex without an edge");
    };

    std::optional<Shadow> fallback;
    std::vector<int> phi_order(qv);
    std::sort(phi_order.begin(), phi_order.end());
    do {
        std::map<int, int> phi;  // P node -> Q node
        for (size_t i = 0; i < pv.size(); ++i)
            phi[pv[i]] = phi_order[i];
        std::vector<int> assign(pa.size(), -1);
        std::vector<bool> taken(qa.size(), false);
        std::vector<std::vector<int>> assignments;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == pa.size()) {
                assignments.push_back(assign);
                return;
            }
            std::set<int> want{phi[pa[i].x], phi[pa[i].y]};
            for (size_t j = 0; j < qa.size(); ++j)
                if (!taken[j] && std::set<int>{qa[j].x, qa[j].y} == want) {
                    taken[j] = true;
                    assign[i] = static_cast<int>(j);
                    rec(i + 1);
                    taken[j] = false;
                }
        };
        rec(0);
        for (auto& as : assignments) {
            // Q regions run their arcs against P's
            std::map<int, int> reversed;
            bool ok = true;
            for (size_t i = 0; i < pa.size() && ok; ++i) {
                const ArcCorner& b = qa[as[i]];
                int rev = b.x == phi[pa[i].x] ? 1 : 0;
                auto [it, fresh] = reversed.insert({b.region, rev});
                ok = fresh || it->second == rev;
            }
            if (!ok)
                continue;
            // germ correspondence at each glued vertex: Q slot -> P slot
            std::map<int, std::array<int, 3>> slot_map;  // Q node -> map
            for (size_t i = 0; i < pa.size(); ++i) {
                const ArcCorner& a = pa[i];
                const ArcCorner& b = qa[as[i]];
                bool same = b.x == phi[a.x];
                slot_map[phi[a.x]][same ? b.slot_x : b.slot_y] = a.slot_x;
                slot_map[phi[a.y]][same ? b.slot_y : b.slot_x] = a.slot_y;
            }
            // merged edges: P edge at a glued vertex absorbs the Q edge there
            struct Tr {
                std::string rep;
                int orient;
                std::array<int, 3> perm;
            };
            std::map<std::string, Tr> q_edge;
            Polyhedron R;
            R.name = P.name;
            std::set<std::string> gone(bc->bvs.begin(), bc->bvs.end());
            for (auto& n : P.nodes)
                if (!gone.count(n.id))
                    R.nodes.push_back(n);
            for (auto& n : Q.nodes)
                if (n.kind == NodeKind::True)
                    R.nodes.push_back(n);
            std::set<std::string> absorbed;
            for (size_t e = 0; e < P.edges.size(); ++e) {
                Edge E = P.edges[e];
                for (int side : {0, 1}) {
                    int node = TP.end_node[end_id(static_cast<int>(e), side)];
                    if (node < 0 || !phi.count(node))
                        continue;
                    int qe = end_edge(bv_end(TQ, phi[node]));
                    const Edge& G = Q.edges[qe];
                    bool g_from_bv = TQ.end_node[end_id(qe, 0)] == phi[node];
                    const std::string& far = g_from_bv ? G.to : G.from;
                    // along E's direction the chain continues away from the glued vertex (side 1) or arrives at it (side 0)
                    int orient = side == 1 ? (g_from_bv ? 1 : -1) : (g_from_bv ? -1 : 1);
                    (side == 1 ? E.to : E.from) = far;
                    q_edge[G.id] = {E.id, orient, slot_map[phi[node]]};
                    absorbed.insert(G.id);
                }
                R.edges.push_back(E);
            }
            for (auto& G : Q.edges)
                if (!absorbed.count(G.id))
                    R.edges.push_back(G);
            auto translate = [&](const GlobalStep& g) {
                if (!g.q)
                    return g.step;
                auto it = q_edge.find(g.step.edge);
                if (it == q_edge.end())
                    return g.step;
                return Step{it->second.rep, g.step.dir * it->second.orient, it->second.perm[g.step.slot]};
            };

            // oriented Q walks
            std::vector<std::vector<Walk>> qwalks(Q.regions.size());
            for (size_t r = 0; r < Q.regions.size(); ++r)
                for (auto w : Q.regions[r].walks) {
                    if (reversed.count(static_cast<int>(r)) && reversed[static_cast<int>(r)]) {
                        std::reverse(w.begin(), w.end());
                        for (auto& st : w)
                            st.dir = -st.dir;
                    }
                    qwalks[r].push_back(w);
                }
            // position of an oriented Q arc: (in step, out step)
            auto q_arc_steps = [&](const ArcCorner& b) {
                int r = b.region;
                int n = static_cast<int>(Q.regions[r].walks[b.walk].size());
                if (reversed.count(r) && reversed[r])
                    return std::make_pair(n - 1 - b.out_step, n - 1 - b.in_step);
                return std::make_pair(b.in_step, b.out_step);
            };
            using Key = std::tuple<int, int, int, int>;  // (q, region, walk, step)
            std::map<Key, Key> jump;
            for (size_t i = 0; i < pa.size(); ++i) {
                const ArcCorner& a = pa[i];
                const ArcCorner& b = qa[as[i]];
                auto [qin, qout] = q_arc_steps(b);
                jump[{0, a.region, a.walk, a.in_step}] = {1, b.region, b.walk, qout};
                jump[{1, b.region, b.walk, qin}] = {0, a.region, a.walk, a.out_step};
            }
            auto walk_of = [&](const Key& k) -> const Walk& {
                return std::get<0>(k) ? qwalks[std::get<1>(k)][std::get<2>(k)] : P.regions[std::get<1>(k)].walks[std::get<2>(k)];
            };
            auto next = [&](const Key& k) {
                auto it = jump.find(k);
                if (it != jump.end())
                    return std::make_pair(it->second, true);
                int n = static_cast<int>(walk_of(k).size());
                return std::make_pair(Key{std::get<0>(k), std::get<1>(k), std::get<2>(k), (std::get<3>(k) + 1) % n}, false);
            };

            // regions merged across arcs
            const int np = static_cast<int>(P.regions.size());
            std::vector<int> uf(np + Q.regions.size());
            std::iota(uf.begin(), uf.end(), 0);
            std::function<int(int)> find = [&](int v) { return uf[v] == v ? v : uf[v] = find(uf[v]); };
            std::map<int, int> arcs_in;
            for (size_t i = 0; i < pa.size(); ++i)
                uf[find(pa[i].region)] = find(np + qa[as[i]].region);
            for (size_t i = 0; i < pa.size(); ++i)
                ++arcs_in[find(pa[i].region)];

            std::set<Key> seen;
            std::map<int, std::vector<Walk>> walks_of;
            bool broken = false;
            auto trace = [&](Key k0) {
                std::vector<Step> cyc;
                std::vector<bool> across;  // link from previous step crosses a glued vertex
                Key k = k0;
                bool jumped = false;
                while (!seen.count(k)) {
                    seen.insert(k);
                    cyc.push_back(translate({std::get<0>(k) == 1, std::get<1>(k), walk_of(k)[std::get<3>(k)]}));
                    across.push_back(jumped);
                    auto [nk, j] = next(k);
                    k = nk;
                    jumped = j;
                }
                if (k != k0) {
                    broken = true;
                    return;
                }
                across[0] = jumped;
                // collapse runs joined across glued vertices
                size_t start = 0;
                while (start < cyc.size() && across[start])
                    ++start;
                if (start == cyc.size()) {
                    broken = true;
                    return;
                }
                Walk w;
                for (size_t i = 0; i < cyc.size(); ++i) {
                    size_t j = (start + i) % cyc.size();
                    if (across[j]) {
                        if (!(cyc[j] == w.back()))
                            broken = true;
                        continue;
                    }
                    w.push_back(cyc[j]);
                }
                int cls = find(std::get<0>(k0) ? np + std::get<1>(k0) : std::get<1>(k0));
                walks_of[cls].push_back(w);
            };
            for (int r = 0; r < np; ++r)
                for (size_t w = 0; w < P.regions[r].walks.size(); ++w)
                    for (size_t st = 0; st < P.regions[r].walks[w].size(); ++st)
                        if (!seen.count({0, r, static_cast<int>(w), static_cast<int>(st)}))
                            trace({0, r, static_cast<int>(w), static_cast<int>(st)});
            for (size_t r = 0; r < Q.regions.size(); ++r)
                for (size_t w = 0; w < qwalks[r].size(); ++w)
                    for (size_t st = 0; st < qwalks[r][w].size(); ++st)
                        if (!seen.count({1, static_cast<int>(r), static_cast<int>(w), static_cast<int>(st)}))
                            trace({1, static_cast<int>(r), static_cast<int>(w), static_cast<int>(st)});
            if (broken)
                continue;

            // one region per class
            std::map<int, std::vector<int>> members;
            for (int i = 0; i < static_cast<int>(uf.size()); ++i)
                members[find(i)].push_back(i);
            auto member_region = [&](int i) -> const Region& { return i < np ? P.regions[i] : Q.regions[i - np]; };
            std::map<std::string, std::string> renamed;
            Branching pb;
            bool sign_clash = false;
            std::vector<std::string> free_sign;
            for (auto& [cls, ms] : members) {
                std::string id;
                for (int i : ms)
                    if (i < np && (id.empty() || natural_less(P.regions[i].id, id)))
                        id = P.regions[i].id;
                if (id.empty())
                    id = member_region(ms.front()).id;
                bool orientable = true;
                std::optional<HalfInteger> g;
                std::optional<int> sign;
                for (int i : ms) {
                    const Region& M = member_region(i);
                    renamed[M.id] = id;
                    orientable = orientable && M.orientable;
                    if (M.gleam)
                        g = HalfInteger{(g ? g->twice : 0) + M.gleam->twice};
                    if (i < np && S.branching) {
                        int sg = S.branching->sign.at(M.id);
                        if (sign && *sign != sg)
                            sign_clash = true;
                        sign = sg;
                    }
                }
                if (!sign)
                    free_sign.push_back(id);
                pb.sign[id] = sign.value_or(1);
                Region M{id, 0, orientable, walks_of[cls], ms.size() == 1 ? g : std::nullopt};
                R.regions.push_back(M);
            }
            for (auto& c : P.boundary)
                if (c.id != circle) {
                    BoundaryCircle c2 = c;
                    if (c2.plain())
                        c2.region = renamed.at(c2.region);
                    R.boundary.push_back(c2);
                }
            // genus from chi once all circles are placed
            for (auto& [cls, ms] : members) {
                int chi = -arcs_in[cls];
                for (int i : ms)
                    chi += region_euler(i < np ? P : Q, member_region(i));
                Region* M = R.region(renamed.at(member_region(ms.front()).id));
                recompute_genus(R, *M, chi);
            }
            for (auto& M : R.regions)
                settle_gleam(R, M.id);
            if (!validate(R).valid)
                continue;
            Shadow out{R, std::nullopt};
            if (S.branching && !sign_clash) {
                for (int m = 0; m < (1 << free_sign.size()) && !out.branching; ++m) {
                    Branching b = pb;
                    for (size_t i = 0; i < free_sign.size(); ++i)
                        b.sign[free_sign[i]] = (m >> i & 1) ? -1 : 1;
                    if (is_branching(R, b))
                        out.branching = b;
                }
            }
            if (!S.branching || out.branching)
                return out;
            if (!fallback)
                fallback = out;
        }
    } while (std::next_permutation(phi_order.begin(), phi_order.end()));
    if (fallback)
        return *fallback;
    throw Error(ErrorCode::IllegalResult, "Q_i does not glue along '" + circle + "'");
}

Shadow resolve_all_type3(const Shadow& S)
{
    Shadow T = S;
    std::vector<std::string> ids;
    for (auto& c : S.poly.boundary)
        if (c.bvs.size() == 4)
            ids.push_back(c.id);
    std::sort(ids.begin(), ids.end(), natural_less);
    for (auto& id : ids) {
        const Topology topo = build_topology(T.poly);
        std::vector<int> v;
        for (auto& b : T.poly.circle(id)->bvs)
            v.push_back(topo.node_idx.at(b));
        if (h_shaped(arcs_of(topo, std::set<int>(v.begin(), v.end())), v))
            T = resolve_type3(T, id);
    }
    return T;
}

Shadow fixture_Q() { return parse_asp(embedded_fixture("Q")); }
Shadow fixture_Q0() { return parse_asp(embedded_fixture("Q0")); }
Shadow fixture_Qi() { return parse_asp(embedded_fixture("Qi")); }

}  // namespace shadow
