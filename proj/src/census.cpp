#include "shadow/census.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "shadow/asp.hpp"
#include "shadow/topology.hpp"
#include "shadow/invariants.hpp"
#include "shadow/shadow_build.hpp"

namespace shadow {

namespace {

// crossing positions 0..3 ccw from the incoming under strand
struct CrossingModel {
    std::array<bool, 4> in{};
    std::array<int, 4> edge{};   // loop edge at each position
    std::array<bool, 4> swapped{};

    int side(int p) const { return in[p] ? 1 : 0; }  // loops run out -> in

    // slot of the sheet in sector {p, q} at position p
    int slot(int p, int q) const
    {
        int s;
        if (q == (p + 2) % 4)
            s = 2;
        else if (q == (p + 3) % 4)
            s = in[p] ? 0 : 1;
        else
            s = in[p] ? 1 : 0;
        if (swapped[p] && s != 0)
            s = 3 - s;
        return s;
    }
};

}  // namespace

Shadow bouquet_neighborhood(bool two_circles, bool swap_a, bool swap_b, int crossing_sign)
{
    CrossingModel X;
    const int over_in = crossing_sign > 0 ? 3 : 1;
    const int over_out = crossing_sign > 0 ? 1 : 3;
    X.in[0] = X.in[over_in] = true;
    // loop a leaves the under strand at 2, loop b leaves the over strand
    const int a_to = two_circles ? 0 : over_in;
    const int b_to = two_circles ? over_in : 0;
    X.edge[2] = X.edge[a_to] = 0;
    X.edge[over_out] = X.edge[b_to] = 1;
    X.swapped[a_to] = swap_a;
    X.swapped[b_to] = swap_b;
    std::array<std::array<int, 2>, 2> pos{};  // edge -> side -> position
    pos[0] = {2, a_to};
    pos[1] = {over_out, b_to};

    Shadow S;
    Polyhedron& P = S.poly;
    P.name = std::string("nbd") + (two_circles ? "32" : "27");
    P.nodes.push_back({"v1", NodeKind::True});
    P.edges.push_back({"e1", "v1", "v1", false});
    P.edges.push_back({"e2", "v1", "v1", false});
    const std::string names[2] = {"e1", "e2"};

    std::set<std::pair<int, int>> seen;
    Branching b;
    for (int e0 = 0; e0 < 2; ++e0) {
        for (int s0 = 0; s0 < 3; ++s0) {
            if (seen.count({e0, s0}))
                continue;
            Walk w;
            int e = e0, s = s0;
            while (!seen.count({e, s})) {
                seen.insert({e, s});
                int dir = s == 0 ? 1 : -1;
                w.push_back({names[e], dir, s});
                int p = pos[e][dir > 0 ? 1 : 0];
                int q = 0;
                while (q == p || X.slot(p, q) != s)
                    ++q;
                int s2 = X.slot(q, p);
                int e2 = X.edge[q];
                int dir2 = s2 == 0 ? 1 : -1;
                if (pos[e2][dir2 > 0 ? 0 : 1] != q)
                    throw Error(ErrorCode::IllegalResult, "inconsistent sheet directions in the vertex model");
                e = e2;
                s = s2;
            }
            if (w.front() != Step{names[e], s == 0 ? 1 : -1, s})
                throw Error(ErrorCode::IllegalResult, "walk does not close");
            std::string r = "r" + std::to_string(P.regions.size() + 1);
            P.regions.push_back({r, 0, true, {w}, std::nullopt});
            P.boundary.push_back({"l" + std::to_string(P.regions.size()), Color::E, r, {}});
            b.sign[r] = 1;
        }
    }
    S.branching = b;
    return S;
}

std::string CappingPattern::str() const
{
    auto list = [](const std::vector<std::string>& v) {
        std::string out = "{";
        for (size_t i = 0; i < v.size(); ++i)
            out += (i ? "," : "") + v[i];
        return out + "}";
    };
    if (towers.empty())
        return list(disks);
    return list(disks) + " towers " + list(towers);
}

std::vector<std::vector<std::string>> CensusResult::simply_connected() const
{
    std::vector<std::vector<std::string>> out;
    for (auto& p : patterns) {
        if (p.verdict.verdict != Triviality::Trivial)
            continue;
        std::vector<std::string> all = p.pattern.disks;
        all.insert(all.end(), p.pattern.towers.begin(), p.pattern.towers.end());
        std::sort(all.begin(), all.end(), natural_less);
        out.push_back(all);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int CensusResult::unknown_count() const
{
    return static_cast<int>(std::count_if(patterns.begin(), patterns.end(), [](auto& p) { return p.verdict.verdict == Triviality::Unknown; }));
}

const std::vector<std::string>& model_ids()
{
    static const std::vector<std::string> ids{"27-i", "27-ii", "27-iii", "27-iv", "32-i", "32-ii", "32-iii", "32-iv"};
    return ids;
}

const std::string& embedded_fixture(const std::string& name);

Shadow load_model(const std::string& id)
{
    const auto& ids = model_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
        throw Error(ErrorCode::UnknownId, "no neighborhood model '" + id + "'");
    return parse_asp(embedded_fixture("fig" + id));
}

namespace {

// smallest gleam of the right parity for the region owning `circle` once it is filled
HalfInteger filling_gleam(const Shadow& S, const std::string& circle)
{
    const Region* R = S.poly.region(S.poly.circle(circle)->region);
    auto t = region_twist(S.poly, *R);
    return HalfInteger{t ? *t : 0};
}

PatternVerdict judge(const Shadow& S, const CappingPattern& pat, TietzeBudget budget)
{
    Shadow T = S;
    for (auto& c : pat.disks)
        T = cap_boundary(T, c, filling_gleam(T, c));
    for (auto& c : pat.towers)
        T = attach_tower(T, c, 1, {HalfInteger{0}});
    GroupPresentation G = pi1_presentation(T.poly);
    return {pat, is_trivial_group(G, budget), presentation_str(G)};
}

}  // namespace

CensusResult classify_shadow(const Shadow& S, bool allow_towers, TietzeBudget budget)
{
    std::vector<std::string> circles;
    for (auto& c : S.poly.boundary) {
        if (!c.plain())
            throw Error(ErrorCode::Unsupported, "circle '" + c.id + "' runs through boundary vertices");
        circles.push_back(c.id);
    }
    std::sort(circles.begin(), circles.end(), natural_less);
    const int n = static_cast<int>(circles.size());
    CensusResult out;
    out.model = S.poly.name;
    out.towers = allow_towers;
    std::vector<CappingPattern> pats;
    if (!allow_towers) {
        for (int size = 1; size < n; ++size)
            for (int mask = 1; mask < (1 << n); ++mask) {
                if (__builtin_popcount(mask) != size)
                    continue;
                CappingPattern p;
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1)
                        p.disks.push_back(circles[i]);
                pats.push_back(p);
            }
        std::stable_sort(pats.begin(), pats.end(), [](auto& a, auto& b) {
            return a.disks.size() != b.disks.size() ? a.disks.size() < b.disks.size() : a.disks < b.disks;
        });
    } else {
        int total = 1;
        for (int i = 0; i < n; ++i)
            total *= 3;
        for (int code = 0; code < total; ++code) {
            CappingPattern p;
            for (int i = 0, c = code; i < n; ++i, c /= 3) {
                if (c % 3 == 1)
                    p.disks.push_back(circles[i]);
                else if (c % 3 == 2)
                    p.towers.push_back(circles[i]);
            }
            if (!p.towers.empty())
                pats.push_back(p);
        }
    }
    for (auto& p : pats)
        out.patterns.push_back(judge(S, p, budget));
    return out;
}

CensusResult classify_model(const std::string& id, bool allow_towers, TietzeBudget budget)
{
    CensusResult r = classify_shadow(load_model(id), allow_towers, budget);
    r.model = id;
    return r;
}

}  // namespace shadow
