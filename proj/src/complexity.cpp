#include "shadow/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shadow/branching.hpp"
#include "shadow/invariants.hpp"
#include "shadow/shadow_build.hpp"
#include "shadow/topology.hpp"

namespace shadow {

int stable_map_complexity(StableMapSignature sig) { return sig.ii2 + 2 * sig.ii3; }

FiberCensus fiber_census(const Polyhedron& P, const Branching& b)
{
    if (P.boundary_vertices() > 0)
        throw Error(ErrorCode::Unsupported, "boundary vertices present; eliminate them first");
    if (!is_branching(P, b))
        throw Error(ErrorCode::InvalidInput, "not a branching");
    FiberCensus f;
    f.signature.ii2 = P.true_vertices();
    for (auto& c : P.boundary)
        if (c.color != Color::F)
            ++f.i0_families;
    // every edge is one component of S(P) minus the vertices
    f.i1_families = static_cast<int>(P.edges.size());
    return f;
}

SmcBound smc_upper_bound(const Polyhedron& P)
{
    int c = complexity_c(P);
    return {c, c == 0};
}

SlopeData sl_of(const Polyhedron& P)
{
    if (!predicates(P).is_special)
        throw Error(ErrorCode::NotSpecial, "polyhedron " + P.name + " is not special");
    const Topology T = build_topology(P);
    SlopeData out;
    std::vector<const Region*> regions;
    for (auto& r : P.regions)
        regions.push_back(&r);
    std::stable_sort(regions.begin(), regions.end(), [](auto* a, auto* b) { return natural_less(a->id, b->id); });
    for (const Region* R : regions) {
        if (!R->gleam)
            throw Error(ErrorCode::InvalidInput, "region " + R->id + " has no gleam");
        RegionSlope s{R->id, R->gleam->twice, 0, 0};
        for (auto& w : R->walks)
            for (auto& st : w) {
                int node = T.end_node[T.finish_end(st)];
                if (node >= 0 && P.nodes[node].kind == NodeKind::True)
                    ++s.k;
            }
        s.sl = std::sqrt(static_cast<double>(s.g2 * s.g2 + s.k * s.k));
        out.regions.push_back(s);
    }
    out.sl_min = out.regions.empty() ? 0 : std::min_element(out.regions.begin(), out.regions.end(), [](auto& a, auto& b) {
                                               return a.g2 * a.g2 + a.k * a.k < b.g2 * b.g2 + b.k * b.k;
                                           })->sl;
    return out;
}

VolumeReport volume_window(int c, double sl_min)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    VolumeReport r;
    r.c = c;
    r.sl_min = sl_min;
    r.upper_strict = 2.0 * c * V_OCT;
    if (sl_min > two_pi) {
        double q = two_pi / sl_min;
        r.lower = 2.0 * c * V_OCT * std::pow(1.0 - q * q, 1.5);
    }
    r.certificate = sl_min > two_pi * std::sqrt(2.0 * c);
    return r;
}

VolumeReport volume_window(const Polyhedron& P)
{
    SlopeData s = sl_of(P);
    return volume_window(complexity_c(P), s.sl_min);
}

GromovBound gromov_lower_bound(double norm)
{
    if (!(norm >= 0))
        throw Error(ErrorCode::InvalidInput, "Gromov norm must be nonnegative");
    double v = norm * V_TET / (2 * V_OCT);
    return {v, static_cast<long long>(std::ceil(v))};
}

int surgery_presentation_bound(const LinkDiagram& D)
{
    if (D.crossing_count() < 2)
        throw Error(ErrorCode::InvalidInput, "needs at least 2 crossings");
    return complexity_c(shadow_from_diagram(D).reduced.poly);
}

}  // namespace shadow
