#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shadow/link_diagram.hpp"
#include "shadow/polyhedron.hpp"

namespace shadow {

// V_OCT = 8 Л(π/4), V_TET = 3 Л(π/3) with Л the Lobachevsky function
inline constexpr double V_OCT = 3.663862376708876;
inline constexpr double V_TET = 1.014941606409653;

struct StableMapSignature {
    int ii2 = 0;
    int ii3 = 0;
};

int stable_map_complexity(StableMapSignature sig);

struct FiberCensus {
    StableMapSignature signature;
    int i0_families = 0;  // definite folds: i/e circles
    int i1_families = 0;  // indefinite folds: components of S(P) minus vertices
};

// throws InvalidInput (not a branching), Unsupported (boundary vertices)
FiberCensus fiber_census(const Polyhedron& P, const Branching& b);

struct SmcBound {
    int c = 0;
    bool graph = false;  // c = 0: presents a graph link / graph manifold
};

SmcBound smc_upper_bound(const Polyhedron& P);

struct RegionSlope {
    std::string region;
    long long g2 = 0;  // 2g
    long long k = 0;   // vertex passages
    double sl = 0;
};

struct SlopeData {
    std::vector<RegionSlope> regions;  // id order
    double sl_min = 0;
};

// throws NotSpecial, InvalidInput (missing gleam)
SlopeData sl_of(const Polyhedron& P);

struct VolumeReport {
    int c = 0;
    double sl_min = 0;
    std::optional<double> lower;
    double upper_strict = 0;
    bool certificate = false;
};

VolumeReport volume_window(int c, double sl_min);
VolumeReport volume_window(const Polyhedron& P);

struct GromovBound {
    double value = 0;
    long long ceil = 0;
};

// throws InvalidInput on a negative norm
GromovBound gromov_lower_bound(double norm);

// c of the reduced shadow from the link pipeline; throws InvalidInput (cr < 2 or split diagram)
int surgery_presentation_bound(const LinkDiagram& D);

}  // namespace shadow
