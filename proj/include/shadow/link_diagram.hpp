#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shadow {

// leaving crossing `crossing` through position `pos`
struct Dart {
    int crossing = 0;
    int pos = 0;
    bool operator==(const Dart&) const = default;
    auto operator<=>(const Dart&) const = default;
};

// Oriented diagram on S^2 from a PD code. X(a,b,c,d) lists labels counterclockwise from the
// incoming under-strand; sector s of a crossing lies between positions s and s+1.
struct LinkDiagram {
    std::vector<std::array<int, 4>> X;
    std::vector<int> over_in;                 // 1 or 3: incoming position of the over-strand
    std::vector<int> sign;                    // +1 / -1
    std::map<int, Dart> tail, head;           // label leaves at tail, arrives at head
    std::vector<std::vector<Dart>> faces;     // darts with the face on their left
    std::vector<std::array<int, 4>> face_of_dart;
    std::vector<std::array<int, 4>> face_of_sector;
    std::vector<std::vector<int>> components; // labels in traversal order
    bool round_unknot = false;                // PD[]: one crossingless circle, two faces
    std::optional<std::pair<int, int>> outer_anchor;  // (crossing, sector) inside the distinguished face

    int crossing_count() const { return static_cast<int>(X.size()); }
    int face_count() const { return round_unknot ? 2 : static_cast<int>(faces.size()); }
    int component_count() const { return round_unknot ? 1 : static_cast<int>(components.size()); }
    bool outgoing(int x, int p) const { return p == 2 || p == (over_in[x] + 2) % 4; }
    std::optional<int> outer_face() const;
    // crossing of the other end of the label at (x,p), and its position there
    Dart across(Dart d) const;
};

// over_in entries: 1, 3, or 0 for "decide from orientation propagation"
LinkDiagram build_diagram(std::vector<std::array<int, 4>> X, std::vector<int> over_in);
LinkDiagram parse_pd(const std::string& text);
// `braid <n> "<word>"`: letters a,b,... = sigma_1, sigma_2, ... positive; upper case negative
LinkDiagram parse_braid(const std::string& text);
LinkDiagram braid_diagram(int strands, const std::string& word);
// PD or braid, by first token
LinkDiagram parse_diagram(const std::string& text);
LinkDiagram load_diagram(const std::string& path);

LinkDiagram reversed(const LinkDiagram& D);
LinkDiagram with_outer_face(const LinkDiagram& D, int face);

struct SeifertCircleSet {
    std::vector<std::vector<int>> circles;  // labels
};

SeifertCircleSet seifert_circles(const LinkDiagram& D);

struct SeifertRegions {
    std::vector<int> region_of_face;
    std::vector<bool> disk;  // bounded by exactly one Seifert circle
};

SeifertRegions seifert_regions(const LinkDiagram& D);

// distinct crossings met along a face
int face_crossings(const LinkDiagram& D, int face);

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<std::string> reasons;
};

AdmissibilityReport is_admissible(const LinkDiagram& D);

struct AdmissibleDiagram {
    LinkDiagram diagram;
    bool orientation_reversed = false;
};

// throws NotAchievable
AdmissibleDiagram make_admissible(const LinkDiagram& D);

}  // namespace shadow
