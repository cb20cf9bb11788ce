#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadow {

enum class ErrorCode {
    Syntax,
    UndeclaredId,
    DuplicateId,
    IllegalDegree,
    IncompleteAssignment,
    NonOrientableRegion,
    CapExceeded,
    MalformedCode,
    NonPlanar,
    NotAdmissible,
    NotAchievable,
    IllegalResult,
    NotCappable,
    UnknownId,
    Unsupported,
    NotSpecial,
    InvalidInput,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(error_name(c)) + ": " + msg), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// gleam stored as 2g
struct HalfInteger {
    long long twice = 0;

    static HalfInteger from_twice(long long t) { return HalfInteger{t}; }
    static HalfInteger parse(const std::string& s);
    bool is_integer() const { return twice % 2 == 0; }
    double value() const { return static_cast<double>(twice) / 2.0; }
    std::string str() const;        // "1/2", "-3/2", "2"
    std::string asp_str() const;    // always "<2g>/2"

    HalfInteger operator+(HalfInteger o) const { return {twice + o.twice}; }
    HalfInteger operator-() const { return {-twice}; }
    bool operator==(const HalfInteger&) const = default;
};

enum class NodeKind { True, Boundary };
enum class Color { I, E, F };

char color_char(Color c);
Color color_from_char(char c);

struct Node {
    std::string id;
    NodeKind kind = NodeKind::True;
};

// from/to empty => circle edge (no endpoints)
struct Edge {
    std::string id;
    std::string from, to;
    bool flip = false;
    bool is_circle() const { return from.empty() && to.empty(); }
};

struct Step {
    std::string edge;
    int dir = 1;   // +1 along the edge orientation
    int slot = 0;  // 0,1,2
    bool operator==(const Step&) const = default;
};

using Walk = std::vector<Step>;

struct Region {
    std::string id;
    int genus = 0;
    bool orientable = true;
    std::vector<Walk> walks;
    std::optional<HalfInteger> gleam;
};

struct BoundaryCircle {
    std::string id;
    Color color = Color::F;
    std::string region;             // owning region for a plain circle
    std::vector<std::string> bvs;   // non-empty for a component through boundary vertices
    bool plain() const { return bvs.empty(); }
};

struct Polyhedron {
    std::string name = "P";
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<Region> regions;
    std::vector<BoundaryCircle> boundary;

    const Node* node(const std::string& id) const;
    const Edge* edge(const std::string& id) const;
    const Region* region(const std::string& id) const;
    const BoundaryCircle* circle(const std::string& id) const;
    Node* node(const std::string& id);
    Edge* edge(const std::string& id);
    Region* region(const std::string& id);
    BoundaryCircle* circle(const std::string& id);

    int true_vertices() const;
    int boundary_vertices() const;
};

// region id -> +1/-1 relative to the region's stored orientation
struct Branching {
    std::map<std::string, int> sign;
    bool operator==(const Branching&) const = default;
    bool operator<(const Branching& o) const;
    Branching negated() const;
};

// a polyhedron together with an optional branching
struct Shadow {
    Polyhedron poly;
    std::optional<Branching> branching;
};

// orders ids like v2 < v10
bool natural_less(const std::string& a, const std::string& b);

struct NaturalLess {
    bool operator()(const std::string& a, const std::string& b) const { return natural_less(a, b); }
};

}  // namespace shadow
