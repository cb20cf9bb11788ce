#pragma once

#include <map>
#include <optional>
#include <string>

#include "shadow/polyhedron.hpp"

namespace shadow {

using AspDocument = Shadow;

AspDocument parse_asp(const std::string& text);
Polyhedron parse_polyhedron(const std::string& text);
AspDocument load_asp(const std::string& path);

std::string serialize_polyhedron(const Polyhedron& P);
std::string serialize_asp(const Polyhedron& P, const std::optional<Branching>& b);
std::string serialize_branching(const Branching& b);

struct CanonicalForm {
    Polyhedron poly;
    std::map<std::string, std::string> rename;  // old id -> canonical id
};

// ids renumbered by BFS from the smallest node; walks rotated to a normal start
CanonicalForm canonical_form(const Polyhedron& P);
Polyhedron canonicalize(const Polyhedron& P);
Branching rename_branching(const Branching& b, const std::map<std::string, std::string>& rename);

}  // namespace shadow
