#pragma once

#include <string>
#include <vector>

#include "shadow/asp.hpp"
#include "shadow/link_diagram.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline shadow::Shadow fixture(const std::string& name) { return shadow::load_asp(fixture_path(name + ".asp")); }

inline shadow::LinkDiagram diagram(const std::string& name) { return shadow::load_diagram(fixture_path("diagrams/" + name + ".diag")); }

// every ASP fixture except the deliberately broken one
inline const std::vector<std::string>& asp_fixtures()
{
    static const std::vector<std::string> all{"fig10",   "fig10-even", "fig27-i",  "fig27-ii",  "fig27-iii",     "fig27-iv",
                                              "fig32-i", "fig32-ii",   "fig32-iii", "fig32-iv", "fig35-abalone", "Q",
                                              "Q0",      "Qi",         "YxI",      "HxI",       "sl10",          "certified",
                                              "disk",    "sphere",     "mobius-leg"};
    return all;
}
