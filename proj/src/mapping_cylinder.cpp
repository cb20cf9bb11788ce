#include "shadow/shadow_build.hpp"

#include "shadow/branching.hpp"

namespace shadow {

namespace {

std::string label_edge(int label) { return "a" + std::to_string(label); }

}  // namespace

MappingCylinderShadow mapping_cylinder_shadow(const LinkDiagram& D)
{
    auto adm = is_admissible(D);
    if (!adm.admissible) {
        std::string why;
        for (auto& r : adm.reasons)
            why += (why.empty() ? "" : "; ") + r;
        throw Error(ErrorCode::NotAdmissible, why);
    }
    MappingCylinderShadow M;
    Polyhedron& P = M.shadow.poly;
    P.name = "cylinder";
    Branching b;

    if (D.round_unknot) {
        P.edges.push_back({"a1", "", "", false});
        Region f1{"f1", 0, true, {{{"a1", 1, 0}}}, HalfInteger{0}};
        Region f2{"f2", 0, true, {{{"a1", -1, 1}}}, std::nullopt};
        Region w1{"w1", 0, true, {{{"a1", -1, 2}}}, std::nullopt};
        P.regions = {f1, f2, w1};
        P.boundary.push_back({"k1", Color::I, "w1", {}});
        P.boundary.push_back({"d0", Color::F, "f2", {}});
        M.face_regions = {{0, "f1"}, {1, "f2"}};
        M.wall_regions = {{0, "w1"}};
        M.outer_region = "f2";
        for (auto& r : P.regions)
            b.sign[r.id] = 1;
        M.shadow.branching = b;
        return M;
    }

    const int n = D.crossing_count();
    for (int x = 0; x < n; ++x) {
        std::string id = "x" + std::to_string(x + 1);
        P.nodes.push_back({id, NodeKind::True});
        M.crossing_vertices[x] = id;
    }
    for (auto& [label, t] : D.tail) {
        const Dart& h = D.head.at(label);
        P.edges.push_back({label_edge(label), "x" + std::to_string(t.crossing + 1), "x" + std::to_string(h.crossing + 1), false});
    }
    const int outer = *D.outer_face();
    for (int f = 0; f < D.face_count(); ++f) {
        Region r;
        r.id = "f" + std::to_string(f + 1);
        Walk w;
        long long twice = 0;
        for (auto& d : D.faces[f]) {
            int label = D.X[d.crossing][d.pos];
            bool forward = D.outgoing(d.crossing, d.pos);
            w.push_back({label_edge(label), forward ? 1 : -1, forward ? 0 : 1});
            Dart a = D.across(d);
            int sector = (a.pos + 3) % 4;
            twice += sector % 2 == 1 ? 1 : -1;
        }
        r.walks.push_back(w);
        if (f != outer)
            r.gleam = HalfInteger{twice};
        P.regions.push_back(r);
        M.face_regions[f] = r.id;
    }
    for (size_t j = 0; j < D.components.size(); ++j) {
        Region r;
        r.id = "w" + std::to_string(j + 1);
        Walk w;
        const auto& comp = D.components[j];
        for (auto it = comp.rbegin(); it != comp.rend(); ++it)
            w.push_back({label_edge(*it), -1, 2});
        r.walks.push_back(w);
        P.regions.push_back(r);
        P.boundary.push_back({"k" + std::to_string(j + 1), Color::I, r.id, {}});
        M.wall_regions[static_cast<int>(j)] = r.id;
    }
    M.outer_region = M.face_regions[outer];
    P.boundary.push_back({"d0", Color::F, M.outer_region, {}});
    for (auto& r : P.regions)
        b.sign[r.id] = 1;
    M.shadow.branching = b;
    return M;
}

LinkShadow shadow_from_diagram(const LinkDiagram& D)
{
    LinkShadow out;
    out.diagram = make_admissible(D);
    out.cylinder = mapping_cylinder_shadow(out.diagram.diagram);
    out.reduced = remove_region(out.cylinder.shadow, out.cylinder.outer_region);
    out.reduced.poly.name = "link";
    return out;
}

}  // namespace shadow
