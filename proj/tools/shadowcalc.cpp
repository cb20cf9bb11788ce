#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "shadow/asp.hpp"
#include "shadow/branching.hpp"
#include "shadow/census.hpp"
#include "shadow/complexity.hpp"
#include "shadow/invariants.hpp"
#include "shadow/link_diagram.hpp"
#include "shadow/shadow_build.hpp"

using json = nlohmann::ordered_json;
using namespace shadow;

namespace {

// exit 2: the input itself is bad
struct InputFailure {
    std::string msg;
};

bool input_error(ErrorCode c)
{
    switch (c) {
    case ErrorCode::Syntax:
    case ErrorCode::UndeclaredId:
    case ErrorCode::DuplicateId:
    case ErrorCode::IllegalDegree:
    case ErrorCode::IncompleteAssignment:
    case ErrorCode::NonOrientableRegion:
    case ErrorCode::MalformedCode:
    case ErrorCode::NonPlanar:
        return true;
    default:
        return false;
    }
}

Shadow read_shadow(const std::string& path)
{
    try {
        return load_asp(path);
    } catch (const Error& e) {
        throw InputFailure{e.what()};
    }
}

LinkDiagram read_diagram(const std::string& path)
{
    try {
        return load_diagram(path);
    } catch (const Error& e) {
        throw InputFailure{e.what()};
    }
}

// 12 significant digits
double num(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string numstr(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json census_json(const FiberCensus& f)
{
    return {{"ii2", f.signature.ii2}, {"ii3", f.signature.ii3}, {"i0_families", f.i0_families}, {"i1_families", f.i1_families}};
}

std::optional<FiberCensus> try_census(const Shadow& S)
{
    if (!S.branching || S.poly.boundary_vertices() > 0)
        return std::nullopt;
    try {
        return fiber_census(S.poly, *S.branching);
    } catch (const Error&) {
        return std::nullopt;
    }
}

int cmd_validate(const std::string& file, bool as_json)
{
    Shadow S = read_shadow(file);
    ValidationReport v = validate(S.poly);
    json j;
    j["name"] = S.poly.name;
    j["valid"] = v.valid;
    j["violations"] = v.violations;
    if (v.valid) {
        Predicates p = predicates(S.poly);
        j["c"] = complexity_c(S.poly);
        j["true_vertices"] = S.poly.true_vertices();
        j["boundary_vertices"] = S.poly.boundary_vertices();
        j["euler"] = euler_characteristic(S.poly);
        j["predicates"] = {{"closed", p.is_closed}, {"proper", p.is_proper}, {"special", p.is_special}, {"almost_special", p.is_almost_special}};
        if (S.branching) {
            bool ok = false;
            try {
                ok = is_branching(S.poly, *S.branching);
            } catch (const Error&) {
            }
            j["branching"] = ok ? "valid" : "invalid";
        } else {
            j["branching"] = find_branching(S.poly) ? "absent (branchable)" : "absent (unbranchable)";
        }
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << S.poly.name << ": " << (v.valid ? "valid" : "INVALID") << "\n";
        for (auto& m : v.violations)
            std::cout << "  " << m << "\n";
        if (v.valid) {
            std::cout << "  c = " << j["c"].get<int>() << " (true " << S.poly.true_vertices() << ", boundary " << S.poly.boundary_vertices()
                      << "), chi = " << j["euler"].get<int>() << "\n";
            std::cout << "  special: " << (j["predicates"]["special"].get<bool>() ? "yes" : "no") << ", branching: " << j["branching"].get<std::string>()
                      << "\n";
        }
    }
    return v.valid ? 0 : 2;
}

std::vector<HalfInteger> parse_gleam_list(const std::string& s)
{
    std::vector<HalfInteger> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(HalfInteger::parse(tok));
    return out;
}

Shadow run_script(const LinkShadow& L, const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw InputFailure{"cannot open surgery script '" + path + "'"};
    Shadow S = L.cylinder.shadow;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        auto h = line.find('#');
        if (h != std::string::npos)
            line = line.substr(0, h);
        std::istringstream in(line);
        std::vector<std::string> t;
        for (std::string w; in >> w;)
            t.push_back(w);
        if (t.empty())
            continue;
        auto bad = [&]() { return InputFailure{path + ":" + std::to_string(lineno) + ": cannot read '" + line + "'"}; };
        try {
            if (t[0] == "remove-outer" && t.size() == 1) {
                S = remove_region(S, L.cylinder.outer_region);
            } else if (t[0] == "cap" && t.size() == 3) {
                S = cap_boundary(S, t[1], HalfInteger::parse(t[2]));
            } else if (t[0] == "tower" && t.size() == 6 && t[2] == "height" && t[4] == "gleams") {
                S = attach_tower(S, t[1], std::stoi(t[3]), parse_gleam_list(t[5]));
            } else if (t[0] == "recolor" && t.size() == 3 && t[2].size() == 1) {
                S = recolor_boundary(S, t[1], color_from_char(t[2][0]));
            } else if (t[0] == "eliminate-bv" && t.size() == 1) {
                S = eliminate_boundary_vertices(S);
            } else if (t[0] == "resolve-type3" && t.size() == 2) {
                S = resolve_type3(S, t[1]);
            } else {
                throw bad();
            }
        } catch (const std::invalid_argument&) {
            throw bad();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Syntax)
                throw bad();
            throw;
        }
    }
    return S;
}

int cmd_shadow_from_link(const std::string& file, const std::string& script, const std::string& out, bool as_json)
{
    LinkDiagram D = read_diagram(file);
    LinkShadow L = shadow_from_diagram(D);
    Shadow S = script.empty() ? L.reduced : run_script(L, script);
    std::string asp = serialize_asp(S.poly, S.branching);
    if (!out.empty()) {
        std::ofstream o(out);
        if (!o)
            throw InputFailure{"cannot write '" + out + "'"};
        o << asp;
    }
    auto fc = try_census(S);
    json gleams = json::object();
    for (auto& r : S.poly.regions)
        if (r.gleam)
            gleams[r.id] = r.gleam->str();
    json j;
    j["crossings"] = D.crossing_count();
    j["components"] = D.component_count();
    j["orientation_reversed"] = L.diagram.orientation_reversed;
    j["c"] = complexity_c(S.poly);
    j["valid"] = validate(S.poly).valid;
    j["branched"] = S.branching.has_value();
    j["gleams"] = gleams;
    j["fiber_census"] = fc ? census_json(*fc) : json(nullptr);
    if (as_json) {
        j["asp"] = asp;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (out.empty())
        std::cout << asp;
    std::cout << "# crossings " << D.crossing_count() << ", c(P) = " << j["c"].get<int>();
    if (fc)
        std::cout << ", ii2 = " << fc->signature.ii2 << ", ii3 = " << fc->signature.ii3 << ", I1 families = " << fc->i1_families;
    std::cout << "\n";
    return 0;
}

int cmd_volume(const std::string& file, bool as_json)
{
    Shadow S = read_shadow(file);
    if (!validate(S.poly).valid)
        throw InputFailure{"polyhedron is not valid"};
    SlopeData sd = sl_of(S.poly);
    VolumeReport v = volume_window(complexity_c(S.poly), sd.sl_min);
    auto fc = try_census(S);
    json j;
    j["c"] = v.c;
    j["signature"] = {{"ii2", fc ? fc->signature.ii2 : S.poly.true_vertices()}, {"ii3", 0}};
    json sl = json::array();
    for (auto& r : sd.regions)
        sl.push_back({{"region", r.region}, {"g2", r.g2}, {"k", r.k}, {"sl", num(r.sl)}});
    j["sl"] = sl;
    j["sl_min"] = num(v.sl_min);
    j["volume"] = {{"lower", v.lower ? json(num(*v.lower)) : json(nullptr)}, {"upper_strict", num(v.upper_strict)}};
    j["certificate"] = v.certificate;
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "c(P) = " << v.c << "  (upper bound for smc = bsc)\n";
    for (auto& r : sd.regions)
        std::cout << "  " << r.region << ": 2g = " << r.g2 << ", k = " << r.k << ", sl = " << numstr(r.sl) << "\n";
    std::cout << "sl(P) = " << numstr(v.sl_min) << "\n";
    std::cout << "vol window: " << (v.lower ? numstr(*v.lower) : std::string("undefined")) << " <= vol < " << numstr(v.upper_strict) << "\n";
    std::cout << "certificate sl(P) > 2pi sqrt(2c): " << (v.certificate ? "yes, sc = bsc = smc = c(P)" : "no") << "\n";
    return 0;
}

int cmd_census(const std::string& model, bool towers, bool as_json)
{
    CensusResult r = classify_model(model, towers);
    if (as_json) {
        json pats = json::array();
        for (auto& p : r.patterns)
            pats.push_back({{"disks", p.pattern.disks},
                            {"towers", p.pattern.towers},
                            {"verdict", triviality_name(p.verdict.verdict)},
                            {"h1", p.verdict.h1.str()},
                            {"presentation", p.presentation}});
        json j{{"model", r.model}, {"towers", towers}, {"patterns", pats}, {"simply_connected", r.simply_connected()}, {"unknown", r.unknown_count()}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (auto& p : r.patterns)
        std::cout << p.pattern.str() << "  " << triviality_name(p.verdict.verdict) << "  H1 = " << p.verdict.h1.str() << "\n";
    std::cout << "simply connected:";
    for (auto& s : r.simply_connected()) {
        std::cout << " {";
        for (size_t i = 0; i < s.size(); ++i)
            std::cout << (i ? "," : "") << s[i];
        std::cout << "}";
    }
    std::cout << "\n";
    return 0;
}

int cmd_branch_search(const std::string& file, bool all, int cap, bool as_json)
{
    Shadow S = read_shadow(file);
    if (!validate(S.poly).valid)
        throw InputFailure{"polyhedron is not valid"};
    std::vector<Branching> found;
    if (all)
        found = enumerate_branchings(S.poly, static_cast<size_t>(cap));
    else if (auto b = find_branching(S.poly))
        found.push_back(*b);
    if (as_json) {
        json list = json::array();
        for (auto& b : found) {
            json o = json::object();
            for (auto& [r, s] : b.sign)
                o[r] = s > 0 ? "+" : "-";
            list.push_back(o);
        }
        std::cout << json{{"name", S.poly.name}, {"count", found.size()}, {"branchings", list}}.dump(2) << "\n";
    } else {
        std::cout << S.poly.name << ": " << found.size() << (all ? " branchings" : " branching found") << "\n";
        for (auto& b : found)
            std::cout << serialize_branching(b) << (all ? "--\n" : "");
    }
    return found.empty() ? 1 : 0;
}

int cmd_surgery_bound(const std::string& file, bool as_json)
{
    LinkDiagram D = read_diagram(file);
    int c = surgery_presentation_bound(D);
    if (as_json)
        std::cout << json{{"crossings", D.crossing_count()}, {"c", c}, {"bound", std::max(0, D.crossing_count() - 2)}}.dump(2) << "\n";
    else
        std::cout << "c(P) = " << c << " <= cr - 2 = " << D.crossing_count() - 2 << ": smc of every surgery on this link is at most " << c << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"shadowcalc: branched shadows, complexity and volume bounds"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "JSON on stdout");

    std::string file, script, out, model;
    bool towers = false, all = false;
    int cap = 24;
    auto* v = app.add_subcommand("validate", "check an ASP polyhedron");
    v->add_option("file", file)->required();
    auto* sl = app.add_subcommand("shadow-from-link", "shadow of a PD code or braid");
    sl->add_option("file", file)->required();
    sl->add_option("--surgery", script, "surgery script applied to the mapping-cylinder shadow");
    sl->add_option("-o,--out", out, "write the ASP file here");
    auto* vol = app.add_subcommand("volume", "slope lengths and the volume window of a special polyhedron");
    vol->add_option("file", file)->required();
    auto* cen = app.add_subcommand("census", "capping census of a one-vertex model");
    cen->add_option("model", model)->required();
    cen->add_flag("--towers", towers);
    auto* bs = app.add_subcommand("branch-search", "find or enumerate branchings");
    bs->add_option("file", file)->required();
    bs->add_flag("--all", all);
    bs->add_option("--cap", cap, "region cap for --all");
    auto* sb = app.add_subcommand("surgery-bound", "c(P) of the link shadow, a bound for every surgery");
    sb->add_option("file", file)->required();
    for (auto* s : {v, sl, vol, cen, bs, sb})
        s->add_flag("--json", as_json, "JSON on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*v)
            return cmd_validate(file, as_json);
        if (*sl)
            return cmd_shadow_from_link(file, script, out, as_json);
        if (*vol)
            return cmd_volume(file, as_json);
        if (*cen)
            return cmd_census(model, towers, as_json);
        if (*bs)
            return cmd_branch_search(file, all, cap, as_json);
        if (*sb)
            return cmd_surgery_bound(file, as_json);
    } catch (const InputFailure& e) {
        std::cerr << "error: " << e.msg << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error(e.code()) ? 2 : 1;
    }
    return 1;
}
