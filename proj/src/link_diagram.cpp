#include "shadow/link_diagram.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "shadow/polyhedron.hpp"

namespace shadow {

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorCode::MalformedCode, msg); }

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::optional<int> LinkDiagram::outer_face() const
{
    if (!outer_anchor || round_unknot)
        return std::nullopt;
    return face_of_sector[outer_anchor->first][outer_anchor->second];
}

Dart LinkDiagram::across(Dart d) const
{
    int label = X[d.crossing][d.pos];
    const Dart& t = tail.at(label);
    return t == d ? head.at(label) : t;
}

LinkDiagram build_diagram(std::vector<std::array<int, 4>> X, std::vector<int> over_in)
{
    LinkDiagram D;
    if (X.empty()) {
        D.round_unknot = true;
        return D;
    }
    const int n = static_cast<int>(X.size());
    over_in.resize(n, 0);
    std::map<int, std::vector<Dart>> occ;
    for (int x = 0; x < n; ++x)
        for (int p = 0; p < 4; ++p)
            occ[X[x][p]].push_back({x, p});
    for (auto& [label, v] : occ)
        if (v.size() != 2)
            malformed("label " + std::to_string(label) + " occurs " + std::to_string(v.size()) + " times");
    for (int x = 0; x < n; ++x)
        if (over_in[x] != 0 && over_in[x] != 1 && over_in[x] != 3)
            malformed("bad over-strand position");

    // -1 unknown, 0 incoming, 1 outgoing
    auto state = [&](Dart d) -> int {
        if (d.pos == 0)
            return 0;
        if (d.pos == 2)
            return 1;
        if (over_in[d.crossing] == 0)
            return -1;
        return d.pos == over_in[d.crossing] ? 0 : 1;
    };
    for (;;) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [label, v] : occ) {
                int s0 = state(v[0]), s1 = state(v[1]);
                if (s0 >= 0 && s1 >= 0) {
                    if (s0 == s1)
                        malformed("label " + std::to_string(label) + " is " + (s0 ? "outgoing" : "incoming") + " at both ends");
                    continue;
                }
                if (s0 < 0 && s1 < 0)
                    continue;
                Dart u = s0 < 0 ? v[0] : v[1];
                int want = s0 < 0 ? 1 - s1 : 1 - s0;
                over_in[u.crossing] = want == 0 ? u.pos : (u.pos + 2) % 4;
                changed = true;
            }
        }
        int x = -1;
        for (int i = 0; i < n && x < 0; ++i)
            if (over_in[i] == 0)
                x = i;
        if (x < 0)
            break;
        // component running over at every crossing: label-increment convention
        int j = X[x][1], l = X[x][3];
        over_in[x] = (j == l + 1 || l - j > 1) ? 3 : 1;
    }

    D.X = X;
    D.over_in = over_in;
    D.sign.resize(n);
    for (int x = 0; x < n; ++x)
        D.sign[x] = over_in[x] == 3 ? 1 : -1;
    for (auto& [label, v] : occ) {
        bool first_out = D.outgoing(v[0].crossing, v[0].pos);
        D.tail[label] = first_out ? v[0] : v[1];
        D.head[label] = first_out ? v[1] : v[0];
    }

    D.face_of_dart.assign(n, {-1, -1, -1, -1});
    D.face_of_sector.assign(n, {-1, -1, -1, -1});
    for (int x = 0; x < n; ++x)
        for (int p = 0; p < 4; ++p) {
            if (D.face_of_dart[x][p] >= 0)
                continue;
            int f = static_cast<int>(D.faces.size());
            D.faces.emplace_back();
            Dart d{x, p};
            do {
                D.face_of_dart[d.crossing][d.pos] = f;
                D.faces[f].push_back(d);
                Dart a = D.across(d);
                int sector = (a.pos + 3) % 4;
                D.face_of_sector[a.crossing][sector] = f;
                d = {a.crossing, sector};
            } while (!(d == Dart{x, p}));
        }
    if (static_cast<int>(D.faces.size()) != n + 2)
        throw Error(ErrorCode::NonPlanar, std::to_string(D.faces.size()) + " faces for " + std::to_string(n) +
                                              " crossings, a connected diagram on the sphere has " + std::to_string(n + 2));

    std::set<int> seen;
    for (auto& [label, v] : occ) {
        if (seen.count(label))
            continue;
        std::vector<int> comp;
        int cur = label;
        while (!seen.count(cur)) {
            seen.insert(cur);
            comp.push_back(cur);
            Dart h = D.head.at(cur);
            cur = D.X[h.crossing][(h.pos + 2) % 4];
        }
        D.components.push_back(comp);
    }
    return D;
}

LinkDiagram parse_pd(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.rfind("PD[", 0) != 0 || s.back() != ']')
        malformed("expected PD[...]");
    std::string body = s.substr(3, s.size() - 4);
    std::vector<std::array<int, 4>> X;
    size_t i = 0;
    while (i < body.size()) {
        if (body[i] != 'X' || i + 1 >= body.size() || (body[i + 1] != '(' && body[i + 1] != '['))
            malformed("expected X( at offset " + std::to_string(i));
        char close = body[i + 1] == '(' ? ')' : ']';
        size_t j = body.find(close, i + 2);
        if (j == std::string::npos)
            malformed("unterminated crossing");
        std::string inner = body.substr(i + 2, j - i - 2);
        std::array<int, 4> q{};
        std::stringstream ss(inner);
        std::string tok;
        int k = 0;
        while (std::getline(ss, tok, ',')) {
            if (k >= 4)
                malformed("crossing with more than 4 labels: " + inner);
            try {
                size_t pos = 0;
                q[k] = std::stoi(tok, &pos);
                if (pos != tok.size())
                    throw 0;
            } catch (...) {
                malformed("bad label '" + tok + "'");
            }
            ++k;
        }
        if (k != 4)
            malformed("crossing needs 4 labels: " + inner);
        X.push_back(q);
        i = j + 1;
        if (i < body.size()) {
            if (body[i] != ',')
                malformed("expected ',' between crossings");
            ++i;
        }
    }
    return build_diagram(X, {});
}

LinkDiagram braid_diagram(int strands, const std::string& word)
{
    if (strands < 1)
        malformed("braid needs at least one strand");
    if (word.empty()) {
        if (strands != 1)
            malformed("empty braid on several strands is a split link");
        return build_diagram({}, {});
    }
    int next = 1;
    std::vector<int> bottom(strands), cur(strands);
    for (int i = 0; i < strands; ++i)
        bottom[i] = cur[i] = next++;
    std::vector<std::array<int, 4>> X;
    std::vector<int> over;
    std::optional<std::pair<int, int>> anchor;
    for (char ch : word) {
        if (!std::isalpha(static_cast<unsigned char>(ch)))
            malformed(std::string("bad braid letter '") + ch + "'");
        int i = std::tolower(static_cast<unsigned char>(ch)) - 'a';
        if (i + 1 >= strands)
            malformed(std::string("generator '") + ch + "' needs more strands");
        bool pos = std::islower(static_cast<unsigned char>(ch));
        int BL = cur[i], BR = cur[i + 1], TL = next++, TR = next++;
        if (pos) {
            X.push_back({BR, TR, TL, BL});
            over.push_back(3);
        } else {
            X.push_back({BL, BR, TR, TL});
            over.push_back(1);
        }
        if (i == 0 && !anchor)
            anchor = std::make_pair(static_cast<int>(X.size()) - 1, pos ? 2 : 3);
        cur[i] = TL;
        cur[i + 1] = TR;
    }
    std::map<int, int> rename;
    for (int i = 0; i < strands; ++i) {
        if (cur[i] == bottom[i])
            malformed("strand " + std::to_string(i + 1) + " meets no crossing; split links are not supported");
        rename[cur[i]] = bottom[i];
    }
    for (auto& q : X)
        for (auto& l : q)
            if (rename.count(l))
                l = rename[l];
    // compact labels 1..2n in order of appearance
    std::map<int, int> compact;
    for (auto& q : X)
        for (auto& l : q)
            if (!compact.count(l))
                compact[l] = static_cast<int>(compact.size()) + 1;
    for (auto& q : X)
        for (auto& l : q)
            l = compact[l];
    LinkDiagram D = build_diagram(X, over);
    D.outer_anchor = anchor;
    return D;
}

LinkDiagram parse_braid(const std::string& text)
{
    std::istringstream in(text);
    std::string kw;
    int n = 0;
    in >> kw >> n;
    if (kw != "braid" || !in)
        malformed("expected: braid <strands> \"<word>\"");
    std::string rest;
    std::getline(in, rest);
    auto a = rest.find('"'), b = rest.rfind('"');
    if (a == std::string::npos || b == a)
        malformed("braid word must be quoted");
    for (size_t i = b + 1; i < rest.size(); ++i)
        if (!std::isspace(static_cast<unsigned char>(rest[i])))
            malformed("trailing text after braid word");
    return braid_diagram(n, rest.substr(a + 1, b - a - 1));
}

LinkDiagram parse_diagram(const std::string& text)
{
    std::string body;
    std::istringstream in(text);
    std::string line;
    std::optional<std::pair<int, int>> outer;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos)
            line = line.substr(0, h);
        std::istringstream ls(line);
        std::string kw;
        if (ls >> kw && kw == "outer") {
            // outer <crossing> <sector>: the face containing that sector is the outer one
            int x = 0, sec = -1;
            std::string extra;
            if (!(ls >> x >> sec) || (ls >> extra) || x < 1 || sec < 0 || sec > 3)
                malformed("expected: outer <crossing> <sector 0-3>");
            outer = std::make_pair(x - 1, sec);
            continue;
        }
        body += line + "\n";
    }
    size_t i = body.find_first_not_of(" \t\r\n");
    if (i == std::string::npos)
        malformed("empty diagram");
    LinkDiagram D = body.compare(i, 5, "braid") == 0 ? parse_braid(body.substr(i)) : parse_pd(body);
    if (outer) {
        if (outer->first >= D.crossing_count())
            malformed("outer crossing out of range");
        D.outer_anchor = outer;
    }
    return D;
}

LinkDiagram load_diagram(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_diagram(ss.str());
}

LinkDiagram reversed(const LinkDiagram& D)
{
    if (D.round_unknot)
        return D;
    std::vector<std::array<int, 4>> X;
    for (auto& q : D.X)
        X.push_back({q[2], q[3], q[0], q[1]});
    LinkDiagram R = build_diagram(X, D.over_in);
    if (D.outer_anchor)
        R.outer_anchor = std::make_pair(D.outer_anchor->first, (D.outer_anchor->second + 2) % 4);
    return R;
}

LinkDiagram with_outer_face(const LinkDiagram& D, int face)
{
    LinkDiagram R = D;
    for (int x = 0; x < D.crossing_count(); ++x)
        for (int s = 0; s < 4; ++s)
            if (D.face_of_sector[x][s] == face) {
                R.outer_anchor = std::make_pair(x, s);
                return R;
            }
    throw Error(ErrorCode::UnknownId, "no face " + std::to_string(face));
}

SeifertCircleSet seifert_circles(const LinkDiagram& D)
{
    SeifertCircleSet S;
    if (D.round_unknot) {
        S.circles.push_back({});
        return S;
    }
    std::set<int> seen;
    for (auto& [label, t] : D.tail) {
        if (seen.count(label))
            continue;
        std::vector<int> circle;
        int cur = label;
        while (!seen.count(cur)) {
            seen.insert(cur);
            circle.push_back(cur);
            Dart h = D.head.at(cur);
            int a = (h.pos + 1) % 4, b = (h.pos + 3) % 4;
            int out = D.outgoing(h.crossing, a) ? a : b;
            cur = D.X[h.crossing][out];
        }
        S.circles.push_back(circle);
    }
    return S;
}

SeifertRegions seifert_regions(const LinkDiagram& D)
{
    SeifertRegions R;
    if (D.round_unknot) {
        R.region_of_face = {0, 1};
        R.disk = {true, true};
        return R;
    }
    int F = D.face_count();
    UnionFind uf(F);
    for (int x = 0; x < D.crossing_count(); ++x)
        for (int s = 0; s < 4; ++s)
            if (D.outgoing(x, s) == D.outgoing(x, (s + 1) % 4))
                for (int t = s + 1; t < 4; ++t)
                    if (D.outgoing(x, t) == D.outgoing(x, (t + 1) % 4))
                        uf.join(D.face_of_sector[x][s], D.face_of_sector[x][t]);
    std::map<int, int> circle_of;
    auto S = seifert_circles(D);
    for (size_t c = 0; c < S.circles.size(); ++c)
        for (int l : S.circles[c])
            circle_of[l] = static_cast<int>(c);
    std::map<int, int> compact;
    R.region_of_face.resize(F);
    for (int f = 0; f < F; ++f) {
        int root = uf.find(f);
        if (!compact.count(root))
            compact[root] = static_cast<int>(compact.size());
        R.region_of_face[f] = compact[root];
    }
    std::vector<std::set<int>> bounding(compact.size());
    for (int f = 0; f < F; ++f)
        for (auto& d : D.faces[f])
            bounding[R.region_of_face[f]].insert(circle_of[D.X[d.crossing][d.pos]]);
    for (auto& b : bounding)
        R.disk.push_back(b.size() == 1);
    return R;
}

int face_crossings(const LinkDiagram& D, int face)
{
    std::set<int> xs;
    for (auto& d : D.faces[face])
        xs.insert(d.crossing);
    return static_cast<int>(xs.size());
}

AdmissibilityReport is_admissible(const LinkDiagram& D)
{
    AdmissibilityReport rep;
    if (D.round_unknot) {
        rep.admissible = true;
        return rep;
    }
    auto f = D.outer_face();
    if (!f) {
        rep.reasons.push_back("no distinguished outer face");
        return rep;
    }
    std::map<int, int> visits;
    for (auto& d : D.faces[*f])
        ++visits[d.crossing];
    for (auto& [x, k] : visits)
        if (k > 1)
            rep.reasons.push_back("outer region is not an annulus: its boundary meets crossing " + std::to_string(x + 1) + " " +
                                  std::to_string(k) + " times");
    for (auto& d : D.faces[*f])
        if (D.outgoing(d.crossing, d.pos))
            rep.reasons.push_back("label " + std::to_string(D.X[d.crossing][d.pos]) +
                                  ": outer region and wall induce opposite orientations");
    rep.admissible = rep.reasons.empty();
    return rep;
}

AdmissibleDiagram make_admissible(const LinkDiagram& D)
{
    if (D.round_unknot)
        return {D, false};
    std::vector<int> cand;
    if (auto f = D.outer_face())
        cand.push_back(*f);
    auto SR = seifert_regions(D);
    std::vector<int> rest;
    for (int f = 0; f < D.face_count(); ++f)
        if (SR.disk[SR.region_of_face[f]])
            rest.push_back(f);
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) { return face_crossings(D, a) > face_crossings(D, b); });
    cand.insert(cand.end(), rest.begin(), rest.end());
    for (int f : cand)
        for (bool rev : {false, true}) {
            LinkDiagram E = with_outer_face(D, f);
            if (rev)
                E = reversed(E);
            if (is_admissible(E).admissible)
                return {E, rev};
        }
    throw Error(ErrorCode::NotAchievable, "no Seifert disk face gives an admissible diagram");
}

}  // namespace shadow
