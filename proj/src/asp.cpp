#include "shadow/asp.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace shadow {

namespace {

struct Token {
    std::string text;
    int col;
};

std::vector<Token> tokenize(const std::string& line)
{
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        if (i >= line.size())
            break;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t')
            ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

struct Ref {
    std::string id;
    int line, col;
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    AspDocument run()
    {
        std::istringstream in(text_);
        std::string raw;
        int lineno = 0;
        Region* current = nullptr;
        while (std::getline(in, raw)) {
            ++lineno;
            if (!raw.empty() && raw.back() == '\r')
                raw.pop_back();
            auto hash = raw.find('#');
            std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
            auto toks = tokenize(line);
            if (toks.empty())
                continue;
            line_ = lineno;
            bool indented = line[0] == ' ' || line[0] == '\t';
            const std::string& kw = toks[0].text;
            if (kw == "walk") {
                if (!indented || !current)
                    fail(toks[0], "walk line must be indented under a region");
                parse_walk(toks, *current);
                continue;
            }
            if (indented)
                fail(toks[0], "unexpected indentation");
            current = nullptr;
            if (kw == "polyhedron") {
                if (have_name_)
                    fail(toks[0], "second polyhedron header");
                expect_count(toks, 2, 2);
                doc_.poly.name = toks[1].text;
                have_name_ = true;
            } else if (kw == "vertex") {
                expect_count(toks, 3, 3);
                Node n;
                n.id = declare(toks[1]);
                if (toks[2].text == "true")
                    n.kind = NodeKind::True;
                else if (toks[2].text == "bv")
                    n.kind = NodeKind::Boundary;
                else
                    fail(toks[2], "expected 'true' or 'bv'");
                doc_.poly.nodes.push_back(n);
            } else if (kw == "edge") {
                expect_count(toks, 4, 5);
                Edge e;
                e.id = declare(toks[1]);
                if (toks[2].text != "-") {
                    e.from = toks[2].text;
                    node_refs_.push_back({e.from, line_, toks[2].col});
                }
                if (toks[3].text != "-") {
                    e.to = toks[3].text;
                    node_refs_.push_back({e.to, line_, toks[3].col});
                }
                if (toks.size() == 5) {
                    if (toks[4].text != "flip")
                        fail(toks[4], "expected 'flip'");
                    if (!e.is_circle())
                        fail(toks[4], "only circle edges may carry flip monodromy");
                    e.flip = true;
                }
                doc_.poly.edges.push_back(e);
            } else if (kw == "region") {
                parse_region(toks);
                current = &doc_.poly.regions.back();
            } else if (kw == "bcircle") {
                parse_bcircle(toks);
            } else if (kw == "branching") {
                expect_count(toks, 3, 3);
                if (!doc_.branching)
                    doc_.branching = Branching{};
                int s = 0;
                if (toks[2].text == "+")
                    s = 1;
                else if (toks[2].text == "-")
                    s = -1;
                else
                    fail(toks[2], "expected + or -");
                if (doc_.branching->sign.count(toks[1].text))
                    fail(toks[1], "duplicate branching entry for " + toks[1].text);
                doc_.branching->sign[toks[1].text] = s;
                region_refs_.push_back({toks[1].text, line_, toks[1].col});
            } else {
                fail(toks[0], "unknown directive '" + kw + "'");
            }
        }
        if (!have_name_)
            throw Error(ErrorCode::Syntax, "1:1: missing 'polyhedron <name>' header");
        resolve();
        return std::move(doc_);
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) { fail_at(line_, t.col, msg); }
    [[noreturn]] void fail_at(int line, int col, const std::string& msg, ErrorCode c = ErrorCode::Syntax)
    {
        throw Error(c, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

    void expect_count(const std::vector<Token>& t, size_t lo, size_t hi)
    {
        if (t.size() < lo)
            fail_at(line_, t.back().col + static_cast<int>(t.back().text.size()), "missing field after '" + t.back().text + "'");
        if (t.size() > hi)
            fail(t[hi], "unexpected token '" + t[hi].text + "'");
    }

    std::string declare(const Token& t)
    {
        if (t.text == "-")
            fail(t, "'-' is not a valid id");
        if (!ids_.insert(t.text).second)
            fail_at(line_, t.col, "duplicate id '" + t.text + "'", ErrorCode::DuplicateId);
        return t.text;
    }

    void parse_region(const std::vector<Token>& t)
    {
        // region <id> genus <n> [nonor] gleam <g>|none
        if (t.size() < 6)
            expect_count(t, 6, 7);
        Region r;
        r.id = declare(t[1]);
        if (t[2].text != "genus")
            fail(t[2], "expected 'genus'");
        try {
            size_t pos = 0;
            r.genus = std::stoi(t[3].text, &pos);
            if (pos != t[3].text.size() || r.genus < 0)
                throw 0;
        } catch (...) {
            fail(t[3], "bad genus '" + t[3].text + "'");
        }
        size_t k = 4;
        if (t[k].text == "nonor") {
            r.orientable = false;
            ++k;
        }
        if (k >= t.size() || t[k].text != "gleam")
            fail(k < t.size() ? t[k] : t.back(), "expected 'gleam'");
        ++k;
        if (k >= t.size())
            fail(t.back(), "missing gleam value");
        if (t[k].text != "none") {
            if (t[k].text.find('/') == std::string::npos)
                fail(t[k], "gleam must be written <int>/2 or none");
            try {
                r.gleam = HalfInteger::parse(t[k].text);
            } catch (const Error&) {
                fail(t[k], "bad gleam '" + t[k].text + "'");
            }
        }
        ++k;
        if (k < t.size())
            fail(t[k], "unexpected token '" + t[k].text + "'");
        if (!r.orientable && r.genus < 1)
            fail(t[3], "non-orientable region needs genus >= 1");
        doc_.poly.regions.push_back(r);
    }

    void parse_walk(const std::vector<Token>& t, Region& r)
    {
        if (t.size() < 4 || (t.size() - 1) % 3 != 0)
            fail(t.back(), "walk needs (<edge> <+|-> <slot>) triples");
        Walk w;
        for (size_t i = 1; i < t.size(); i += 3) {
            Step s;
            s.edge = t[i].text;
            edge_refs_.push_back({s.edge, line_, t[i].col});
            if (t[i + 1].text == "+")
                s.dir = 1;
            else if (t[i + 1].text == "-")
                s.dir = -1;
            else
                fail(t[i + 1], "expected + or -");
            if (t[i + 2].text == "0" || t[i + 2].text == "1" || t[i + 2].text == "2")
                s.slot = t[i + 2].text[0] - '0';
            else
                fail(t[i + 2], "slot must be 0, 1 or 2");
            w.push_back(s);
        }
        r.walks.push_back(std::move(w));
    }

    void parse_bcircle(const std::vector<Token>& t)
    {
        // bcircle <id> color i|e|f region <id|-> [bv <ids...>]
        if (t.size() < 6)
            expect_count(t, 6, 6);
        BoundaryCircle c;
        c.id = declare(t[1]);
        if (t[2].text != "color")
            fail(t[2], "expected 'color'");
        if (t[3].text.size() != 1 || std::string("ief").find(t[3].text[0]) == std::string::npos)
            fail(t[3], "color must be i, e or f");
        c.color = color_from_char(t[3].text[0]);
        if (t[4].text != "region")
            fail(t[4], "expected 'region'");
        if (t[5].text != "-") {
            c.region = t[5].text;
            region_refs_.push_back({c.region, line_, t[5].col});
        }
        if (t.size() > 6) {
            if (t[6].text != "bv")
                fail(t[6], "expected 'bv'");
            if (t.size() == 7)
                fail(t[6], "empty bv list");
            for (size_t i = 7; i < t.size(); ++i) {
                c.bvs.push_back(t[i].text);
                bv_refs_.push_back({t[i].text, line_, t[i].col});
            }
            if (!c.region.empty())
                fail(t[5], "a circle through boundary vertices takes region '-'");
        } else if (c.region.empty()) {
            fail(t[5], "plain boundary circle needs a region");
        }
        doc_.poly.boundary.push_back(c);
    }

    void resolve()
    {
        auto& P = doc_.poly;
        for (auto& r : node_refs_)
            if (!P.node(r.id))
                fail_at(r.line, r.col, "undeclared vertex '" + r.id + "'", ErrorCode::UndeclaredId);
        for (auto& r : edge_refs_)
            if (!P.edge(r.id))
                fail_at(r.line, r.col, "undeclared edge '" + r.id + "'", ErrorCode::UndeclaredId);
        for (auto& r : region_refs_)
            if (!P.region(r.id))
                fail_at(r.line, r.col, "undeclared region '" + r.id + "'", ErrorCode::UndeclaredId);
        for (auto& r : bv_refs_) {
            auto* n = P.node(r.id);
            if (!n)
                fail_at(r.line, r.col, "undeclared vertex '" + r.id + "'", ErrorCode::UndeclaredId);
            if (n->kind != NodeKind::Boundary)
                fail_at(r.line, r.col, "'" + r.id + "' is not a boundary vertex", ErrorCode::InvalidInput);
        }
        std::map<std::string, int> degree;
        for (auto& e : P.edges) {
            if (!e.from.empty())
                ++degree[e.from];
            if (!e.to.empty())
                ++degree[e.to];
        }
        for (auto& n : P.nodes) {
            int d = degree[n.id];
            int want = n.kind == NodeKind::True ? 4 : 1;
            if (d != want)
                throw Error(ErrorCode::IllegalDegree, (n.kind == NodeKind::True ? "true vertex '" : "boundary vertex '") + n.id +
                                                          "' has " + std::to_string(d) + " edge endpoints, expected " +
                                                          std::to_string(want));
        }
    }

    const std::string& text_;
    AspDocument doc_;
    bool have_name_ = false;
    int line_ = 0;
    std::set<std::string> ids_;
    std::vector<Ref> node_refs_, edge_refs_, region_refs_, bv_refs_;
};

template <class T>
std::vector<const T*> sorted_by_id(const std::vector<T>& v)
{
    std::vector<const T*> out;
    for (auto& x : v)
        out.push_back(&x);
    std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return natural_less(a->id, b->id); });
    return out;
}

}  // namespace

AspDocument parse_asp(const std::string& text) { return Parser(text).run(); }

Polyhedron parse_polyhedron(const std::string& text) { return parse_asp(text).poly; }

AspDocument load_asp(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_asp(ss.str());
}

std::string serialize_branching(const Branching& b)
{
    std::vector<std::string> keys;
    for (auto& [k, v] : b.sign)
        keys.push_back(k);
    std::sort(keys.begin(), keys.end(), NaturalLess{});
    std::string out;
    for (auto& k : keys)
        out += "branching " + k + (b.sign.at(k) > 0 ? " +\n" : " -\n");
    return out;
}

std::string serialize_polyhedron(const Polyhedron& P)
{
    std::ostringstream o;
    o << "polyhedron " << P.name << "\n";
    for (auto* n : sorted_by_id(P.nodes))
        o << "vertex " << n->id << (n->kind == NodeKind::True ? " true" : " bv") << "\n";
    for (auto* e : sorted_by_id(P.edges)) {
        o << "edge " << e->id << " " << (e->from.empty() ? "-" : e->from) << " " << (e->to.empty() ? "-" : e->to);
        if (e->flip)
            o << " flip";
        o << "\n";
    }
    for (auto* r : sorted_by_id(P.regions)) {
        o << "region " << r->id << " genus " << r->genus;
        if (!r->orientable)
            o << " nonor";
        o << " gleam " << (r->gleam ? r->gleam->asp_str() : "none") << "\n";
        for (auto& w : r->walks) {
            o << "  walk";
            for (auto& s : w)
                o << " " << s.edge << (s.dir > 0 ? " + " : " - ") << s.slot;
            o << "\n";
        }
    }
    for (auto* c : sorted_by_id(P.boundary)) {
        o << "bcircle " << c->id << " color " << color_char(c->color) << " region " << (c->region.empty() ? "-" : c->region);
        if (!c->bvs.empty()) {
            o << " bv";
            for (auto& b : c->bvs)
                o << " " << b;
        }
        o << "\n";
    }
    return o.str();
}

std::string serialize_asp(const Polyhedron& P, const std::optional<Branching>& b)
{
    std::string s = serialize_polyhedron(P);
    if (b)
        s += serialize_branching(*b);
    return s;
}

CanonicalForm canonical_form(const Polyhedron& P)
{
    CanonicalForm cf;
    auto& ren = cf.rename;

    // incidence: node -> sorted list of edge ids
    std::map<std::string, std::vector<std::string>, NaturalLess> inc;
    for (auto& n : P.nodes)
        inc[n.id];
    for (auto& e : P.edges) {
        if (!e.from.empty())
            inc[e.from].push_back(e.id);
        if (!e.to.empty() && e.to != e.from)
            inc[e.to].push_back(e.id);
    }
    for (auto& [k, v] : inc)
        std::sort(v.begin(), v.end(), NaturalLess{});

    std::vector<std::string> node_order, edge_order;
    std::set<std::string> seen_node, seen_edge;
    for (auto& [start, unused] : inc) {
        if (seen_node.count(start))
            continue;
        std::deque<std::string> q{start};
        seen_node.insert(start);
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            node_order.push_back(u);
            for (auto& eid : inc[u]) {
                if (seen_edge.insert(eid).second)
                    edge_order.push_back(eid);
                auto* e = P.edge(eid);
                for (auto& w : {e->from, e->to})
                    if (!w.empty() && seen_node.insert(w).second)
                        q.push_back(w);
            }
        }
    }
    for (auto* e : sorted_by_id(P.edges))
        if (seen_edge.insert(e->id).second)
            edge_order.push_back(e->id);

    for (size_t i = 0; i < node_order.size(); ++i)
        ren[node_order[i]] = "v" + std::to_string(i + 1);
    for (size_t i = 0; i < edge_order.size(); ++i)
        ren[edge_order[i]] = "e" + std::to_string(i + 1);

    // regions by first occupied (edge, slot)
    std::map<std::pair<std::string, int>, std::string> occupant;
    for (auto& r : P.regions)
        for (auto& w : r.walks)
            for (auto& s : w)
                occupant.emplace(std::make_pair(s.edge, s.slot), r.id);
    std::vector<std::string> region_order;
    std::set<std::string> seen_region;
    for (auto& eid : edge_order)
        for (int s = 0; s < 3; ++s) {
            auto it = occupant.find({eid, s});
            if (it != occupant.end() && seen_region.insert(it->second).second)
                region_order.push_back(it->second);
        }
    for (auto* r : sorted_by_id(P.regions))
        if (seen_region.insert(r->id).second)
            region_order.push_back(r->id);
    std::map<std::string, size_t> region_index;
    for (size_t i = 0; i < region_order.size(); ++i) {
        ren[region_order[i]] = "r" + std::to_string(i + 1);
        region_index[region_order[i]] = i;
    }
    std::map<std::string, size_t> node_index;
    for (size_t i = 0; i < node_order.size(); ++i)
        node_index[node_order[i]] = i;

    std::vector<const BoundaryCircle*> circles;
    for (auto& c : P.boundary)
        circles.push_back(&c);
    auto circle_key = [&](const BoundaryCircle* c) {
        if (c->plain())
            return std::make_pair(size_t(0), region_index[c->region]);
        size_t m = SIZE_MAX;
        for (auto& b : c->bvs)
            m = std::min(m, node_index[b]);
        return std::make_pair(size_t(1), m);
    };
    std::stable_sort(circles.begin(), circles.end(), [&](const BoundaryCircle* a, const BoundaryCircle* b) {
        auto ka = circle_key(a), kb = circle_key(b);
        if (ka != kb)
            return ka < kb;
        return natural_less(a->id, b->id);
    });
    for (size_t i = 0; i < circles.size(); ++i)
        ren[circles[i]->id] = "l" + std::to_string(i + 1);

    std::map<std::string, size_t> edge_index;
    for (size_t i = 0; i < edge_order.size(); ++i)
        edge_index[edge_order[i]] = i;

    Polyhedron& Q = cf.poly;
    Q.name = P.name;
    for (auto& id : node_order)
        Q.nodes.push_back({ren[id], P.node(id)->kind});
    for (auto& id : edge_order) {
        Edge e = *P.edge(id);
        e.id = ren[id];
        if (!e.from.empty())
            e.from = ren[e.from];
        if (!e.to.empty())
            e.to = ren[e.to];
        Q.edges.push_back(e);
    }
    auto step_key = [&](const Step& s) { return std::make_tuple(edge_index[s.edge], s.slot, -s.dir); };
    for (auto& id : region_order) {
        Region r = *P.region(id);
        r.id = ren[id];
        for (auto& w : r.walks) {
            // rotate to the lexicographically smallest rotation
            size_t best = 0;
            auto key_at = [&](size_t start) {
                std::vector<std::tuple<size_t, int, int>> k;
                for (size_t i = 0; i < w.size(); ++i)
                    k.push_back(step_key(w[(start + i) % w.size()]));
                return k;
            };
            auto bestk = key_at(0);
            for (size_t st = 1; st < w.size(); ++st) {
                auto k = key_at(st);
                if (k < bestk) {
                    bestk = k;
                    best = st;
                }
            }
            std::rotate(w.begin(), w.begin() + static_cast<long>(best), w.end());
        }
        std::sort(r.walks.begin(), r.walks.end(), [&](const Walk& a, const Walk& b) {
            if (a.empty() || b.empty())
                return a.size() < b.size();
            return step_key(a[0]) < step_key(b[0]);
        });
        for (auto& w : r.walks)
            for (auto& s : w)
                s.edge = ren[s.edge];
        Q.regions.push_back(r);
    }
    for (auto* c0 : circles) {
        BoundaryCircle c = *c0;
        c.id = ren[c.id];
        if (!c.region.empty())
            c.region = ren[c.region];
        for (auto& b : c.bvs)
            b = ren[b];
        std::sort(c.bvs.begin(), c.bvs.end(), NaturalLess{});
        Q.boundary.push_back(c);
    }
    return cf;
}

Polyhedron canonicalize(const Polyhedron& P) { return canonical_form(P).poly; }

Branching rename_branching(const Branching& b, const std::map<std::string, std::string>& rename)
{
    Branching out;
    for (auto& [k, v] : b.sign) {
        auto it = rename.find(k);
        out.sign[it == rename.end() ? k : it->second] = v;
    }
    return out;
}

}  // namespace shadow
