#include "shadow/group.hpp"

#include <algorithm>
#include <functional>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

#include "shadow/invariants.hpp"

namespace shadow {

Word free_reduce(const Word& w)
{
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word cyclic_reduce(const Word& w)
{
    Word r = free_reduce(w);
    size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) {
        ++i;
        --j;
    }
    return Word(r.begin() + i, r.begin() + j);
}

Word inverse(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (int& x : out)
        x = -x;
    return out;
}

std::string word_str(const GroupPresentation& G, const Word& w)
{
    if (w.empty())
        return "1";
    std::string s;
    for (size_t i = 0; i < w.size();) {
        int x = w[i];
        size_t j = i;
        while (j < w.size() && w[j] == x)
            ++j;
        int g = std::abs(x) - 1;
        std::string name = g < static_cast<int>(G.names.size()) ? G.names[g] : "g" + std::to_string(g + 1);
        if (!s.empty())
            s += " ";
        s += name;
        long long e = static_cast<long long>(j - i) * (x > 0 ? 1 : -1);
        if (e != 1)
            s += "^" + std::to_string(e);
        i = j;
    }
    return s;
}

std::string presentation_str(const GroupPresentation& G)
{
    std::string s = "<";
    for (int g = 0; g < G.generators; ++g)
        s += (g ? ", " : "") + (g < static_cast<int>(G.names.size()) ? G.names[g] : "g" + std::to_string(g + 1));
    s += " |";
    for (size_t r = 0; r < G.relators.size(); ++r)
        s += (r ? ", " : " ") + word_str(G, G.relators[r]);
    return s + ">";
}

std::string AbelianInvariants::str() const
{
    if (trivial())
        return "0";
    std::string s;
    if (free_rank > 0)
        s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    for (long long t : torsion)
        s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(t);
    return s;
}

std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> M)
{
    std::vector<long long> diag;
    const size_t rows = M.size();
    const size_t cols = rows ? M[0].size() : 0;
    size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero |entry| in the remaining block
        size_t pr = rows, pc = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (M[i][j] != 0 && (pr == rows || std::llabs(M[i][j]) < std::llabs(M[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows)
            break;
        std::swap(M[t], M[pr]);
        for (auto& row : M)
            std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                long long q = M[i][t] / M[t][t];
                for (size_t j = t; j < cols; ++j)
                    M[i][j] -= q * M[t][j];
                if (M[i][t] != 0) {
                    std::swap(M[t], M[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                long long q = M[t][j] / M[t][t];
                for (size_t i = t; i < rows; ++i)
                    M[i][j] -= q * M[i][t];
                if (M[t][j] != 0) {
                    for (auto& row : M)
                        std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility of the rest of the block
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (M[i][j] % M[t][t] != 0) {
                            for (size_t k = t; k < cols; ++k)
                                M[t][k] += M[i][k];
                            clean = false;
                        }
            }
        }
        diag.push_back(std::llabs(M[t][t]));
        ++t;
    }
    return diag;
}

AbelianInvariants abelianization(const GroupPresentation& G)
{
    AbelianInvariants A;
    std::vector<std::vector<long long>> M;
    for (auto& r : G.relators) {
        std::vector<long long> row(G.generators, 0);
        for (int x : r)
            row[std::abs(x) - 1] += x > 0 ? 1 : -1;
        M.push_back(row);
    }
    auto d = smith_diagonal(M);
    int rank = 0;
    for (long long v : d) {
        if (v == 0)
            continue;
        ++rank;
        if (v > 1)
            A.torsion.push_back(v);
    }
    A.free_rank = G.generators - rank;
    return A;
}

const char* triviality_name(Triviality t)
{
    switch (t) {
    case Triviality::Trivial: return "trivial";
    case Triviality::Nontrivial: return "nontrivial";
    case Triviality::Unknown: return "unknown";
    }
    return "?";
}

namespace {

// generator occurring exactly once in r, or 0
int single_letter(const Word& r)
{
    std::map<int, int> count;
    for (int x : r)
        ++count[std::abs(x)];
    for (auto& [g, c] : count)
        if (c == 1)
            return g;
    return 0;
}

std::vector<Word> normalize(const std::vector<Word>& rels)
{
    std::set<Word> seen;
    std::vector<Word> out;
    for (auto& r : rels) {
        Word c = cyclic_reduce(r);
        if (c.empty())
            continue;
        if (seen.insert(c).second)
            out.push_back(c);
    }
    return out;
}

// use relator r (where g occurs once) to delete g
std::vector<Word> eliminate(const std::vector<Word>& rels, size_t ri, int g)
{
    const Word& r = rels[ri];
    size_t pos = 0;
    while (std::abs(r[pos]) != g)
        ++pos;
    // r = u g^e v  =>  g = (v u)^{-e}
    Word vu(r.begin() + pos + 1, r.end());
    vu.insert(vu.end(), r.begin(), r.begin() + pos);
    Word repl = r[pos] > 0 ? inverse(vu) : vu;
    Word repl_inv = inverse(repl);
    std::vector<Word> out;
    for (size_t i = 0; i < rels.size(); ++i) {
        if (i == ri)
            continue;
        Word w;
        for (int x : rels[i]) {
            if (x == g)
                w.insert(w.end(), repl.begin(), repl.end());
            else if (x == -g)
                w.insert(w.end(), repl_inv.begin(), repl_inv.end());
            else
                w.push_back(x);
        }
        out.push_back(w);
    }
    return normalize(out);
}

std::vector<Word> rotations(const Word& w)
{
    std::vector<Word> out;
    for (size_t i = 0; i < w.size(); ++i) {
        Word r(w.begin() + i, w.end());
        r.insert(r.end(), w.begin(), w.begin() + i);
        out.push_back(r);
        out.push_back(inverse(r));
    }
    return out;
}

}  // namespace

TrivialityVerdict is_trivial_group(const GroupPresentation& G, TietzeBudget budget)
{
    TrivialityVerdict v;
    v.h1 = abelianization(G);
    if (!v.h1.trivial()) {
        v.verdict = Triviality::Nontrivial;
        v.reason = "H1 = " + v.h1.str();
        return v;
    }
    std::set<int> gens;
    for (int g = 1; g <= G.generators; ++g)
        gens.insert(g);
    std::vector<Word> rels = normalize(G.relators);
    for (;;) {
        bool progress = false;
        for (size_t i = 0; i < rels.size() && !progress; ++i) {
            int g = single_letter(rels[i]);
            if (g) {
                rels = eliminate(rels, i, g);
                gens.erase(g);
                progress = true;
            }
        }
        if (gens.empty()) {
            v.verdict = Triviality::Trivial;
            v.reason = "Tietze moves remove every generator";
            return v;
        }
        if (progress)
            continue;
        // bounded products of relators until one has a letter occurring once
        std::set<Word> pool(rels.begin(), rels.end());
        std::vector<Word> frontier = rels;
        Word found;
        for (int depth = 1; depth <= budget.max_depth && found.empty(); ++depth) {
            std::vector<Word> next;
            for (auto& a : frontier) {
                for (auto& b : rels) {
                    for (auto& ra : rotations(a)) {
                        for (auto& rb : rotations(b)) {
                            Word w = ra;
                            w.insert(w.end(), rb.begin(), rb.end());
                            w = cyclic_reduce(w);
                            if (w.empty() || static_cast<int>(w.size()) > budget.max_length)
                                continue;
                            if (!pool.insert(w).second)
                                continue;
                            if (single_letter(w)) {
                                found = w;
                                break;
                            }
                            if (pool.size() < 20000)
                                next.push_back(w);
                        }
                        if (!found.empty())
                            break;
                    }
                    if (!found.empty())
                        break;
                }
                if (!found.empty())
                    break;
            }
            frontier = std::move(next);
        }
        if (found.empty()) {
            v.verdict = Triviality::Unknown;
            v.reason = "Tietze search exhausted the budget";
            return v;
        }
        rels.push_back(found);
    }
}

namespace {

struct GraphIndex {
    std::vector<std::string> vertices;       // nodes, then one per circle edge
    std::map<std::string, int> node_vertex;
    std::vector<std::pair<int, int>> edges;  // per polyhedron edge
};

GraphIndex graph_index(const Polyhedron& P)
{
    GraphIndex G;
    for (auto& n : P.nodes) {
        G.node_vertex[n.id] = static_cast<int>(G.vertices.size());
        G.vertices.push_back(n.id);
    }
    for (auto& e : P.edges) {
        if (e.is_circle()) {
            int v = static_cast<int>(G.vertices.size());
            G.vertices.push_back("@" + e.id);
            G.edges.push_back({v, v});
        } else {
            G.edges.push_back({G.node_vertex.at(e.from), G.node_vertex.at(e.to)});
        }
    }
    return G;
}

}  // namespace

int singular_graph_betti(const Polyhedron& P)
{
    GraphIndex G = graph_index(P);
    const int n = static_cast<int>(G.vertices.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    int comps = n;
    for (auto& [a, b] : G.edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --comps;
        }
    }
    return static_cast<int>(G.edges.size()) - n + comps;
}

GroupPresentation pi1_presentation(const Polyhedron& P)
{
    if (P.boundary_vertices() > 0)
        throw Error(ErrorCode::Unsupported, "pi1 with boundary vertices");
    GraphIndex G = graph_index(P);
    const int n = static_cast<int>(G.vertices.size());

    // BFS spanning forest over nodes in natural order
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge, other vertex)
    for (size_t e = 0; e < G.edges.size(); ++e) {
        auto [a, b] = G.edges[e];
        adj[a].push_back({static_cast<int>(e), b});
        if (a != b)
            adj[b].push_back({static_cast<int>(e), a});
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return natural_less(G.vertices[a], G.vertices[b]); });
    std::vector<bool> seen(n, false), tree(G.edges.size(), false);
    for (int root : order) {
        if (seen[root])
            continue;
        seen[root] = true;
        std::deque<int> q{root};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (auto [e, w] : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    tree[e] = true;
                    q.push_back(w);
                }
        }
    }

    GroupPresentation out;
    std::map<std::string, int> gen_of_edge;
    std::vector<size_t> eorder(P.edges.size());
    std::iota(eorder.begin(), eorder.end(), 0);
    std::stable_sort(eorder.begin(), eorder.end(), [&](size_t a, size_t b) { return natural_less(P.edges[a].id, P.edges[b].id); });
    for (size_t e : eorder)
        if (!tree[e]) {
            out.names.push_back(P.edges[e].id);
            gen_of_edge[P.edges[e].id] = ++out.generators;
        }
    auto fresh = [&](const std::string& name) {
        out.names.push_back(name);
        return ++out.generators;
    };

    // components of |S(P)|; a seam joining two of them is a tree edge, not a generator
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
    for (size_t e = 0; e < G.edges.size(); ++e)
        comp[find(G.edges[e].first)] = find(G.edges[e].second);
    std::map<std::string, size_t> edge_index;
    for (size_t e = 0; e < P.edges.size(); ++e)
        edge_index[P.edges[e].id] = e;
    auto joins = [&](const Walk& a, const Walk& b) {
        if (a.empty() || b.empty())
            return false;
        int x = find(G.edges[edge_index.at(a.front().edge)].first), y = find(G.edges[edge_index.at(b.front().edge)].first);
        if (x == y)
            return false;
        comp[x] = y;
        return true;
    };

    std::vector<const Region*> regions;
    for (auto& r : P.regions)
        regions.push_back(&r);
    std::stable_sort(regions.begin(), regions.end(), [](auto* a, auto* b) { return natural_less(a->id, b->id); });
    for (const Region* R : regions) {
        if (R->walks.empty())
            throw Error(ErrorCode::Unsupported, "region " + R->id + " is not attached to S(P)");
        int q = 0;
        for (auto& c : P.boundary)
            if (c.plain() && c.region == R->id)
                ++q;
        std::vector<Word> words;
        for (auto& w : R->walks) {
            Word word;
            for (auto& s : w) {
                auto it = gen_of_edge.find(s.edge);
                if (it != gen_of_edge.end())
                    word.push_back(s.dir * it->second);
            }
            words.push_back(word);
        }
        const int m = static_cast<int>(words.size());
        std::vector<bool> tree_seam(m, false);
        for (int j = 1; j < m; ++j)
            tree_seam[j] = joins(R->walks[0], R->walks[j]);
        const int joined = static_cast<int>(std::count(tree_seam.begin(), tree_seam.end(), true));
        if (q > 0) {
            // collar with free boundary: handles, seams and all but one free circle stay free
            int extra = (R->orientable ? 2 * R->genus : R->genus) + (m - 1 - joined) + (q - 1);
            for (int i = 0; i < extra; ++i)
                fresh(R->id + ".f" + std::to_string(i + 1));
            continue;
        }
        Word rel = words[0];
        for (int j = 1; j < m; ++j) {
            if (tree_seam[j]) {
                rel.insert(rel.end(), words[j].begin(), words[j].end());
                continue;
            }
            int s = fresh(R->id + ".s" + std::to_string(j + 1));
            rel.push_back(s);
            rel.insert(rel.end(), words[j].begin(), words[j].end());
            rel.push_back(-s);
        }
        if (R->orientable) {
            for (int i = 0; i < R->genus; ++i) {
                int a = fresh(R->id + ".a" + std::to_string(i + 1));
                int b = fresh(R->id + ".b" + std::to_string(i + 1));
                Word c{a, b, -a, -b};
                rel.insert(rel.end(), c.begin(), c.end());
            }
        } else {
            for (int i = 0; i < R->genus; ++i) {
                int a = fresh(R->id + ".c" + std::to_string(i + 1));
                rel.push_back(a);
                rel.push_back(a);
            }
        }
        rel = cyclic_reduce(rel);
        if (!rel.empty())
            out.relators.push_back(rel);
    }
    return out;
}

}  // namespace shadow
