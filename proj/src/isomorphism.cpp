#include "shadow/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>

#include "shadow/topology.hpp"

namespace shadow {

namespace {

const std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

using Germ = std::pair<int, int>;  // (end, slot)

std::set<std::pair<Germ, Germ>> corner_pairs(const Topology& T)
{
    std::set<std::pair<Germ, Germ>> out;
    for (auto& c : T.corners) {
        Germ a{c.end_in, c.slot_in}, b{c.end_out, c.slot_out};
        out.insert({std::min(a, b), std::max(a, b)});
    }
    return out;
}

// step -> int code over B's edge indices
using Code = std::vector<int>;

Code rotate_min(const Code& w)
{
    // steps are triples
    const size_t n = w.size() / 3;
    Code best = w;
    for (size_t r = 1; r < n; ++r) {
        Code c(w.begin() + 3 * r, w.end());
        c.insert(c.end(), w.begin(), w.begin() + 3 * r);
        best = std::min(best, c);
    }
    return best;
}

Code reversed_code(const Code& w)
{
    Code out;
    const size_t n = w.size() / 3;
    for (size_t k = n; k-- > 0;) {
        out.push_back(w[3 * k]);
        out.push_back(-w[3 * k + 1]);
        out.push_back(w[3 * k + 2]);
    }
    return out;
}

struct RegionKey {
    std::vector<Code> walks;
    int genus = 0;
    bool orientable = true;
    std::optional<long long> gleam;
    std::vector<char> circles;
    auto tie() const { return std::tie(walks, genus, orientable, gleam, circles); }
    bool operator<(const RegionKey& o) const { return tie() < o.tie(); }
    bool operator==(const RegionKey& o) const { return tie() == o.tie(); }
};

std::vector<Code> walk_set(const std::vector<Code>& walks, bool reverse)
{
    std::vector<Code> out;
    for (auto& w : walks)
        out.push_back(rotate_min(reverse ? reversed_code(w) : w));
    std::sort(out.begin(), out.end());
    return out;
}

class Matcher {
public:
    Matcher(const Shadow& A, const Shadow& B, IsoOptions opt)
        : A_(A), B_(B), opt_(opt), TA_(build_topology(A.poly)), TB_(build_topology(B.poly))
    {
        ca_ = corner_pairs(TA_);
        cb_ = corner_pairs(TB_);
        const size_t E = A.poly.edges.size();
        emap_.assign(E, -1);
        orient_.assign(E, 1);
        perm_.assign(E, 0);
        used_.assign(B.poly.edges.size(), false);
        nmap_.assign(A.poly.nodes.size(), -1);
        nused_.assign(B.poly.nodes.size(), false);
        b_keys_[1] = region_keys_b(1);
        if (opt.branched)
            b_keys_[-1] = region_keys_b(-1);
    }

    std::optional<Isomorphism> run()
    {
        const Polyhedron& P = A_.poly;
        const Polyhedron& Q = B_.poly;
        if (P.nodes.size() != Q.nodes.size() || P.edges.size() != Q.edges.size() || P.regions.size() != Q.regions.size() ||
            P.boundary.size() != Q.boundary.size() || P.true_vertices() != Q.true_vertices())
            return std::nullopt;
        if (opt_.branched && (!A_.branching || !B_.branching))
            return std::nullopt;
        if (ca_.size() != cb_.size())
            return std::nullopt;
        if (search(0))
            return result_;
        return std::nullopt;
    }

private:
    const Shadow& A_;
    const Shadow& B_;
    IsoOptions opt_;
    Topology TA_, TB_;
    std::set<std::pair<Germ, Germ>> ca_, cb_;
    std::vector<int> emap_, orient_, perm_, nmap_;
    std::vector<bool> used_, nused_;
    std::map<int, std::vector<std::pair<RegionKey, int>>> b_keys_;
    Isomorphism result_;

    int map_end(int end) const
    {
        int e = end_edge(end);
        int side = orient_[e] > 0 ? end_side(end) : 1 - end_side(end);
        return end_id(emap_[e], side);
    }
    Germ map_germ(Germ g) const { return {map_end(g.first), kPerms[perm_[end_edge(g.first)]][g.second]}; }

    bool bind_node(const std::string& a, const std::string& b)
    {
        int ia = TA_.node_idx.at(a), ib = TB_.node_idx.at(b);
        if (nmap_[ia] == ib)
            return true;
        if (nmap_[ia] != -1 || nused_[ib])
            return false;
        if (A_.poly.nodes[ia].kind != B_.poly.nodes[ib].kind)
            return false;
        nmap_[ia] = ib;
        nused_[ib] = true;
        bound_.push_back(ia);
        return true;
    }
    std::vector<int> bound_;

    bool corners_ok(int e) const
    {
        for (auto& [g, h] : ca_) {
            int eg = end_edge(g.first), eh = end_edge(h.first);
            if (eg != e && eh != e)
                continue;
            if (emap_[eg] < 0 || emap_[eh] < 0)
                continue;
            Germ mg = map_germ(g), mh = map_germ(h);
            if (!cb_.count({std::min(mg, mh), std::max(mg, mh)}))
                return false;
        }
        return true;
    }

    bool search(size_t i)
    {
        const Polyhedron& P = A_.poly;
        const Polyhedron& Q = B_.poly;
        if (i == P.edges.size())
            return finish();
        const Edge& ea = P.edges[i];
        for (size_t j = 0; j < Q.edges.size(); ++j) {
            if (used_[j])
                continue;
            const Edge& eb = Q.edges[j];
            if (ea.is_circle() != eb.is_circle() || ea.flip != eb.flip)
                continue;
            for (int o : {1, -1}) {
                size_t mark = bound_.size();
                bool ok = true;
                if (!ea.is_circle()) {
                    ok = bind_node(ea.from, o > 0 ? eb.from : eb.to) && bind_node(ea.to, o > 0 ? eb.to : eb.from);
                }
                if (ok) {
                    used_[j] = true;
                    emap_[i] = static_cast<int>(j);
                    orient_[i] = o;
                    for (int p = 0; p < 6; ++p) {
                        perm_[i] = p;
                        if (corners_ok(static_cast<int>(i)) && search(i + 1))
                            return true;
                    }
                    used_[j] = false;
                    emap_[i] = -1;
                }
                while (bound_.size() > mark) {
                    nused_[nmap_[bound_.back()]] = false;
                    nmap_[bound_.back()] = -1;
                    bound_.pop_back();
                }
            }
        }
        return false;
    }

    RegionKey base_key(const Polyhedron& P, const Region& R) const
    {
        RegionKey k;
        k.genus = R.genus;
        k.orientable = R.orientable;
        if (opt_.gleams && R.gleam)
            k.gleam = R.gleam->twice;
        for (auto& c : P.boundary)
            if (c.plain() && c.region == R.id)
                k.circles.push_back(opt_.colors ? color_char(c.color) : '*');
        std::sort(k.circles.begin(), k.circles.end());
        return k;
    }

    std::vector<std::pair<RegionKey, int>> region_keys_b(int global) const
    {
        const Polyhedron& Q = B_.poly;
        std::vector<std::pair<RegionKey, int>> out;
        for (size_t r = 0; r < Q.regions.size(); ++r) {
            const Region& R = Q.regions[r];
            std::vector<Code> walks;
            for (auto& w : R.walks) {
                Code c;
                for (auto& s : w) {
                    c.push_back(TB_.edge_idx.at(s.edge));
                    c.push_back(s.dir);
                    c.push_back(s.slot);
                }
                walks.push_back(c);
            }
            RegionKey k = base_key(Q, R);
            if (opt_.branched) {
                int sign = B_.branching->sign.count(R.id) ? B_.branching->sign.at(R.id) : 1;
                k.walks = walk_set(walks, sign * global < 0);
            } else {
                k.walks = std::min(walk_set(walks, false), walk_set(walks, true));
            }
            out.push_back({k, static_cast<int>(r)});
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool finish()
    {
        const Polyhedron& P = A_.poly;
        std::vector<std::pair<RegionKey, int>> keys;
        for (size_t r = 0; r < P.regions.size(); ++r) {
            const Region& R = P.regions[r];
            std::vector<Code> walks;
            for (auto& w : R.walks) {
                Code c;
                for (auto& s : w) {
                    int e = TA_.edge_idx.at(s.edge);
                    c.push_back(emap_[e]);
                    c.push_back(s.dir * orient_[e]);
                    c.push_back(kPerms[perm_[e]][s.slot]);
                }
                walks.push_back(c);
            }
            RegionKey k = base_key(P, R);
            if (opt_.branched) {
                int sign = A_.branching->sign.count(R.id) ? A_.branching->sign.at(R.id) : 1;
                k.walks = walk_set(walks, sign < 0);
            } else {
                k.walks = std::min(walk_set(walks, false), walk_set(walks, true));
            }
            keys.push_back({k, static_cast<int>(r)});
        }
        std::sort(keys.begin(), keys.end());
        for (int global : {1, -1}) {
            if (!b_keys_.count(global))
                continue;
            const auto& bk = b_keys_.at(global);
            bool same = true;
            for (size_t r = 0; r < keys.size() && same; ++r)
                same = keys[r].first == bk[r].first;
            if (!same)
                continue;
            build_result(keys, bk, global);
            return true;
        }
        return false;
    }

    void build_result(const std::vector<std::pair<RegionKey, int>>& ka, const std::vector<std::pair<RegionKey, int>>& kb, int global)
    {
        const Polyhedron& P = A_.poly;
        const Polyhedron& Q = B_.poly;
        result_ = {};
        result_.branching_sign = global;
        for (size_t i = 0; i < P.nodes.size(); ++i)
            result_.node[P.nodes[i].id] = Q.nodes[nmap_[i]].id;
        for (size_t i = 0; i < P.edges.size(); ++i)
            result_.edge[P.edges[i].id] = Q.edges[emap_[i]].id;
        for (size_t r = 0; r < ka.size(); ++r)
            result_.region[P.regions[ka[r].second].id] = Q.regions[kb[r].second].id;
        std::set<std::string> taken;
        for (auto& c : P.boundary) {
            for (auto& d : Q.boundary) {
                if (taken.count(d.id) || c.plain() != d.plain())
                    continue;
                if (opt_.colors && c.color != d.color)
                    continue;
                if (c.plain() && result_.region[c.region] != d.region)
                    continue;
                if (!c.plain()) {
                    std::set<std::string> mapped;
                    for (auto& v : c.bvs)
                        mapped.insert(result_.node[v]);
                    if (mapped != std::set<std::string>(d.bvs.begin(), d.bvs.end()))
                        continue;
                }
                result_.circle[c.id] = d.id;
                taken.insert(d.id);
                break;
            }
        }
    }
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const Shadow& A, const Shadow& B, IsoOptions opt)
{
    Matcher m(A, B, opt);
    return m.run();
}

}  // namespace shadow
