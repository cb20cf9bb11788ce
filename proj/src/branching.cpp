#include "shadow/branching.hpp"

#include <algorithm>

#include "shadow/topology.hpp"

namespace shadow {

namespace {

struct Lit {
    int var;
    int dir;
};

// one constraint per edge with trivial monodromy: germ directions must not all agree
struct Problem {
    std::vector<std::string> vars;  // region ids, natural order
    std::vector<std::vector<Lit>> edges;
    bool nonorientable = false;
};

Problem build(const Polyhedron& P)
{
    Problem pb;
    for (auto& r : P.regions) {
        pb.vars.push_back(r.id);
        if (!r.orientable)
            pb.nonorientable = true;
    }
    std::sort(pb.vars.begin(), pb.vars.end(), NaturalLess{});
    std::map<std::string, int> var_of;
    for (size_t i = 0; i < pb.vars.size(); ++i)
        var_of[pb.vars[i]] = static_cast<int>(i);
    Topology T = build_topology(P);
    for (size_t e = 0; e < P.edges.size(); ++e) {
        if (P.edges[e].flip)
            continue;
        std::vector<Lit> lits;
        for (int s = 0; s < 3; ++s)
            for (auto& g : T.occ[e][s]) {
                const Region& R = P.regions[g.region];
                lits.push_back({var_of[R.id], R.walks[g.walk][g.step].dir});
            }
        if (!lits.empty())
            pb.edges.push_back(std::move(lits));
    }
    return pb;
}

class Search {
public:
    Search(const Problem& pb, std::vector<int> order) : pb_(pb), order_(std::move(order)), val_(pb.vars.size(), 0)
    {
        touching_.resize(pb.vars.size());
        for (size_t c = 0; c < pb.edges.size(); ++c)
            for (auto& l : pb.edges[c])
                touching_[l.var].push_back(static_cast<int>(c));
    }

    // stop_first: return after the first leaf
    void run(bool stop_first)
    {
        stop_first_ = stop_first;
        dfs(0);
    }

    std::vector<std::vector<int>> found;

private:
    // 1 ok, 0 conflict; pushes forced assignments onto trail
    bool propagate(int var, std::vector<int>& trail)
    {
        std::vector<int> queue{var};
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (int c : touching_[v]) {
                int agreed = 0;  // common direction of decided germs
                bool split = false;
                int open = -1;
                bool many_open = false;
                for (auto& l : pb_.edges[c]) {
                    if (val_[l.var] == 0) {
                        if (open >= 0 && open != l.var)
                            many_open = true;
                        open = l.var;
                        continue;
                    }
                    int d = l.dir * val_[l.var];
                    if (agreed == 0)
                        agreed = d;
                    else if (agreed != d)
                        split = true;
                }
                if (split)
                    continue;
                if (open < 0)
                    return false;
                if (many_open || agreed == 0)
                    continue;
                int dir = 0;
                bool mixed = false;
                for (auto& l : pb_.edges[c])
                    if (l.var == open) {
                        if (dir == 0)
                            dir = l.dir;
                        else if (dir != l.dir)
                            mixed = true;
                    }
                if (mixed)
                    continue;
                val_[open] = -agreed * dir;
                trail.push_back(open);
                queue.push_back(open);
            }
        }
        return true;
    }

    void dfs(size_t k)
    {
        if (stop_first_ && !found.empty())
            return;
        while (k < order_.size() && val_[order_[k]] != 0)
            ++k;
        if (k == order_.size()) {
            found.push_back(val_);
            return;
        }
        int v = order_[k];
        for (int s : {1, -1}) {
            std::vector<int> trail{v};
            val_[v] = s;
            if (propagate(v, trail))
                dfs(k + 1);
            for (int t : trail)
                val_[t] = 0;
            if (stop_first_ && !found.empty())
                return;
        }
    }

    const Problem& pb_;
    std::vector<int> order_;
    std::vector<int> val_;
    std::vector<std::vector<int>> touching_;
    bool stop_first_ = false;
};

Branching to_branching(const Problem& pb, const std::vector<int>& val)
{
    Branching b;
    for (size_t i = 0; i < pb.vars.size(); ++i)
        b.sign[pb.vars[i]] = val[i];
    return b;
}

bool satisfied(const Problem& pb, const std::vector<int>& val)
{
    for (auto& c : pb.edges) {
        bool pos = false, neg = false;
        for (auto& l : c)
            (l.dir * val[l.var] > 0 ? pos : neg) = true;
        if (!(pos && neg))
            return false;
    }
    return true;
}

}  // namespace

bool is_branching(const Polyhedron& P, const Branching& b)
{
    for (auto& r : P.regions) {
        if (!r.orientable)
            throw Error(ErrorCode::NonOrientableRegion, "region " + r.id + " is not orientable");
        if (!b.sign.count(r.id))
            throw Error(ErrorCode::IncompleteAssignment, "no orientation for region " + r.id);
    }
    for (auto& [k, v] : b.sign)
        if (!P.region(k))
            throw Error(ErrorCode::UnknownId, "branching names unknown region " + k);
    Problem pb = build(P);
    std::vector<int> val;
    for (auto& id : pb.vars)
        val.push_back(b.sign.at(id) > 0 ? 1 : -1);
    return satisfied(pb, val);
}

std::vector<Branching> enumerate_branchings(const Polyhedron& P, size_t cap)
{
    if (P.regions.size() > cap)
        throw Error(ErrorCode::CapExceeded, std::to_string(P.regions.size()) + " regions exceed the cap of " + std::to_string(cap));
    Problem pb = build(P);
    if (pb.nonorientable)
        return {};
    std::vector<int> incidence(pb.vars.size(), 0);
    for (auto& c : pb.edges)
        for (auto& l : c)
            ++incidence[l.var];
    std::vector<int> order(pb.vars.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return incidence[a] > incidence[b]; });
    Search s(pb, order);
    s.run(false);
    std::vector<Branching> out;
    for (auto& v : s.found)
        out.push_back(to_branching(pb, v));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Branching> find_branching(const Polyhedron& P)
{
    Problem pb = build(P);
    if (pb.nonorientable)
        return std::nullopt;
    std::vector<int> order(pb.vars.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = static_cast<int>(i);
    Search s(pb, order);
    s.run(true);
    if (s.found.empty())
        return std::nullopt;
    return to_branching(pb, s.found[0]);
}

std::vector<Branching> enumerate_branchings_exhaustive(const Polyhedron& P, size_t cap)
{
    if (P.regions.size() > cap)
        throw Error(ErrorCode::CapExceeded, std::to_string(P.regions.size()) + " regions exceed the cap of " + std::to_string(cap));
    Problem pb = build(P);
    if (pb.nonorientable)
        return {};
    size_t n = pb.vars.size();
    std::vector<Branching> out;
    for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
        std::vector<int> val(n);
        for (size_t i = 0; i < n; ++i)
            val[i] = (mask >> i) & 1 ? -1 : 1;
        if (satisfied(pb, val))
            out.push_back(to_branching(pb, val));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace shadow
