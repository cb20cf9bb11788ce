// Writes the eight one-vertex neighborhood models as ASP files, with circles labeled as in the
// capping lists (l1, l2 are the circles whose capping gives a simply connected polyhedron).
#include <fstream>
#include <iostream>
#include <map>

#include "shadow/asp.hpp"
#include "shadow/census.hpp"

using namespace shadow;

namespace {

struct ModelSpec {
    const char* id;
    bool two_circles, swap_a, swap_b;
    std::vector<std::string> order;  // generator circle ids in l1, l2, ... order
};

Shadow relabel(const Shadow& S, const std::string& name, const std::vector<std::string>& order)
{
    std::map<std::string, std::string> circle, region;
    for (size_t k = 0; k < order.size(); ++k) {
        circle[order[k]] = "l" + std::to_string(k + 1);
        region[S.poly.circle(order[k])->region] = "r" + std::to_string(k + 1);
    }
    Shadow T = S;
    T.poly.name = name;
    for (auto& R : T.poly.regions)
        R.id = region.at(R.id);
    for (auto& c : T.poly.boundary) {
        c.id = circle.at(c.id);
        c.region = region.at(c.region);
    }
    Branching b;
    for (auto& [r, s] : S.branching->sign)
        b.sign[region.at(r)] = s;
    T.branching = b;
    return T;
}

}  // namespace

int main(int argc, char** argv)
{
    std::string dir = argc > 1 ? argv[1] : "fixtures";
    const std::vector<ModelSpec> specs = {
        {"27-i", false, true, true, {"l1", "l2"}},
        {"27-ii", false, true, false, {"l3", "l1", "l2"}},
        {"27-iii", false, false, true, {"l1", "l2", "l3"}},
        {"27-iv", false, false, false, {"l1", "l4", "l2", "l3"}},
        {"32-i", true, true, true, {"l1"}},
        {"32-ii", true, false, true, {"l1", "l2"}},
        {"32-iii", true, true, false, {"l1", "l2"}},
        {"32-iv", true, false, false, {"l2", "l3", "l1"}},
    };
    for (auto& s : specs) {
        Shadow S = relabel(bouquet_neighborhood(s.two_circles, s.swap_a, s.swap_b), std::string("fig") + s.id, s.order);
        std::string path = dir + "/fig" + s.id + ".asp";
        std::ofstream(path) << serialize_asp(S.poly, S.branching);
        std::cout << path << "\n";
    }
}
