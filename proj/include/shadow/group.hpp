#pragma once

#include <string>
#include <vector>

#include "shadow/polyhedron.hpp"

namespace shadow {

// letters are +-(generator index + 1)
using Word = std::vector<int>;

struct GroupPresentation {
    int generators = 0;
    std::vector<std::string> names;
    std::vector<Word> relators;
};

Word free_reduce(const Word& w);
// free and cyclic reduction
Word cyclic_reduce(const Word& w);
Word inverse(const Word& w);
std::string word_str(const GroupPresentation& G, const Word& w);
std::string presentation_str(const GroupPresentation& G);

// invariant factors of the abelianization: torsion (>1 entries) and free rank
struct AbelianInvariants {
    int free_rank = 0;
    std::vector<long long> torsion;
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string str() const;  // "Z^2", "Z/2", "0"
};

AbelianInvariants abelianization(const GroupPresentation& G);
// diagonal of the Smith normal form
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> M);

enum class Triviality { Trivial, Nontrivial, Unknown };

struct TrivialityVerdict {
    Triviality verdict = Triviality::Unknown;
    AbelianInvariants h1;
    std::string reason;
};

struct TietzeBudget {
    int max_length = 16;
    int max_depth = 6;
};

TrivialityVerdict is_trivial_group(const GroupPresentation& G, TietzeBudget budget = {});

const char* triviality_name(Triviality t);

// generators: edges of S(P) off a spanning tree (a vertexless loop gives one), plus seam and
// handle generators of regions; one relator per internal region. Throws Unsupported.
GroupPresentation pi1_presentation(const Polyhedron& P);

// first Betti number of the graph S(P) (vertexless loops count as cycles)
int singular_graph_betti(const Polyhedron& P);

}  // namespace shadow
