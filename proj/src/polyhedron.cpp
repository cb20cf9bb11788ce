#include "shadow/polyhedron.hpp"

#include <algorithm>
#include <cctype>

namespace shadow {

const char* error_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UndeclaredId: return "UndeclaredId";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IllegalDegree: return "IllegalDegree";
    case ErrorCode::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::NonOrientableRegion: return "NonOrientableRegion";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::MalformedCode: return "MalformedCode";
    case ErrorCode::NonPlanar: return "NonPlanar";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotAchievable: return "NotAchievable";
    case ErrorCode::IllegalResult: return "IllegalResult";
    case ErrorCode::NotCappable: return "NotCappable";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotSpecial: return "NotSpecial";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Error";
}

HalfInteger HalfInteger::parse(const std::string& s)
{
    auto bad = [&] { return Error(ErrorCode::Syntax, "bad half-integer '" + s + "'"); };
    if (s.empty())
        throw bad();
    auto slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(num, &pos);
    } catch (...) {
        throw bad();
    }
    if (pos != num.size())
        throw bad();
    if (slash == std::string::npos)
        return {2 * v};
    if (s.substr(slash + 1) != "2")
        throw bad();
    return {v};
}

std::string HalfInteger::str() const
{
    if (is_integer())
        return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::string HalfInteger::asp_str() const { return std::to_string(twice) + "/2"; }

char color_char(Color c)
{
    switch (c) {
    case Color::I: return 'i';
    case Color::E: return 'e';
    case Color::F: return 'f';
    }
    return '?';
}

Color color_from_char(char c)
{
    switch (c) {
    case 'i': return Color::I;
    case 'e': return Color::E;
    case 'f': return Color::F;
    }
    throw Error(ErrorCode::Syntax, std::string("bad color '") + c + "'");
}

template <class V, class T>
static T* find_id(V& v, const std::string& id)
{
    for (auto& x : v)
        if (x.id == id)
            return &x;
    return nullptr;
}

const Node* Polyhedron::node(const std::string& id) const { return find_id<const std::vector<Node>, const Node>(nodes, id); }
const Edge* Polyhedron::edge(const std::string& id) const { return find_id<const std::vector<Edge>, const Edge>(edges, id); }
const Region* Polyhedron::region(const std::string& id) const { return find_id<const std::vector<Region>, const Region>(regions, id); }
const BoundaryCircle* Polyhedron::circle(const std::string& id) const
{
    return find_id<const std::vector<BoundaryCircle>, const BoundaryCircle>(boundary, id);
}
Node* Polyhedron::node(const std::string& id) { return find_id<std::vector<Node>, Node>(nodes, id); }
Edge* Polyhedron::edge(const std::string& id) { return find_id<std::vector<Edge>, Edge>(edges, id); }
Region* Polyhedron::region(const std::string& id) { return find_id<std::vector<Region>, Region>(regions, id); }
BoundaryCircle* Polyhedron::circle(const std::string& id) { return find_id<std::vector<BoundaryCircle>, BoundaryCircle>(boundary, id); }

int Polyhedron::true_vertices() const
{
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.kind == NodeKind::True; }));
}

int Polyhedron::boundary_vertices() const
{
    return static_cast<int>(nodes.size()) - true_vertices();
}

bool Branching::operator<(const Branching& o) const
{
    std::vector<std::string> keys;
    for (auto& [k, v] : sign)
        keys.push_back(k);
    for (auto& [k, v] : o.sign)
        keys.push_back(k);
    std::sort(keys.begin(), keys.end(), NaturalLess{});
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto& k : keys) {
        auto a = sign.find(k), b = o.sign.find(k);
        int sa = a == sign.end() ? 0 : a->second;
        int sb = b == o.sign.end() ? 0 : b->second;
        if (sa != sb)
            return sa > sb;  // '+' sorts first
    }
    return false;
}

Branching Branching::negated() const
{
    Branching b;
    for (auto& [k, v] : sign)
        b.sign[k] = -v;
    return b;
}

bool natural_less(const std::string& a, const std::string& b)
{
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit((unsigned char)a[i]) && std::isdigit((unsigned char)b[j])) {
            size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit((unsigned char)a[i2]))
                ++i2;
            while (j2 < b.size() && std::isdigit((unsigned char)b[j2]))
                ++j2;
            std::string na = a.substr(i, i2 - i), nb = b.substr(j, j2 - j);
            while (na.size() > 1 && na[0] == '0')
                na.erase(0, 1);
            while (nb.size() > 1 && nb[0] == '0')
                nb.erase(0, 1);
            if (na.size() != nb.size())
                return na.size() < nb.size();
            if (na != nb)
                return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j])
                return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j))
        return (a.size() - i) < (b.size() - j);
    return a < b;
}

}  // namespace shadow
