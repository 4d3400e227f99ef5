#include "pmc/path.hpp"

#include <unordered_set>

#include "pmc/core.hpp"
#include "pmc/space.hpp"

namespace pmc {

Path::Path(std::vector<int> v) : vertices(std::move(v)) {
    if (vertices.empty()) throw ValidationError("path: needs at least one vertex");
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        if (vertices[i] == vertices[i + 1]) {
            throw ValidationError("path: consecutive vertices must be distinct");
        }
    }
}

bool Path::is_arc() const {
    std::unordered_set<int> seen;
    for (int v : vertices) {
        if (!seen.insert(v).second) return false;
    }
    return true;
}

double parametric_length(const Path& path, const Space& space) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        len += space.distance(path.vertices[i], path.vertices[i + 1]);
    }
    return len;
}

}  // namespace pmc
