#include "geocycle/edge_space.hpp"

#include "geocycle/errors.hpp"

#include <algorithm>
#include <map>

namespace geocycle {

EdgeSet symmetric_sum(const std::vector<EdgeSet>& family) {
    std::map<EdgeId, std::size_t> counts;
    for (const auto& member : family) {
        for (const auto& id : member) ++counts[id];
    }
    EdgeSet result;
    for (const auto& [id, count] : counts) {
        if (count % 2 == 1) result.insert(id);
    }
    return result;
}

bool is_cycle_space_member(const Graph& g, const EdgeSet& x) {
    std::map<VertexId, std::size_t> degree;
    for (const auto& id : x) {
        const Edge& e = g.edge(id);  // throws on unknown id
        degree[e.u] += 1;
        degree[e.v] += 1;  // loops land here twice, keeping parity even
    }
    for (const auto& [v, d] : degree) {
        if (d % 2 != 0) return false;
    }
    return true;
}

std::vector<Cycle> decompose_into_circuits(const Graph& g, const EdgeSet& x) {
    if (!is_cycle_space_member(g, x))
        throw InputError("edge set is not a cycle-space member");

    // Remaining incidence, kept sorted by edge id via Graph's incident() order.
    std::set<EdgeId> remaining(x.begin(), x.end());
    auto least_unused_at = [&](const VertexId& v) -> const Edge* {
        for (std::size_t idx : g.incident(v)) {
            const Edge& e = g.edge_at(idx);
            if (remaining.count(e.id)) return &e;
        }
        return nullptr;
    };

    std::vector<Cycle> result;
    while (!remaining.empty()) {
        VertexId start;
        for (const auto& v : g.vertices()) {
            if (least_unused_at(v)) {
                start = v;
                break;
            }
        }
        GEOCYCLE_CHECK(!start.empty());

        std::vector<VertexId> walk_vertices{start};
        std::vector<EdgeId> walk_edges;
        std::map<VertexId, std::size_t> position{{start, 0}};

        while (!walk_vertices.empty()) {
            const VertexId v = walk_vertices.back();
            const Edge* e = least_unused_at(v);
            if (e == nullptr) {
                GEOCYCLE_CHECK(walk_vertices.size() == 1);
                break;  // start exhausted, outer loop picks the next start
            }
            remaining.erase(e->id);
            walk_edges.push_back(e->id);
            const VertexId w = e->other(v);

            auto hit = position.find(w);
            if (hit != position.end()) {
                const std::size_t k = hit->second;
                std::vector<EdgeId> circuit(walk_edges.begin() + k, walk_edges.end());
                result.push_back(Cycle::from_edge_walk(g, circuit));
                for (std::size_t j = k + 1; j < walk_vertices.size(); ++j)
                    position.erase(walk_vertices[j]);
                walk_vertices.resize(k + 1);
                walk_edges.resize(k);
            } else {
                position[w] = walk_vertices.size();
                walk_vertices.push_back(w);
            }
        }
    }
    return result;
}

Rational set_length(const Graph& g, const EdgeSet& x) {
    Rational total = 0;
    for (const auto& id : x) total += g.edge(id).length;
    return total;
}

}  // namespace geocycle
