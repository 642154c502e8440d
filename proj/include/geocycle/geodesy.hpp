#pragma once

#include "geocycle/graph.hpp"

#include <optional>
#include <vector>

namespace geocycle {

struct PathResult {
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;  // one more entry than edges
    Rational length;
};

// Exact shortest path; ties broken by the lexicographically least edge-id
// sequence, so witnesses are reproducible across runs. Throws NoPathError
// for disconnected pairs.
PathResult shortest_path(const Graph& g, const VertexId& x, const VertexId& y);

// All-pairs distances with one witness path per ordered pair. Construction is
// sequential; queries after construction are read-only and thread-safe.
class DistanceOracle {
public:
    explicit DistanceOracle(const Graph& g);

    const Rational& distance(const VertexId& x, const VertexId& y) const;
    bool reachable(const VertexId& x, const VertexId& y) const;
    PathResult witness(const VertexId& x, const VertexId& y) const;

    const Graph& graph() const { return *graph_; }

private:
    const Graph* graph_;
    std::vector<std::optional<Rational>> dist_;         // source-major
    std::vector<std::optional<std::size_t>> parent_;    // edge index into source tree
    std::size_t index_of(const VertexId& v) const;
    std::size_t n_;
    std::map<VertexId, std::size_t> order_;
};

// Path between two cycle vertices that is strictly shorter than both arcs of
// the cycle between them and internally disjoint from the cycle.
struct Shortcut {
    VertexId x;
    VertexId y;
    PathResult path;
    Rational arc_short;  // shorter x-y arc on the reference cycle
    Rational arc_long;
};

// True iff for every vertex pair on c one of the two arcs realises the graph
// distance.
bool is_geodetic(const Graph& g, const DistanceOracle& oracle, const Cycle& c);
bool is_geodetic(const Graph& g, const Cycle& c);

// Empty iff the cycle is geodetic. Vertex pairs are scanned by increasing
// gap (shorter arc minus distance); the witness shortest path is split at its
// meetings with the cycle and the first segment beating both of its own arcs
// is returned.
std::optional<Shortcut> find_shortcut(const Graph& g, const DistanceOracle& oracle,
                                      const Cycle& c);

}  // namespace geocycle
