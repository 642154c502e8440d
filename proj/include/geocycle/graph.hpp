#pragma once

#include "geocycle/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace geocycle {

using VertexId = std::string;
using EdgeId = std::string;

// GF(2) vector over edge identifiers; the carrier of cycle-space elements.
using EdgeSet = std::set<EdgeId>;

struct Edge {
    EdgeId id;
    VertexId u;
    VertexId v;
    Rational length;  // strictly positive

    VertexId other(const VertexId& from) const { return from == u ? v : u; }
    bool is_loop() const { return u == v; }
};

// Finite undirected multigraph with exact positive rational edge lengths.
// Parallel edges and loops are permitted. Immutable once built (all
// operations in this library are pure functions over built graphs).
class Graph {
public:
    void add_vertex(const VertexId& v);
    void add_edge(const EdgeId& id, const VertexId& u, const VertexId& v,
                  const Rational& length);

    bool has_vertex(const VertexId& v) const { return vertex_index_.count(v) > 0; }
    bool has_edge(const EdgeId& id) const { return edge_index_.count(id) > 0; }

    const Edge& edge(const EdgeId& id) const;
    const Edge& edge_at(std::size_t idx) const { return edges_[idx]; }
    std::size_t edge_index(const EdgeId& id) const;

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Edge indices incident to v, ascending by edge id. A loop appears once.
    const std::vector<std::size_t>& incident(const VertexId& v) const;

    // Loops count twice.
    std::size_t degree(const VertexId& v) const;

    bool is_connected() const;
    std::size_t component_count() const;

    // Components of the graph minus the given vertex set, as vertex sets.
    std::vector<std::set<VertexId>> components_without(const std::set<VertexId>& removed) const;

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::map<VertexId, std::size_t> vertex_index_;
    std::map<EdgeId, std::size_t> edge_index_;
    std::map<VertexId, std::vector<std::size_t>> incidence_;
};

// Closed walk with no repeated vertex, as an edge sequence plus the induced
// cyclic vertex sequence: vertex[k] -- edge[k] -- vertex[k+1], wrapping.
// A loop is a one-edge cycle; a parallel pair is a two-edge cycle.
class Cycle {
public:
    // Validates that the edges form a cycle in g and orients it.
    static Cycle from_edge_walk(const Graph& g, const std::vector<EdgeId>& edges);

    const std::vector<EdgeId>& edge_ids() const { return edge_ids_; }
    const std::vector<VertexId>& vertex_seq() const { return vertex_seq_; }
    std::size_t size() const { return edge_ids_.size(); }

    EdgeSet edge_set() const;
    bool contains_vertex(const VertexId& v) const;
    Rational length(const Graph& g) const;

    // Rotation- and direction-invariant identity: the lexicographically least
    // edge-id sequence over all traversals, joined with '|'.
    std::string canonical_key() const;

private:
    std::vector<EdgeId> edge_ids_;
    std::vector<VertexId> vertex_seq_;
};

}  // namespace geocycle
