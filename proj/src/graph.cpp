#include "geocycle/graph.hpp"

#include "geocycle/errors.hpp"

#include <algorithm>
#include <queue>

namespace geocycle {

void Graph::add_vertex(const VertexId& v) {
    if (v.empty()) throw InputError("vertex id must be nonempty");
    if (vertex_index_.count(v)) return;
    vertex_index_[v] = vertices_.size();
    vertices_.push_back(v);
    incidence_[v];
}

void Graph::add_edge(const EdgeId& id, const VertexId& u, const VertexId& v,
                     const Rational& length) {
    if (id.empty()) throw InputError("edge id must be nonempty");
    if (edge_index_.count(id)) throw InputError("duplicate edge id '" + id + "'");
    if (!has_vertex(u)) throw InputError("unknown endpoint '" + u + "' for edge '" + id + "'");
    if (!has_vertex(v)) throw InputError("unknown endpoint '" + v + "' for edge '" + id + "'");
    if (length <= 0) throw InputError("edge '" + id + "' must have positive length");

    edge_index_[id] = edges_.size();
    edges_.push_back(Edge{id, u, v, length});
    const std::size_t idx = edges_.size() - 1;

    auto insert_sorted = [this](const VertexId& at, std::size_t edge_idx) {
        auto& list = incidence_[at];
        auto pos = std::lower_bound(list.begin(), list.end(), edge_idx,
                                    [this](std::size_t a, std::size_t b) {
                                        return edges_[a].id < edges_[b].id;
                                    });
        list.insert(pos, edge_idx);
    };
    insert_sorted(u, idx);
    if (u != v) insert_sorted(v, idx);
}

const Edge& Graph::edge(const EdgeId& id) const { return edges_[edge_index(id)]; }

std::size_t Graph::edge_index(const EdgeId& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw InputError("unknown edge id '" + id + "'");
    return it->second;
}

const std::vector<std::size_t>& Graph::incident(const VertexId& v) const {
    auto it = incidence_.find(v);
    if (it == incidence_.end()) throw InputError("unknown vertex id '" + v + "'");
    return it->second;
}

std::size_t Graph::degree(const VertexId& v) const {
    std::size_t d = 0;
    for (std::size_t idx : incident(v)) d += edges_[idx].is_loop() ? 2 : 1;
    return d;
}

std::size_t Graph::component_count() const {
    if (vertices_.empty()) return 0;
    std::set<VertexId> seen;
    std::size_t components = 0;
    for (const auto& start : vertices_) {
        if (seen.count(start)) continue;
        ++components;
        std::queue<VertexId> frontier;
        frontier.push(start);
        seen.insert(start);
        while (!frontier.empty()) {
            VertexId v = frontier.front();
            frontier.pop();
            for (std::size_t idx : incident(v)) {
                VertexId w = edges_[idx].other(v);
                if (seen.insert(w).second) frontier.push(w);
            }
        }
    }
    return components;
}

bool Graph::is_connected() const { return component_count() <= 1; }

std::vector<std::set<VertexId>> Graph::components_without(
    const std::set<VertexId>& removed) const {
    std::vector<std::set<VertexId>> result;
    std::set<VertexId> seen;
    for (const auto& start : vertices_) {
        if (removed.count(start) || seen.count(start)) continue;
        std::set<VertexId> comp;
        std::queue<VertexId> frontier;
        frontier.push(start);
        seen.insert(start);
        comp.insert(start);
        while (!frontier.empty()) {
            VertexId v = frontier.front();
            frontier.pop();
            for (std::size_t idx : incident(v)) {
                VertexId w = edges_[idx].other(v);
                if (removed.count(w)) continue;
                if (seen.insert(w).second) {
                    comp.insert(w);
                    frontier.push(w);
                }
            }
        }
        result.push_back(std::move(comp));
    }
    return result;
}

namespace {

// Orients the edge list starting from `first`, returning the vertex sequence
// or empty if the orientation does not close into a simple cycle.
std::vector<VertexId> try_orient(const Graph& g, const std::vector<EdgeId>& edges,
                                 const VertexId& first) {
    std::vector<VertexId> seq;
    seq.reserve(edges.size());
    std::set<VertexId> seen;
    VertexId current = first;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge& e = g.edge(edges[k]);
        if (e.u != current && e.v != current) return {};
        if (!seen.insert(current).second) return {};
        seq.push_back(current);
        current = e.other(current);
    }
    if (current != first) return {};
    return seq;
}

}  // namespace

Cycle Cycle::from_edge_walk(const Graph& g, const std::vector<EdgeId>& edges) {
    if (edges.empty()) throw InputError("a cycle needs at least one edge");
    std::set<EdgeId> distinct(edges.begin(), edges.end());
    if (distinct.size() != edges.size()) throw InputError("repeated edge in cycle walk");
    for (const auto& id : edges) {
        if (!g.has_edge(id)) throw InputError("unknown edge id '" + id + "' in cycle");
    }

    const Edge& e0 = g.edge(edges.front());
    if (edges.size() == 1) {
        if (!e0.is_loop()) throw InputError("single-edge cycle must be a loop");
        Cycle c;
        c.edge_ids_ = edges;
        c.vertex_seq_ = {e0.u};
        return c;
    }
    if (e0.is_loop()) throw InputError("loop edge inside a longer cycle walk");

    for (const VertexId& first : {std::min(e0.u, e0.v), std::max(e0.u, e0.v)}) {
        auto seq = try_orient(g, edges, first);
        if (!seq.empty()) {
            Cycle c;
            c.edge_ids_ = edges;
            c.vertex_seq_ = std::move(seq);
            return c;
        }
    }
    throw InputError("edge sequence does not form a cycle");
}

EdgeSet Cycle::edge_set() const { return EdgeSet(edge_ids_.begin(), edge_ids_.end()); }

bool Cycle::contains_vertex(const VertexId& v) const {
    return std::find(vertex_seq_.begin(), vertex_seq_.end(), v) != vertex_seq_.end();
}

Rational Cycle::length(const Graph& g) const {
    Rational total = 0;
    for (const auto& id : edge_ids_) total += g.edge(id).length;
    return total;
}

std::string Cycle::canonical_key() const {
    const std::size_t n = edge_ids_.size();
    std::vector<EdgeId> best;
    auto consider = [&](const std::vector<EdgeId>& candidate) {
        if (best.empty() || candidate < best) best = candidate;
    };
    std::vector<EdgeId> forward = edge_ids_;
    std::vector<EdgeId> backward(edge_ids_.rbegin(), edge_ids_.rend());
    for (std::size_t r = 0; r < n; ++r) {
        std::rotate(forward.begin(), forward.begin() + 1, forward.end());
        std::rotate(backward.begin(), backward.begin() + 1, backward.end());
        consider(forward);
        consider(backward);
    }
    std::string key;
    for (std::size_t k = 0; k < best.size(); ++k) {
        if (k) key.push_back('|');
        key += best[k];
    }
    return key;
}

}  // namespace geocycle
