#include "geocycle/geodesy.hpp"

#include "geocycle/errors.hpp"

#include <algorithm>
#include <set>

namespace geocycle {

namespace {

// Per-vertex label during the single-source run: exact distance plus the full
// edge-rank sequence used for deterministic tie-breaking.
struct Label {
    Rational dist;
    std::vector<std::uint32_t> seq;

    bool better_than(const Label& other) const {
        if (dist != other.dist) return dist < other.dist;
        return std::lexicographical_compare(seq.begin(), seq.end(), other.seq.begin(),
                                            other.seq.end());
    }
};

struct SingleSource {
    std::vector<std::optional<Rational>> dist;
    std::vector<std::optional<std::size_t>> parent_edge;
};

// Dijkstra with a secondary lexicographic key. Positive lengths make the
// (dist, seq) order prefix-compatible, so settled labels are final.
SingleSource run_single_source(const Graph& g, const std::map<VertexId, std::size_t>& order,
                               const std::vector<std::uint32_t>& edge_rank,
                               const VertexId& source) {
    const std::size_t n = g.vertex_count();
    SingleSource out;
    out.dist.resize(n);
    out.parent_edge.resize(n);

    std::vector<std::optional<Label>> labels(n);
    std::vector<bool> settled(n, false);

    struct QueueEntry {
        Label label;
        std::size_t vertex;
        bool operator<(const QueueEntry& other) const {
            if (label.dist != other.label.dist) return label.dist < other.label.dist;
            if (label.seq != other.label.seq)
                return std::lexicographical_compare(label.seq.begin(), label.seq.end(),
                                                    other.label.seq.begin(),
                                                    other.label.seq.end());
            return vertex < other.vertex;
        }
    };

    std::set<QueueEntry> queue;
    const std::size_t src = order.at(source);
    labels[src] = Label{0, {}};
    queue.insert(QueueEntry{*labels[src], src});

    while (!queue.empty()) {
        auto entry = *queue.begin();
        queue.erase(queue.begin());
        const std::size_t v = entry.vertex;
        if (settled[v]) continue;
        settled[v] = true;
        out.dist[v] = entry.label.dist;

        const VertexId& vid = g.vertices()[v];
        for (std::size_t idx : g.incident(vid)) {
            const Edge& e = g.edge_at(idx);
            const std::size_t w = order.at(e.other(vid));
            if (settled[w]) continue;
            Label candidate{entry.label.dist + e.length, entry.label.seq};
            candidate.seq.push_back(edge_rank[idx]);
            if (!labels[w] || candidate.better_than(*labels[w])) {
                if (labels[w]) queue.erase(QueueEntry{*labels[w], w});
                labels[w] = candidate;
                out.parent_edge[w] = idx;
                queue.insert(QueueEntry{candidate, w});
            }
        }
    }
    return out;
}

std::vector<std::uint32_t> make_edge_ranks(const Graph& g) {
    std::vector<std::size_t> idx(g.edge_count());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return g.edge_at(a).id < g.edge_at(b).id;
    });
    std::vector<std::uint32_t> rank(g.edge_count());
    for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = static_cast<std::uint32_t>(r);
    return rank;
}

PathResult reconstruct(const Graph& g, const std::map<VertexId, std::size_t>& order,
                       const std::vector<std::optional<std::size_t>>& parent_edge,
                       const std::vector<std::optional<Rational>>& dist, const VertexId& x,
                       const VertexId& y) {
    PathResult path;
    path.length = *dist[order.at(y)];
    VertexId current = y;
    while (current != x) {
        const auto idx = parent_edge[order.at(current)];
        GEOCYCLE_CHECK(idx.has_value());
        const Edge& e = g.edge_at(*idx);
        path.edges.push_back(e.id);
        path.vertices.push_back(current);
        current = e.other(current);
    }
    path.vertices.push_back(x);
    std::reverse(path.edges.begin(), path.edges.end());
    std::reverse(path.vertices.begin(), path.vertices.end());
    return path;
}

}  // namespace

PathResult shortest_path(const Graph& g, const VertexId& x, const VertexId& y) {
    if (!g.has_vertex(x)) throw InputError("unknown vertex '" + x + "'");
    if (!g.has_vertex(y)) throw InputError("unknown vertex '" + y + "'");
    std::map<VertexId, std::size_t> order;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) order[g.vertices()[i]] = i;
    auto ranks = make_edge_ranks(g);
    auto table = run_single_source(g, order, ranks, x);
    if (!table.dist[order.at(y)])
        throw NoPathError("no path between '" + x + "' and '" + y + "'");
    return reconstruct(g, order, table.parent_edge, table.dist, x, y);
}

DistanceOracle::DistanceOracle(const Graph& g) : graph_(&g), n_(g.vertex_count()) {
    for (std::size_t i = 0; i < n_; ++i) order_[g.vertices()[i]] = i;
    auto ranks = make_edge_ranks(g);
    dist_.resize(n_ * n_);
    parent_.resize(n_ * n_);
    for (std::size_t s = 0; s < n_; ++s) {
        auto table = run_single_source(g, order_, ranks, g.vertices()[s]);
        for (std::size_t t = 0; t < n_; ++t) {
            dist_[s * n_ + t] = table.dist[t];
            parent_[s * n_ + t] = table.parent_edge[t];
        }
    }
}

std::size_t DistanceOracle::index_of(const VertexId& v) const {
    auto it = order_.find(v);
    if (it == order_.end()) throw InputError("unknown vertex '" + v + "'");
    return it->second;
}

const Rational& DistanceOracle::distance(const VertexId& x, const VertexId& y) const {
    const auto& d = dist_[index_of(x) * n_ + index_of(y)];
    if (!d) throw NoPathError("no path between '" + x + "' and '" + y + "'");
    return *d;
}

bool DistanceOracle::reachable(const VertexId& x, const VertexId& y) const {
    return dist_[index_of(x) * n_ + index_of(y)].has_value();
}

PathResult DistanceOracle::witness(const VertexId& x, const VertexId& y) const {
    const std::size_t s = index_of(x);
    if (!dist_[s * n_ + index_of(y)])
        throw NoPathError("no path between '" + x + "' and '" + y + "'");
    std::vector<std::optional<std::size_t>> parents(n_);
    std::vector<std::optional<Rational>> dists(n_);
    for (std::size_t t = 0; t < n_; ++t) {
        parents[t] = parent_[s * n_ + t];
        dists[t] = dist_[s * n_ + t];
    }
    return reconstruct(*graph_, order_, parents, dists, x, y);
}

namespace {

// Prefix arc lengths around the cycle: prefix[k] is the length of edges [0,k).
std::vector<Rational> arc_prefix(const Graph& g, const Cycle& c) {
    std::vector<Rational> prefix{Rational(0)};
    for (const auto& id : c.edge_ids()) prefix.push_back(prefix.back() + g.edge(id).length);
    return prefix;
}

}  // namespace

bool is_geodetic(const Graph& g, const DistanceOracle& oracle, const Cycle& c) {
    const auto& verts = c.vertex_seq();
    const std::size_t n = verts.size();
    if (n <= 1) return true;
    const auto prefix = arc_prefix(g, c);
    const Rational total = prefix.back();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational arc1 = prefix[j] - prefix[i];
            const Rational arc2 = total - arc1;
            const Rational shorter = std::min(arc1, arc2);
            if (oracle.distance(verts[i], verts[j]) < shorter) return false;
        }
    }
    return true;
}

bool is_geodetic(const Graph& g, const Cycle& c) {
    DistanceOracle oracle(g);
    return is_geodetic(g, oracle, c);
}

std::optional<Shortcut> find_shortcut(const Graph& g, const DistanceOracle& oracle,
                                      const Cycle& c) {
    const auto& verts = c.vertex_seq();
    const std::size_t n = verts.size();
    if (n <= 1) return std::nullopt;
    const auto prefix = arc_prefix(g, c);
    const Rational total = prefix.back();

    std::set<VertexId> on_cycle(verts.begin(), verts.end());
    const EdgeSet cycle_edges = c.edge_set();
    std::map<VertexId, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[verts[i]] = i;

    struct Candidate {
        Rational gap;
        std::size_t i, j;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational arc1 = prefix[j] - prefix[i];
            const Rational arc2 = total - arc1;
            const Rational shorter = std::min(arc1, arc2);
            const Rational d = oracle.distance(verts[i], verts[j]);
            if (d < shorter) candidates.push_back({shorter - d, i, j});
        }
    }
    if (candidates.empty()) return std::nullopt;
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.gap != b.gap) return a.gap < b.gap;
        if (verts[a.i] != verts[b.i]) return verts[a.i] < verts[b.i];
        return verts[a.j] < verts[b.j];
    });

    auto arcs_between = [&](const VertexId& a, const VertexId& b) {
        const std::size_t i = pos.at(a), j = pos.at(b);
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        const Rational arc1 = prefix[hi] - prefix[lo];
        return std::pair<Rational, Rational>(arc1, total - arc1);
    };

    for (const auto& cand : candidates) {
        PathResult witness = oracle.witness(verts[cand.i], verts[cand.j]);
        // Split at every meeting with the cycle into internally disjoint segments.
        std::size_t seg_start = 0;
        for (std::size_t k = 1; k < witness.vertices.size(); ++k) {
            if (!on_cycle.count(witness.vertices[k])) continue;
            PathResult segment;
            segment.vertices.assign(witness.vertices.begin() + seg_start,
                                    witness.vertices.begin() + k + 1);
            segment.edges.assign(witness.edges.begin() + seg_start,
                                 witness.edges.begin() + k);
            segment.length = 0;
            for (const auto& id : segment.edges) segment.length += g.edge(id).length;
            seg_start = k;

            // A segment that is itself a cycle edge coincides with an arc.
            if (segment.edges.size() == 1 && cycle_edges.count(segment.edges.front()))
                continue;
            const VertexId a = segment.vertices.front();
            const VertexId b = segment.vertices.back();
            if (a == b) continue;
            auto [arc1, arc2] = arcs_between(a, b);
            if (segment.length < arc1 && segment.length < arc2) {
                Shortcut result;
                result.x = a;
                result.y = b;
                result.path = std::move(segment);
                result.arc_short = std::min(arc1, arc2);
                result.arc_long = std::max(arc1, arc2);
                return result;
            }
        }
    }
    // A strict pair exists, so one of its witness segments must beat its arcs.
    GEOCYCLE_CHECK(false);
    return std::nullopt;
}

}  // namespace geocycle
