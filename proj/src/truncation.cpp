#include "geocycle/truncation.hpp"

#include "geocycle/errors.hpp"

#include <algorithm>
#include <queue>

namespace geocycle {

Interval edge_set_length(const Truncation& t, const EdgeSet& edges) {
    Interval total{0, Rational(0)};
    for (const auto& id : edges) {
        auto it = t.outer.find(id);
        if (it != t.outer.end()) {
            total.lo += it->second.length.lo;
            GEOCYCLE_CHECK(it->second.length.hi.has_value());
            *total.hi += *it->second.length.hi;
        } else {
            const Rational& len = t.augmented.edge(id).length;
            total.lo += len;
            *total.hi += len;
        }
    }
    return total;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "CONSISTENT";
        case Verdict::Refuted: return "REFUTED";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

namespace {

std::map<std::pair<VertexId, VertexId>, EdgeId> outer_pair_index(const Truncation& t) {
    std::map<std::pair<VertexId, VertexId>, EdgeId> index;
    for (const auto& [id, oe] : t.outer)
        index[{std::min(oe.u, oe.v), std::max(oe.u, oe.v)}] = id;
    return index;
}

}  // namespace

std::optional<Cycle> restrict_to(const Truncation& target, const ClosedWalk& walk) {
    GEOCYCLE_CHECK(walk.edges.size() == walk.vertices.size());
    const std::size_t n = walk.edges.size();
    bool meets_ball = false;
    for (const auto& v : walk.vertices) {
        if (target.ball.count(v)) {
            meets_ball = true;
            break;
        }
    }
    if (!meets_ball) return std::nullopt;

    std::size_t start = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (target.inner.has_edge(walk.edges[k])) {
            start = k;
            break;
        }
    }
    GEOCYCLE_CHECK(start < n);

    const auto outer_index = outer_pair_index(target);
    std::vector<EdgeId> result;
    std::optional<VertexId> excursion_from;
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t k = (start + step) % n;
        const EdgeId& id = walk.edges[k];
        const VertexId& from = walk.vertices[k];
        const VertexId& to = walk.vertices[(k + 1) % n];
        if (target.inner.has_edge(id)) {
            GEOCYCLE_CHECK(!excursion_from.has_value());
            result.push_back(id);
            continue;
        }
        if (!excursion_from) {
            if (!target.closure.count(from))
                throw InputError("walk is not hosted above this truncation");
            excursion_from = from;
        }
        if (target.closure.count(to)) {
            auto it = outer_index.find({std::min(*excursion_from, to), std::max(*excursion_from, to)});
            if (it == outer_index.end())
                throw InputError("no outer edge joins '" + *excursion_from + "' and '" + to +
                                 "'; walk is not hosted above this truncation");
            result.push_back(it->second);
            excursion_from.reset();
        }
    }
    GEOCYCLE_CHECK(!excursion_from.has_value());
    return Cycle::from_edge_walk(target.augmented, result);
}

std::optional<PathResult> restrict_path_to(const Truncation& target,
                                           const std::vector<EdgeId>& edges,
                                           const std::vector<VertexId>& vertices) {
    GEOCYCLE_CHECK(vertices.size() == edges.size() + 1);
    bool meets_ball = false;
    for (const auto& v : vertices) {
        if (target.ball.count(v)) {
            meets_ball = true;
            break;
        }
    }
    if (!meets_ball) return std::nullopt;

    std::size_t first = edges.size(), last = edges.size();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (target.inner.has_edge(edges[k])) {
            if (first == edges.size()) first = k;
            last = k;
        }
    }
    GEOCYCLE_CHECK(first <= last && last < edges.size());

    const auto outer_index = outer_pair_index(target);
    PathResult out;
    out.vertices.push_back(vertices[first]);
    std::optional<VertexId> excursion_from;
    for (std::size_t k = first; k <= last; ++k) {
        const EdgeId& id = edges[k];
        const VertexId& from = vertices[k];
        const VertexId& to = vertices[k + 1];
        if (target.inner.has_edge(id)) {
            GEOCYCLE_CHECK(!excursion_from.has_value());
            out.edges.push_back(id);
            out.vertices.push_back(to);
            continue;
        }
        if (!excursion_from) {
            if (!target.closure.count(from))
                throw InputError("walk is not hosted above this truncation");
            excursion_from = from;
        }
        if (target.closure.count(to)) {
            auto it = outer_index.find({std::min(*excursion_from, to), std::max(*excursion_from, to)});
            if (it == outer_index.end())
                throw InputError("no outer edge joins '" + *excursion_from + "' and '" + to +
                                 "'; walk is not hosted above this truncation");
            out.edges.push_back(it->second);
            out.vertices.push_back(to);
            excursion_from.reset();
        }
    }
    GEOCYCLE_CHECK(!excursion_from.has_value());
    out.length = 0;
    for (const auto& id : out.edges) out.length += target.augmented.edge(id).length;
    return out;
}

// ---------------------------------------------------------------------------

struct FamilyUniverse::Exploration {
    std::vector<std::vector<VertexId>> layers;
    std::map<VertexId, int> depth_of;
    std::map<VertexId, std::vector<NeighborEdge>> adjacency;
    std::optional<int> exhausted_at;  // least radius whose next layer is empty
    int built = -1;                   // layers 0..built are final

    const std::vector<NeighborEdge>& neighbors(const GraphFamily& f, const VertexId& v) {
        auto it = adjacency.find(v);
        if (it == adjacency.end()) it = adjacency.emplace(v, f.neighbors(v)).first;
        return it->second;
    }
};

FamilyUniverse::FamilyUniverse(std::shared_ptr<const GraphFamily> family,
                               UniverseOptions options)
    : family_(std::move(family)), options_(std::move(options)),
      world_(std::make_shared<Exploration>()) {
    world_->layers.push_back({family_->root()});
    world_->depth_of[family_->root()] = 0;
    world_->built = 0;
}

void FamilyUniverse::ensure_radius(int r) {
    GEOCYCLE_CHECK(r >= 0);
    while (world_->built < r && !world_->exhausted_at) {
        const int next = world_->built + 1;
        std::vector<VertexId> layer;
        for (const auto& v : world_->layers[world_->built]) {
            for (const auto& nb : world_->neighbors(*family_, v)) {
                if (!world_->depth_of.count(nb.to)) {
                    world_->depth_of[nb.to] = next;
                    layer.push_back(nb.to);
                }
            }
        }
        std::sort(layer.begin(), layer.end());
        if (layer.empty()) {
            world_->exhausted_at = world_->built;
            return;
        }
        world_->layers.push_back(std::move(layer));
        world_->built = next;
    }
}

std::set<VertexId> FamilyUniverse::ball(int i) {
    if (i < 0) return {};
    ensure_radius(i);
    std::set<VertexId> out;
    const int top = std::min<int>(i, world_->built);
    for (int r = 0; r <= top; ++r)
        out.insert(world_->layers[r].begin(), world_->layers[r].end());
    return out;
}

std::optional<int> FamilyUniverse::exhaustion_radius() {
    return world_->exhausted_at;
}

Graph FamilyUniverse::explored_graph(int r) {
    ensure_radius(r + 1);
    Graph g;
    const int top = std::min<int>(r + 1, world_->built);
    for (int layer = 0; layer <= top; ++layer)
        for (const auto& v : world_->layers[layer]) g.add_vertex(v);
    const int inner_top = std::min<int>(r, world_->built);
    for (int layer = 0; layer <= inner_top; ++layer) {
        for (const auto& v : world_->layers[layer]) {
            for (const auto& nb : world_->neighbors(*family_, v)) {
                if (!g.has_edge(nb.edge)) g.add_edge(nb.edge, v, nb.to, nb.length);
            }
        }
    }
    return g;
}

namespace {

std::map<VertexId, Rational> dijkstra_distances(const Graph& g, const VertexId& source) {
    std::map<VertexId, Rational> dist;
    std::set<std::pair<Rational, VertexId>> queue;
    dist[source] = 0;
    queue.insert({Rational(0), source});
    while (!queue.empty()) {
        auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        if (dist.at(v) < d) continue;
        for (std::size_t idx : g.incident(v)) {
            const Edge& e = g.edge_at(idx);
            const VertexId w = e.other(v);
            const Rational cand = d + e.length;
            auto it = dist.find(w);
            if (it == dist.end() || cand < it->second) {
                if (it != dist.end()) queue.erase({it->second, w});
                dist[w] = cand;
                queue.insert({cand, w});
            }
        }
    }
    return dist;
}

}  // namespace

Interval FamilyUniverse::distance(const VertexId& u, const VertexId& v) {
    return distance(u, v, options_.tol);
}

Interval FamilyUniverse::distance(const VertexId& u, const VertexId& v, const Rational& tol) {
    if (!family_->has_vertex(u)) throw InputError("unknown vertex '" + u + "'");
    if (!family_->has_vertex(v)) throw InputError("unknown vertex '" + v + "'");
    if (u == v) return Interval::exact(0);
    if (auto d = family_->analytic_distance(u, v)) return Interval::exact(*d);

    // Locate both endpoints first.
    while ((!world_->depth_of.count(u) || !world_->depth_of.count(v)) &&
           !world_->exhausted_at) {
        if (world_->built >= options_.horizon_budget)
            throw CertificationError("endpoints beyond the horizon budget");
        ensure_radius(world_->built + 4);
    }
    if (!world_->depth_of.count(u) || !world_->depth_of.count(v))
        throw InputError("vertex not reachable from the family root");

    int horizon = std::max(world_->depth_of.at(u), world_->depth_of.at(v)) + 1;
    while (true) {
        ensure_radius(horizon + 1);
        const Graph box = explored_graph(horizon);
        const auto from_u = dijkstra_distances(box, u);
        const auto from_v = dijkstra_distances(box, v);

        std::optional<Rational> hi;
        if (auto it = from_u.find(v); it != from_u.end()) hi = it->second;

        const bool exhausted = world_->exhausted_at && *world_->exhausted_at <= horizon;
        if (exhausted) {
            if (!hi) throw NoPathError("no path between '" + u + "' and '" + v + "'");
            return Interval::exact(*hi);
        }

        ensure_radius(horizon + 1);
        const auto& frontier = world_->layers[std::min<int>(horizon + 1, world_->built)];
        std::optional<Rational> exit_u, exit_v;
        for (const auto& f : frontier) {
            if (auto it = from_u.find(f); it != from_u.end())
                if (!exit_u || it->second < *exit_u) exit_u = it->second;
            if (auto it = from_v.find(f); it != from_v.end())
                if (!exit_v || it->second < *exit_v) exit_v = it->second;
        }

        // A true shortest arc either stays inside the explored box or leaves
        // it through the frontier twice.
        if (!exit_u || !exit_v) {
            // One endpoint is sealed inside the box; no arc can leave it.
            if (!hi) throw NoPathError("no path between '" + u + "' and '" + v + "'");
            return Interval::exact(*hi);
        }
        std::optional<Rational> lo;
        if (hi) lo = *hi;
        const Rational jump = *exit_u + *exit_v;
        if (!lo || jump < *lo) lo = jump;

        if (hi && lo && *hi - *lo <= tol) return Interval{*lo, *hi};
        if (horizon >= options_.horizon_budget)
            throw CertificationError("distance from '" + u + "' to '" + v +
                                     "' not certified within the horizon budget");
        horizon = std::min(options_.horizon_budget, horizon + std::max(2, horizon / 2));
    }
}

std::vector<std::pair<std::set<VertexId>, bool>> FamilyUniverse::outside_components(
    int i, int radius) {
    ensure_radius(radius);
    const std::set<VertexId> removed = ball(i);
    const int top = std::min<int>(radius, world_->built);
    std::set<VertexId> inside;  // explored vertices beyond the ball, within radius
    for (int layer = 0; layer <= top; ++layer)
        for (const auto& v : world_->layers[layer])
            if (!removed.count(v)) inside.insert(v);

    const bool can_touch = !(world_->exhausted_at && *world_->exhausted_at <= top);
    std::vector<std::pair<std::set<VertexId>, bool>> comps;
    std::set<VertexId> seen;
    for (const auto& start : inside) {
        if (seen.count(start)) continue;
        std::set<VertexId> comp;
        bool touches = false;
        std::queue<VertexId> q;
        q.push(start);
        seen.insert(start);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            comp.insert(v);
            if (can_touch && world_->depth_of.at(v) >= top) touches = true;
            for (const auto& nb : world_->neighbors(*family_, v)) {
                if (removed.count(nb.to) || !inside.count(nb.to)) continue;
                if (seen.insert(nb.to).second) q.push(nb.to);
            }
        }
        comps.push_back({std::move(comp), touches});
    }
    return comps;
}

namespace {

// Rim partition induced by the component structure, with frontier-touching
// components optionally merged (sound when the family declares one end).
std::vector<std::set<VertexId>> rim_partition(
    const std::vector<std::pair<std::set<VertexId>, bool>>& comps,
    const std::set<VertexId>& rim, bool merge_touching) {
    std::vector<std::set<VertexId>> groups;
    std::set<VertexId> merged;
    for (const auto& [comp, touches] : comps) {
        std::set<VertexId> group;
        for (const auto& v : rim)
            if (comp.count(v)) group.insert(v);
        if (group.empty()) continue;
        if (touches && merge_touching) {
            merged.insert(group.begin(), group.end());
        } else {
            groups.push_back(std::move(group));
        }
    }
    if (!merged.empty()) groups.push_back(std::move(merged));
    std::sort(groups.begin(), groups.end());
    return groups;
}

}  // namespace

const Truncation& FamilyUniverse::truncation(int i) {
    auto cached = truncations_.find(i);
    if (cached != truncations_.end()) return cached->second;
    if (i < 0) throw InputError("truncation index must be >= 0");

    Truncation t;
    t.radius = i;
    t.ball = ball(i);
    t.closure = ball(i + 1);
    for (const auto& v : t.closure)
        if (!t.ball.count(v)) t.rim.insert(v);

    for (const auto& v : t.closure) t.inner.add_vertex(v);
    ensure_radius(i + 1);
    for (const auto& v : t.ball) {
        for (const auto& nb : world_->neighbors(*family_, v)) {
            if (!t.inner.has_edge(nb.edge)) t.inner.add_edge(nb.edge, v, nb.to, nb.length);
        }
    }

    t.augmented = t.inner;
    if (!t.rim.empty()) {
        // Stabilise the component structure beyond the ball.
        const bool merge = family_->one_ended();
        int radius = i + options_.stabilize_layers;
        std::vector<std::set<VertexId>> groups;
        while (true) {
            auto now = rim_partition(outside_components(i, radius), t.rim, merge);
            auto deeper =
                rim_partition(outside_components(i, radius + options_.stabilize_layers),
                              t.rim, merge);
            if (now == deeper) {
                groups = std::move(now);
                break;
            }
            radius += options_.stabilize_layers;
            if (radius > options_.horizon_budget && !world_->exhausted_at)
                throw CertificationError(
                    "component structure beyond the ball did not stabilise");
        }

        for (const auto& group : groups) {
            for (auto it = group.begin(); it != group.end(); ++it) {
                for (auto jt = std::next(it); jt != group.end(); ++jt) {
                    OuterEdge oe;
                    oe.u = std::min(*it, *jt);
                    oe.v = std::max(*it, *jt);
                    oe.id = "outer:" + oe.u + "|" + oe.v;
                    if (auto d = family_->analytic_distance(oe.u, oe.v)) {
                        oe.length = Interval::exact(*d);
                    } else {
                        oe.length = distance(oe.u, oe.v, options_.tol);
                    }
                    GEOCYCLE_CHECK(oe.length.is_bounded());
                    if (!oe.length.is_exact()) t.exact_lengths = false;
                    t.augmented.add_edge(oe.id, oe.u, oe.v, *oe.length.hi);
                    t.outer[oe.id] = std::move(oe);
                }
            }
        }
    }

    return truncations_.emplace(i, std::move(t)).first->second;
}

Interval FamilyUniverse::ray_spread(int i) {
    if (i <= 0) return Interval::exact(Rational(1));  // whole space, root at position 0

    int radius = std::max(i + options_.stabilize_layers, 2 * i);
    while (true) {
        auto comps = outside_components(i - 1, radius);
        const std::set<VertexId> inner_ball = ball(i - 1);

        // p-range per component, including approach points on crossing edges.
        bool end_seen = false;
        std::optional<Rational> end_min;
        Rational best_span = 0;
        for (const auto& [comp, touches] : comps) {
            std::optional<Rational> min_p, max_p;
            auto fold = [&](const Rational& p) {
                if (!min_p || p < *min_p) min_p = p;
                if (!max_p || p > *max_p) max_p = p;
            };
            for (const auto& v : comp) {
                fold(family_->ray_position(v));
                for (const auto& nb : world_->neighbors(*family_, v)) {
                    if (inner_ball.count(nb.to)) fold(family_->ray_position(nb.to));
                }
            }
            if (touches) {
                end_seen = true;
                if (min_p && (!end_min || *min_p < *end_min)) end_min = *min_p;
            } else if (min_p) {
                const Rational span = *max_p - *min_p;
                if (span > best_span) best_span = span;
            }
        }
        GEOCYCLE_CHECK(end_seen && end_min.has_value());

        // Unexplored vertices sit at ray positions above 1 - 2^-radius, so the
        // minimum is final once it beats that threshold.
        const Rational threshold = Rational(1) - pow2_inverse(static_cast<unsigned>(radius));
        if (*end_min < threshold) {
            const Rational end_span = Rational(1) - *end_min;
            return Interval::exact(std::max(end_span, best_span));
        }
        if (radius >= options_.horizon_budget)
            throw CertificationError("spread not certified within the horizon budget");
        radius = std::min(options_.horizon_budget, radius * 2);
    }
}

Interval FamilyUniverse::outer_spread(int i) {
    auto cached = spreads_.find(i);
    if (cached != spreads_.end()) return cached->second;
    if (i < 0) throw InputError("spread index must be >= 0");

    Interval result{0, std::nullopt};
    if (family_->is_finite()) {
        ensure_radius(options_.horizon_budget);
        GEOCYCLE_CHECK(world_->exhausted_at.has_value());
        const int radius = *world_->exhausted_at;
        const Graph whole = explored_graph(radius);
        const auto comps = outside_components(i - 1, radius);
        const std::set<VertexId> inner_ball = ball(i - 1);
        if (comps.empty()) {
            bool crossing = false;
            for (const auto& v : inner_ball)
                for (const auto& nb : world_->neighbors(*family_, v))
                    if (!inner_ball.count(nb.to)) crossing = true;
            GEOCYCLE_CHECK(!crossing);
            result = Interval::exact(0);
        } else {
            DistanceOracle oracle(whole);
            Rational lo = 0, hi = 0;
            for (const auto& [comp, touches] : comps) {
                GEOCYCLE_CHECK(!touches);
                EdgeSet region;  // edges with at least one endpoint in the component
                for (const auto& v : comp) {
                    for (const auto& nb : world_->neighbors(*family_, v)) region.insert(nb.edge);
                    for (const auto& w : comp) {
                        if (v < w) lo = std::max(lo, oracle.distance(v, w));
                    }
                }
                Rational comp_total = 0;
                for (const auto& id : region) comp_total += whole.edge(id).length;
                hi = std::max(hi, comp_total);
            }
            result = Interval{lo, hi};
        }
    } else if (family_->has_ray_layout() && family_->one_ended()) {
        result = ray_spread(i);
    } else {
        // Upper end from the family certificate, if any.
        result.hi = family_->spread_upper(i);

        // Lower end: any edge wholly beyond the ball witnesses min_edge_length;
        // pairs of nearby outside vertices witness their certified distances.
        const std::set<VertexId> inner_ball = ball(i - 1);
        ensure_radius(i + 2);
        std::vector<VertexId> outside;
        for (int layer = std::max(0, i); layer <= std::min(i + 1, world_->built); ++layer)
            for (const auto& v : world_->layers[layer])
                if (!inner_ball.count(v)) outside.push_back(v);

        if (auto rho = family_->min_edge_length()) {
            for (const auto& v : outside) {
                for (const auto& nb : world_->neighbors(*family_, v)) {
                    if (!inner_ball.count(nb.to) && result.lo < *rho) result.lo = *rho;
                }
            }
        }

        auto comps = outside_components(i - 1, i + 1 + options_.stabilize_layers);
        auto joinable = [&](const VertexId& a, const VertexId& b) {
            for (const auto& [comp, touches] : comps) {
                if (comp.count(a) && comp.count(b)) return true;
                if (family_->one_ended() && touches &&
                    (comp.count(a) || comp.count(b))) {
                    // both might sit in touching components; check the other one
                    for (const auto& [other, t2] : comps)
                        if (t2 && other.count(comp.count(a) ? b : a)) return true;
                }
            }
            return false;
        };
        const std::size_t cap = 12;
        for (std::size_t a = 0; a < outside.size() && a < cap; ++a) {
            for (std::size_t b = a + 1; b < outside.size() && b < cap; ++b) {
                if (!joinable(outside[a], outside[b])) continue;
                try {
                    Interval d = distance(outside[a], outside[b]);
                    if (d.lo > result.lo) result.lo = d.lo;
                } catch (const CertificationError&) {
                    // skip pairs that cannot be certified; the bound stays sound
                }
            }
        }
        if (result.hi && result.lo > *result.hi) result.lo = *result.hi;
    }

    spreads_.emplace(i, result);
    return result;
}

const DistanceOracle& FamilyUniverse::oracle(int i) {
    auto cached = oracles_.find(i);
    if (cached != oracles_.end()) return *cached->second;
    const Truncation& t = truncation(i);
    if (!t.exact_lengths)
        throw CertificationError("truncation " + std::to_string(i) +
                                 " has inexact outer lengths; refine the tolerance");
    auto oracle = std::make_shared<DistanceOracle>(t.augmented);
    return *oracles_.emplace(i, std::move(oracle)).first->second;
}

Diagnostic FamilyUniverse::metric_diagnostic(int depth) {
    if (depth < 1) throw InputError("diagnostic depth must be >= 1");
    Diagnostic out;
    for (int i = 1; i <= depth; ++i) out.spreads.push_back(outer_spread(i));

    const Interval& last = out.spreads.back();
    const Interval& mid = out.spreads[(depth + 1) / 2 - 1];

    bool all_bounded = true;
    for (const auto& s : out.spreads) all_bounded &= s.is_bounded();

    if (all_bounded && depth >= 2 && *last.hi <= *mid.hi / 2) {
        out.verdict = Verdict::Consistent;
    } else if (last.lo > 0 && depth >= 2 && last.lo >= mid.lo / 2) {
        out.verdict = Verdict::Refuted;
    } else {
        out.verdict = Verdict::Inconclusive;
    }
    return out;
}

}  // namespace geocycle
