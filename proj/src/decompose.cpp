#include "geocycle/decompose.hpp"

#include "geocycle/edge_space.hpp"
#include "geocycle/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace geocycle {

namespace {

struct StackItem {
    Cycle cycle;
    std::size_t depth;
};

std::string describe_split(const Cycle& c, const Shortcut& cut) {
    std::ostringstream out;
    out << "split cycle of " << c.size() << " edges at " << cut.x << ".." << cut.y
        << " via path of " << cut.path.edges.size() << " edges";
    return out.str();
}

// Cuts the cycle along the shortcut into the two cycles path+arc1, path+arc2.
std::pair<Cycle, Cycle> split_at_shortcut(const Graph& g, const Cycle& c,
                                          const Shortcut& cut) {
    const auto& verts = c.vertex_seq();
    const auto& edges = c.edge_ids();
    const std::size_t n = verts.size();
    std::size_t pi = 0, pj = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (verts[k] == cut.x) pi = k;
        if (verts[k] == cut.y) pj = k;
    }
    if (pi > pj) std::swap(pi, pj);

    // Arc 1: edges [pi, pj); arc 2: the rest.
    std::vector<EdgeId> arc1(edges.begin() + pi, edges.begin() + pj);
    std::vector<EdgeId> arc2(edges.begin() + pj, edges.end());
    arc2.insert(arc2.end(), edges.begin(), edges.begin() + pi);

    auto with_path = [&](std::vector<EdgeId> arc) {
        arc.insert(arc.end(), cut.path.edges.begin(), cut.path.edges.end());
        return Cycle::from_edge_walk(g, arc);
    };
    return {with_path(std::move(arc1)), with_path(std::move(arc2))};
}

}  // namespace

Decomposition geodetic_decomposition(const Graph& g, const DistanceOracle& oracle,
                                     const Cycle& c, bool record_trace) {
    Decomposition result;
    result.input_edges = c.edge_set();
    result.bound = c.length(g);

    std::deque<StackItem> work;
    work.push_back({c, 0});
    std::size_t iterations = 0;
    while (!work.empty()) {
        GEOCYCLE_CHECK(++iterations < 1000000);
        StackItem item = std::move(work.front());
        work.pop_front();
        result.max_depth = std::max(result.max_depth, item.depth);

        auto cut = find_shortcut(g, oracle, item.cycle);
        if (!cut) {
            result.parts.push_back(std::move(item.cycle));
            continue;
        }
        if (record_trace) result.trace.push_back(describe_split(item.cycle, *cut));
        auto [left, right] = split_at_shortcut(g, item.cycle, *cut);
        GEOCYCLE_CHECK(left.length(g) < item.cycle.length(g));
        GEOCYCLE_CHECK(right.length(g) < item.cycle.length(g));
        work.push_back({std::move(left), item.depth + 1});
        work.push_back({std::move(right), item.depth + 1});
    }

    std::vector<EdgeSet> sets;
    sets.reserve(result.parts.size());
    for (const auto& p : result.parts) sets.push_back(p.edge_set());
    GEOCYCLE_CHECK(symmetric_sum(sets) == result.input_edges);
    return result;
}

Decomposition geodetic_decomposition(const Graph& g, const Cycle& c, bool record_trace) {
    DistanceOracle oracle(g);
    return geodetic_decomposition(g, oracle, c, record_trace);
}

Decomposition geodetic_generating_set(const Graph& g, const EdgeSet& x) {
    Decomposition result;
    result.input_edges = x;
    result.bound = 0;
    if (x.empty()) return result;

    DistanceOracle oracle(g);
    for (const auto& circuit : decompose_into_circuits(g, x)) {
        result.bound = std::max(result.bound, circuit.length(g));
        auto sub = geodetic_decomposition(g, oracle, circuit);
        result.max_depth = std::max(result.max_depth, sub.max_depth);
        for (auto& part : sub.parts) result.parts.push_back(std::move(part));
    }
    std::vector<EdgeSet> sets;
    for (const auto& p : result.parts) sets.push_back(p.edge_set());
    GEOCYCLE_CHECK(symmetric_sum(sets) == result.input_edges);
    return result;
}

namespace {

// A cycle with a distinguished contiguous arc (the tracked part, edges
// [0, part_len) of the stored orientation) whose complementary arc is short.
struct Sector {
    std::vector<EdgeId> edges;
    std::vector<VertexId> verts;  // verts[k] starts edges[k]; wraps at the end
    std::size_t part_len;

    Rational length(const Graph& g) const {
        Rational total = 0;
        for (const auto& id : edges) total += g.edge(id).length;
        return total;
    }
    Rational part_prefix(const Graph& g, std::size_t upto) const {
        Rational total = 0;
        for (std::size_t k = 0; k < upto; ++k) total += g.edge(edges[k]).length;
        return total;
    }
};

Sector sector_from_cycle(const Graph& g, const Cycle& c, const EdgeSet& part,
                         const Rational& eps) {
    const auto& edges = c.edge_ids();
    const auto& verts = c.vertex_seq();
    const std::size_t n = edges.size();
    const EdgeSet cycle_edges = c.edge_set();
    for (const auto& id : part) {
        if (!cycle_edges.count(id))
            throw InputError("tracked arc edge '" + id + "' is not on the cycle");
    }
    if (part.size() == n) {
        return Sector{edges, verts, n};
    }
    // Locate the contiguous circular run of part edges and rotate it to the front.
    std::vector<bool> in_part(n);
    for (std::size_t k = 0; k < n; ++k) in_part[k] = part.count(edges[k]) > 0;
    std::size_t start = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (in_part[k] && !in_part[(k + n - 1) % n]) {
            if (start != n) throw InputError("tracked arc must be contiguous on the cycle");
            start = k;
        }
    }
    if (start == n) throw InputError("tracked arc must be a nonempty proper arc");
    for (std::size_t k = 0; k < part.size(); ++k) {
        if (!in_part[(start + k) % n])
            throw InputError("tracked arc must be contiguous on the cycle");
    }
    Sector s;
    s.part_len = part.size();
    for (std::size_t k = 0; k < n; ++k) {
        s.edges.push_back(edges[(start + k) % n]);
        s.verts.push_back(verts[(start + k) % n]);
    }
    Rational complement = 0;
    for (std::size_t k = s.part_len; k < n; ++k) complement += g.edge(s.edges[k]).length;
    if (complement > eps)
        throw CertificationError("complementary arc longer than the certified bound");
    return s;
}

}  // namespace

Decomposition short_decomposition(const Graph& g, const DistanceOracle& oracle,
                                  const Cycle& c, const Rational& eps, const EdgeSet& part,
                                  bool record_trace) {
    if (eps <= 0) throw InputError("the certified bound must be positive");
    Decomposition result;
    result.input_edges = c.edge_set();
    result.bound = Rational(5) * eps;

    std::deque<Sector> work;
    work.push_back(sector_from_cycle(g, c, part, eps));
    std::vector<Cycle> finals;

    std::size_t iterations = 0;
    while (!work.empty()) {
        GEOCYCLE_CHECK(++iterations < 1000000);
        Sector sector = std::move(work.front());
        work.pop_front();

        const Rational total = sector.length(g);
        if (total <= result.bound) {
            finals.push_back(Cycle::from_edge_walk(g, sector.edges));
            continue;
        }

        // Hypothesis check: every tracked-arc edge fits inside the certified
        // region twice over; a longer edge means the bound was wrong.
        for (std::size_t k = 0; k < sector.part_len; ++k) {
            if (g.edge(sector.edges[k]).length > Rational(2) * eps)
                throw CertificationError("arc edge '" + sector.edges[k] +
                                         "' longer than twice the certified bound");
        }

        // Pivot: first vertex along the tracked arc farther than eps from its start.
        std::size_t pivot = 0;
        Rational acc = 0;
        for (std::size_t k = 1; k <= sector.part_len; ++k) {
            acc += g.edge(sector.edges[k - 1]).length;
            if (acc > eps) {
                pivot = k;
                break;
            }
        }
        GEOCYCLE_CHECK(pivot > 0 && pivot < sector.part_len);
        GEOCYCLE_CHECK(acc <= Rational(3) * eps);

        const VertexId z = sector.verts[pivot];
        const VertexId y = sector.verts[sector.part_len % sector.verts.size()];
        PathResult connector = oracle.witness(z, y);
        if (connector.length > eps)
            throw CertificationError("no connecting path within the certified bound from '" +
                                     z + "' to '" + y + "'");
        if (record_trace) {
            std::ostringstream line;
            line << "sector of " << sector.edges.size() << " edges, pivot " << z
                 << ", connector of " << connector.edges.size() << " edges";
            result.trace.push_back(line.str());
        }

        // Far side plus connector is a cycle-space member of total length <= 5*eps.
        EdgeSet far_side;
        for (std::size_t k = 0; k < pivot; ++k) far_side.insert(sector.edges[k]);
        for (std::size_t k = sector.part_len; k < sector.edges.size(); ++k)
            far_side.insert(sector.edges[k]);
        EdgeSet connector_set(connector.edges.begin(), connector.edges.end());
        EdgeSet mix = symmetric_sum({far_side, connector_set});
        for (auto& circuit : decompose_into_circuits(g, mix)) {
            GEOCYCLE_CHECK(circuit.length(g) <= result.bound);
            finals.push_back(std::move(circuit));
        }

        // Near side plus connector splits into smaller sectors along the
        // connector's meetings with the remaining tracked arc.
        std::map<VertexId, std::size_t> q1_pos;
        for (std::size_t k = pivot; k <= sector.part_len; ++k)
            q1_pos[sector.verts[k % sector.verts.size()]] = k;
        std::vector<std::size_t> meetings;  // indices into connector.vertices
        for (std::size_t k = 0; k < connector.vertices.size(); ++k) {
            if (q1_pos.count(connector.vertices[k])) meetings.push_back(k);
        }
        GEOCYCLE_CHECK(meetings.size() >= 2);
        GEOCYCLE_CHECK(meetings.front() == 0 &&
                       meetings.back() == connector.vertices.size() - 1);

        for (std::size_t m = 0; m + 1 < meetings.size(); ++m) {
            const std::size_t pa = meetings[m], pb = meetings[m + 1];
            const VertexId va = connector.vertices[pa];
            const VertexId vb = connector.vertices[pb];
            std::size_t qa = q1_pos.at(va), qb = q1_pos.at(vb);
            if (qa > qb) std::swap(qa, qb);

            std::vector<EdgeId> arc_edges(sector.edges.begin() + qa,
                                          sector.edges.begin() + qb);
            std::vector<EdgeId> conn_edges(connector.edges.begin() + pa,
                                           connector.edges.begin() + pb);
            if (arc_edges.size() == 1 && conn_edges.size() == 1 &&
                arc_edges[0] == conn_edges[0])
                continue;  // the two routes coincide, nothing to add

            Sector child;
            child.part_len = arc_edges.size();
            child.edges = arc_edges;
            child.edges.insert(child.edges.end(), conn_edges.rbegin(), conn_edges.rend());
            for (std::size_t k = qa; k < qb; ++k)
                child.verts.push_back(sector.verts[k % sector.verts.size()]);
            child.verts.push_back(sector.verts[qb % sector.verts.size()]);
            // Walk the connector segment backwards, skipping its endpoints.
            for (std::size_t k = pb; k-- > pa + 1;)
                child.verts.push_back(connector.vertices[k]);
            GEOCYCLE_CHECK(child.verts.size() == child.edges.size());
            GEOCYCLE_CHECK(child.length(g) < total);
            work.push_back(std::move(child));
        }
    }

    // Every short cycle splits further into geodetic ones within the bound.
    for (const auto& cycle : finals) {
        auto sub = geodetic_decomposition(g, oracle, cycle, record_trace);
        for (auto& p : sub.parts) {
            GEOCYCLE_CHECK(p.length(g) <= result.bound);
            result.parts.push_back(std::move(p));
        }
        for (auto& line : sub.trace) result.trace.push_back(std::move(line));
    }

    std::vector<EdgeSet> sets;
    for (const auto& p : result.parts) sets.push_back(p.edge_set());
    GEOCYCLE_CHECK(symmetric_sum(sets) == result.input_edges);
    return result;
}

}  // namespace geocycle
