#pragma once

#include "geocycle/graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace geocycle {

struct NeighborEdge {
    EdgeId edge;
    VertexId to;
    Rational length;
};

// A closed edge walk given by raw sequences, used to describe cycles of a
// generated graph without materialising the graph. vertices[k] starts
// edges[k]; the walk wraps around.
struct ClosedWalk {
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;

    static ClosedWalk from_cycle(const Cycle& c) { return {c.edge_ids(), c.vertex_seq()}; }
};

// Generator description of a locally finite graph: a root plus a pure
// neighbor function. Generators must be deterministic (same vertex, same
// list). Optional capabilities hand exact or certified analytic knowledge to
// the truncation machinery:
//   - analytic_distance: exact global distance between two vertices
//   - ray layout: the vertices enumerated along a spanning ray whose induced
//     lengths make every edge isometric to a subinterval of [0,1); positions
//     then determine all distances exactly
//   - spread_upper: certified upper bound for the spread of the region
//     outside each ball (supremum of distances of points joinable there)
//   - min_edge_length: positive lower bound on every edge length
class GraphFamily {
public:
    virtual ~GraphFamily() = default;

    virtual std::string name() const = 0;
    virtual VertexId root() const = 0;
    virtual bool has_vertex(const VertexId& v) const = 0;
    virtual std::vector<NeighborEdge> neighbors(const VertexId& v) const = 0;
    virtual bool is_finite() const = 0;
    virtual bool one_ended() const { return false; }

    virtual std::optional<Rational> analytic_distance(const VertexId&, const VertexId&) const {
        return std::nullopt;
    }
    virtual bool has_ray_layout() const { return false; }
    virtual Rational ray_position(const VertexId&) const;
    virtual VertexId ray_vertex(std::size_t) const;
    virtual std::optional<Rational> spread_upper(int) const { return std::nullopt; }
    virtual std::optional<Rational> min_edge_length() const { return std::nullopt; }
};

enum class LengthScheme { Unit, Nst, DyadicHarmonic };

std::string to_string(LengthScheme scheme);
LengthScheme length_scheme_from_string(const std::string& text);

// Two-rail ladder: rails x1 x2 ... and y1 y2 ..., rung x_n y_n for every n.
// Schemes: unit lengths; normal-spanning-tree lengths along the zigzag ray;
// dyadic upper rail and rungs with harmonic lower rail. Pass a rung count to
// get the finite ladder instead.
std::shared_ptr<const GraphFamily> make_ladder(LengthScheme scheme,
                                               std::optional<int> rungs = std::nullopt);

// Ladder with the n-th rung subdivided into 2n edges for n >= 2 (rung 1 stays
// a single edge). Schemes: unit or normal-spanning-tree lengths.
std::shared_ptr<const GraphFamily> make_subdivided_ladder(
    LengthScheme scheme, std::optional<int> rungs = std::nullopt);

// Wraps an explicit finite graph as a family rooted at the given vertex
// (default: least vertex id).
std::shared_ptr<const GraphFamily> make_finite_family(Graph g,
                                                      std::optional<VertexId> root = std::nullopt);

// The square between rungs n and n+1 as a closed walk, for ladder families.
// Throws InputError for non-ladder families.
ClosedWalk family_square_walk(const GraphFamily& f, int n);

// Edge id of the n-th rung's first segment (the whole rung when unsubdivided).
EdgeId family_first_rung_edge(const GraphFamily& f);

// Consecutive lower-rail / upper-rail edge lengths, for series probes.
std::vector<Rational> family_lower_rail_lengths(const GraphFamily& f, int count);
std::vector<Rational> family_upper_rail_lengths(const GraphFamily& f, int count);

}  // namespace geocycle
