#pragma once

#include "geocycle/family.hpp"
#include "geocycle/geodesy.hpp"
#include "geocycle/graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace geocycle {

// Certified enclosure of a nonnegative quantity. A missing upper end means no
// finite certificate exists (the quantity may be unbounded).
struct Interval {
    Rational lo;
    std::optional<Rational> hi;

    static Interval exact(Rational v) { return {v, v}; }
    bool is_exact() const { return hi && *hi == lo; }
    bool is_bounded() const { return hi.has_value(); }
};

struct OuterEdge {
    EdgeId id;
    VertexId u;
    VertexId v;
    Interval length;  // always bounded; encloses the true global distance
};

// Finite stage of the approximation hierarchy around the family root:
//   ball     — vertices within graph radius `radius`
//   inner    — graph on `closure` (radius+1 ball) keeping edges incident to
//              the ball
//   augmented— inner plus one outer edge per rim pair lying in a common
//              component beyond the ball; outer scalar lengths in `augmented`
//              are the certified upper ends, exact when `exact_lengths`
struct Truncation {
    int radius = 0;
    std::set<VertexId> ball;
    std::set<VertexId> closure;
    std::set<VertexId> rim;
    Graph inner;
    Graph augmented;
    std::map<EdgeId, OuterEdge> outer;
    bool exact_lengths = true;

    bool is_outer(const EdgeId& id) const { return outer.count(id) > 0; }
};

// Exact edge-set length in a truncation; outer edges contribute their
// certified enclosures.
Interval edge_set_length(const Truncation& t, const EdgeSet& edges);

// Replaces every excursion of the walk beyond the truncation by the outer
// edge with the same endpoints. A walk avoiding the ball restricts to
// nothing. Cycles restrict to cycles; open walks to open walks, with tails
// beyond the last crossing dropped.
std::optional<Cycle> restrict_to(const Truncation& target, const ClosedWalk& walk);
std::optional<PathResult> restrict_path_to(const Truncation& target,
                                           const std::vector<EdgeId>& edges,
                                           const std::vector<VertexId>& vertices);

enum class Verdict { Consistent, Refuted, Inconclusive };
std::string to_string(Verdict v);

struct Diagnostic {
    std::vector<Interval> spreads;  // index i-1 holds the bound for radius i
    Verdict verdict = Verdict::Inconclusive;
};

struct UniverseOptions {
    Rational tol = Rational(1, 1024);
    int horizon_budget = 96;      // exploration radius ceiling
    int stabilize_layers = 3;     // extra layers before components are trusted
};

// Cached exploration of one graph family: balls, truncations, certified
// distances and spreads, and per-truncation distance oracles. Build and
// query from a single thread; completed values are plain data.
class FamilyUniverse {
public:
    explicit FamilyUniverse(std::shared_ptr<const GraphFamily> family,
                            UniverseOptions options = {});

    const GraphFamily& family() const { return *family_; }
    const UniverseOptions& options() const { return options_; }

    // S_i, by edge-count radius. Exhausted finite families return the full set.
    std::set<VertexId> ball(int i);

    const Truncation& truncation(int i);

    // Certified enclosure of the global distance.
    Interval distance(const VertexId& u, const VertexId& v);
    Interval distance(const VertexId& u, const VertexId& v, const Rational& tol);

    // Certified enclosure of the spread outside the radius-(i-1) ball: the
    // supremum of global distances between points joinable beyond it.
    Interval outer_spread(int i);

    // All-pairs oracle over truncation(i).augmented; requires exact lengths.
    const DistanceOracle& oracle(int i);

    Diagnostic metric_diagnostic(int depth);

    // Largest explored radius at which the family is already exhausted, if any.
    std::optional<int> exhaustion_radius();

private:
    struct Exploration;
    std::shared_ptr<const GraphFamily> family_;
    UniverseOptions options_;
    std::shared_ptr<Exploration> world_;
    std::map<int, Truncation> truncations_;
    std::map<int, Interval> spreads_;
    std::map<int, std::shared_ptr<DistanceOracle>> oracles_;

    void ensure_radius(int r);
    Graph explored_graph(int r);  // graph on S_{r+1} with edges incident to S_r
    Interval ray_spread(int i);
    std::vector<std::pair<std::set<VertexId>, bool>> outside_components(int i, int radius);
};

}  // namespace geocycle
