#pragma once

#include "geocycle/graph.hpp"

#include <vector>

namespace geocycle {

// Edges appearing in an odd number of members.
EdgeSet symmetric_sum(const std::vector<EdgeSet>& family);

// True iff every vertex is incident with an even number of edges of x
// (loops count twice). Throws InputError on unknown edge ids.
bool is_cycle_space_member(const Graph& g, const EdgeSet& x);

// Splits a cycle-space member into pairwise edge-disjoint cycles whose
// symmetric sum equals x. Deterministic: each extraction walks from the least
// positive-degree vertex, always leaving by the least unused edge id, and
// closes at the first vertex repetition.
std::vector<Cycle> decompose_into_circuits(const Graph& g, const EdgeSet& x);

// Exact sum of member edge lengths.
Rational set_length(const Graph& g, const EdgeSet& x);

}  // namespace geocycle
