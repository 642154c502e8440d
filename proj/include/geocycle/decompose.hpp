#pragma once

#include "geocycle/geodesy.hpp"
#include "geocycle/graph.hpp"

#include <string>
#include <vector>

namespace geocycle {

// Result of splitting a cycle or edge set into geodetic cycles. Invariants:
// the parts XOR back to the input, every part is geodetic in the host graph,
// and every part length is at most `bound`.
struct Decomposition {
    EdgeSet input_edges;
    std::vector<Cycle> parts;
    Rational bound;
    std::vector<std::string> trace;  // one line per split, for termination audits
    std::size_t max_depth = 0;
};

// Splits a cycle into geodetic cycles of length at most the cycle's own
// length, by repeatedly cutting along a shortcut. Both halves are strictly
// shorter than their parent, which bounds the recursion by the number of
// distinct cycles of the graph.
Decomposition geodetic_decomposition(const Graph& g, const DistanceOracle& oracle,
                                     const Cycle& c, bool record_trace = false);
Decomposition geodetic_decomposition(const Graph& g, const Cycle& c,
                                     bool record_trace = false);

// Cycle-space member -> edge-disjoint circuits -> geodetic parts per circuit.
// Bound is the largest circuit length (0 for the empty set).
Decomposition geodetic_generating_set(const Graph& g, const EdgeSet& x);

// Splits a cycle into geodetic cycles of length at most 5*eps, given that
//   - `part` is a contiguous arc of c (the tracked sub-arc of the original
//     cycle) and the complementary arc has length at most eps, and
//   - eps is a certified upper bound on the spread of the region the cycle
//     lives in: any two of its vertices are joined by a path of length <= eps.
// Pass the full edge set of c as `part` for a fresh cycle. Violated
// hypotheses (an arc edge longer than 2*eps, or a connecting path longer
// than eps) raise CertificationError.
Decomposition short_decomposition(const Graph& g, const DistanceOracle& oracle,
                                  const Cycle& c, const Rational& eps,
                                  const EdgeSet& part, bool record_trace = false);

}  // namespace geocycle
