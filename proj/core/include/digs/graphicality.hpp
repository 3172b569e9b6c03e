#pragma once

#include <optional>

#include "digs/degree_sequence.hpp"
#include "digs/digraph.hpp"

namespace digs {

// Fulkerson-Chen-Anstee criterion: sorting by in-degree descending (out-degree
// descending as tiebreak), the sequence is digraphical iff for every k
//
//   sum_{i<=k} din_i  <=  sum_{i<=k} min(dout_i, k-1) + sum_{i>k} min(dout_i, k).
//
// O(n log n) via two Fenwick trees over out-degree values.
bool is_digraphical(const DegreeSequence& d);

// Independent feasibility oracle: unit-capacity bipartite flow from out-stub
// nodes to in-stub nodes with the diagonal arcs removed; the sequence is
// digraphical iff the max flow saturates all m stubs, and a realization is
// read off the saturated arcs.  Builds n^2 arcs, intended for small n.
std::optional<Digraph> realize_via_flow(const DegreeSequence& d);

}  // namespace digs
