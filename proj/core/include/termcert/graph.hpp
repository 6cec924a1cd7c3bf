#pragma once

#include <set>
#include <utility>
#include <vector>

namespace termcert {

// Strongly connected components of a digraph on nodes 0..n-1, returned in a
// topological order of the condensation: no edge runs from a later component
// to an earlier one. Nodes within a component are sorted ascending; ties
// between order-independent components go to the one with the smallest
// member, so the output is deterministic.
std::vector<std::vector<int>> condensation_in_topo_order(
    int n, const std::set<std::pair<int, int>>& edges);

}  // namespace termcert
