#pragma once

#include <vector>

#include "gwa/core/graph.hpp"
#include "gwa/core/signature.hpp"

namespace gwa {

/// Violation kinds: "duplicate direction", "unknown opposite", "opposite not
/// involutive", "duplicate label", "unknown direction", "duplicate label
/// direction", "no initial label".
ValidationReport validate_signature(const Signature& sig);

/// Violation kinds: "empty graph", "missing edge", "unexpected edge",
/// "asymmetric edge", "conflicting edge", "initial node without initial
/// label", "initial label off the initial node", "disconnected".
///
/// Throws StructuralError if the graph references labels or directions
/// outside `sig` (a graph built over another signature).
ValidationReport validate_graph(const Graph& g, const Signature& sig);
ValidationReport validate_graph(const Graph& g);

/// Partition of the nodes under undirected reachability along edges. Each
/// component is sorted; components are ordered by their smallest node.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

}  // namespace gwa
