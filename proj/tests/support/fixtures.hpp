#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "gwa/core/canonical.hpp"
#include "gwa/core/generate.hpp"
#include "gwa/core/graph.hpp"
#include "gwa/core/signature.hpp"
#include "gwa/core/validate.hpp"

namespace gwa::testing {

// Two labels over the opposite pair a/-a: initial r and non-initial x, both
// with D = {a, -a}. Valid graphs are exactly the pointed cycles.
inline SignaturePtr cycle_signature() {
  return Signature::make({{"a", "-a"}, {"-a", "a"}}, {{"r", true, {"a", "-a"}}, {"x", false, {"a", "-a"}}});
}

// Two self-opposite directions s, t; initial r with {s}, x with {s, t}.
inline SignaturePtr self_opposite_signature() {
  return Signature::make({{"s", "s"}, {"t", "t"}}, {{"r", true, {"s"}}, {"x", false, {"s", "t"}}});
}

// Grid-like signature with two pairs and three labels.
inline SignaturePtr grid_signature() {
  return Signature::make({{"a", "-a"}, {"-a", "a"}, {"b", "-b"}, {"-b", "b"}},
                         {{"r1", true, {"a", "-a"}}, {"r2", true, {"b", "-b"}}, {"x", false, {"a", "-a", "b", "-b"}}});
}

// Permutes node ids; the node listed first in `order` becomes index 0 etc.
inline Graph permuted(const Graph& g, const std::vector<std::size_t>& order, const std::string& prefix = "p") {
  GraphBuilder b(g.signature_ptr());
  std::vector<NodeId> image(g.node_count());
  for (std::size_t i = 0; i < order.size(); ++i) {
    image[order[i]] = b.add_node(prefix + std::to_string(order[i]), g.label(NodeId(order[i])));
  }
  const Signature& sig = g.signature();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    for (std::size_t d = 0; d < sig.direction_count(); ++d) {
      NodeId u = g.neighbor(NodeId(v), DirId(d));
      if (u.valid()) b.set_half_edge(image[v], DirId(d), image[u.index()]);
    }
  }
  b.set_initial(image[g.initial().index()]);
  return std::move(b).build();
}

// Brute-force isomorphism oracle: tries every bijection fixing nothing but
// the pointed structure. Only for tiny graphs.
inline bool isomorphic_bruteforce(const Graph& x, const Graph& y) {
  if (x.node_count() != y.node_count()) return false;
  const Signature& sig = x.signature();
  std::vector<std::size_t> p(x.node_count());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (p[x.initial().index()] != y.initial().index()) continue;
    bool ok = true;
    for (std::size_t v = 0; v < x.node_count() && ok; ++v) {
      if (sig.label_name(x.label(NodeId(v))) != y.signature().label_name(y.label(NodeId(p[v])))) ok = false;
      for (std::size_t d = 0; d < sig.direction_count() && ok; ++d) {
        NodeId u = x.neighbor(NodeId(v), DirId(d));
        NodeId w = y.neighbor(NodeId(p[v]), DirId(d));
        if (u.valid() != w.valid() || (u.valid() && p[u.index()] != w.index())) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Independent generator: every label assignment and every total choice of
// targets for the edge slots, filtered by validate_graph, deduplicated with
// the brute-force isomorphism oracle. Exponential; tiny inputs only.
inline std::vector<Graph> bruteforce_graphs(const SignaturePtr& sig, std::size_t max_nodes) {
  std::vector<Graph> found;
  for (std::size_t m = 1; m <= max_nodes; ++m) {
    std::vector<std::size_t> lab(m, 0);
    while (true) {
      std::vector<std::pair<std::size_t, DirId>> slots;
      for (std::size_t v = 0; v < m; ++v) {
        for (DirId d : sig->dirs(LabelId(lab[v]))) slots.push_back({v, d});
      }
      std::vector<std::size_t> target(slots.size(), 0);
      while (true) {
        GraphBuilder b(sig);
        for (std::size_t v = 0; v < m; ++v) b.add_node("n" + std::to_string(v), LabelId(lab[v]));
        for (std::size_t s = 0; s < slots.size(); ++s) {
          b.set_half_edge(NodeId(slots[s].first), slots[s].second, NodeId(target[s]));
        }
        b.set_initial(NodeId(std::size_t{0}));
        Graph g = std::move(b).build();
        if (validate_graph(g).ok()) {
          bool dup = false;
          for (const auto& h : found) dup = dup || isomorphic_bruteforce(g, h);
          if (!dup) found.push_back(std::move(g));
        }
        std::size_t s = 0;
        while (s < target.size() && ++target[s] == m) target[s++] = 0;
        if (s == target.size()) break;
      }
      std::size_t v = 0;
      while (v < m && ++lab[v] == sig->label_count()) lab[v++] = 0;
      if (v == m) break;
    }
  }
  return found;
}

}  // namespace gwa::testing
