#include "gwa/core/validate.hpp"

#include <algorithm>
#include <set>

namespace gwa {

ValidationReport validate_signature(const Signature& sig) {
  ValidationReport report;

  std::set<std::string, std::less<>> seen;
  for (const auto& d : sig.direction_decls()) {
    if (!seen.insert(d.name).second) report.add("duplicate direction", d.name);
  }

  for (std::size_t i = 0; i < sig.direction_count(); ++i) {
    DirId d(i);
    DirId back = sig.opposite(d);
    const auto& name = sig.direction_name(d);
    if (!back.valid()) {
      report.add("unknown opposite", name, sig.direction_decls()[i].opposite);
      continue;
    }
    DirId back2 = sig.opposite(back);
    if (back2 != d) {
      report.add("opposite not involutive", name,
                 "-(-" + name + ") = " + (back2.valid() ? sig.direction_name(back2) : std::string("?")));
    }
  }

  seen.clear();
  bool any_initial = false;
  for (const auto& a : sig.label_decls()) {
    if (!seen.insert(a.name).second) report.add("duplicate label", a.name);
    any_initial = any_initial || a.initial;
    std::set<std::string, std::less<>> dirs;
    for (const auto& d : a.dirs) {
      if (!sig.find_direction(d)) report.add("unknown direction", a.name, d);
      if (!dirs.insert(d).second) report.add("duplicate label direction", a.name, d);
    }
  }
  if (!any_initial) report.add("no initial label", "signature");
  return report;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  const std::size_t dirs = g.signature().direction_count();
  // Undirected adjacency: an asymmetric half-edge still joins its endpoints.
  std::vector<std::vector<NodeId>> adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t d = 0; d < dirs; ++d) {
      NodeId u = g.neighbor(NodeId(v), DirId(d));
      if (u.valid()) {
        adj[v].push_back(u);
        adj[u.index()].push_back(NodeId(v));
      }
    }
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<NodeId>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<NodeId> stack{NodeId(s)};
    comp[s] = c;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (NodeId u : adj[v.index()]) {
        if (comp[u.index()] < 0) {
          comp[u.index()] = c;
          stack.push_back(u);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

ValidationReport validate_graph(const Graph& g, const Signature& sig) {
  const Signature& own = g.signature();
  if (!same_signature(own, sig)) {
    // Every label and direction must exist in `sig` under the same name.
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      const auto& name = own.label_name(g.label(NodeId(v)));
      if (!sig.find_label(name)) throw StructuralError("node '" + g.id(NodeId(v)) + "': unknown label '" + name + "'");
    }
    for (const auto& d : own.direction_decls()) {
      if (!sig.find_direction(d.name)) throw StructuralError("unknown direction '" + d.name + "'");
    }
    return validate_graph(g.rebind(std::make_shared<const Signature>(sig)));
  }

  ValidationReport report;
  if (g.empty()) {
    report.add("empty graph", "graph");
    return report;
  }

  for (const auto& c : g.conflicts()) {
    report.add("conflicting edge", g.id(c.node),
               sig.direction_name(c.dir) + " -> " + g.id(c.existing) + " and " + g.id(c.requested));
  }

  for (std::size_t i = 0; i < g.node_count(); ++i) {
    NodeId v(i);
    LabelId a = g.label(v);
    for (std::size_t j = 0; j < sig.direction_count(); ++j) {
      DirId d(j);
      NodeId u = g.neighbor(v, d);
      const bool expected = sig.has_dir(a, d);
      if (expected && !u.valid()) report.add("missing edge", g.id(v), sig.direction_name(d));
      if (!expected && u.valid()) report.add("unexpected edge", g.id(v), sig.direction_name(d));
      if (u.valid()) {
        DirId back = sig.opposite(d);
        if (!back.valid() || g.neighbor(u, back) != v) {
          report.add("asymmetric edge", g.id(v), sig.direction_name(d) + " -> " + g.id(u));
        }
      }
    }
    const bool initial_label = sig.is_initial(a);
    if (v == g.initial() && !initial_label) report.add("initial node without initial label", g.id(v));
    if (v != g.initial() && initial_label) report.add("initial label off the initial node", g.id(v));
  }

  auto comps = connected_components(g);
  if (comps.size() > 1) {
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (std::find(comps[c].begin(), comps[c].end(), g.initial()) != comps[c].end()) continue;
      for (NodeId v : comps[c]) report.add("disconnected", g.id(v), "unreachable from initial node");
    }
  }
  return report;
}

ValidationReport validate_graph(const Graph& g) { return validate_graph(g, g.signature()); }

}  // namespace gwa
