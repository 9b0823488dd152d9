#include "gwa/witnesses/gadgets.hpp"

namespace gwa {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

std::vector<LabelDecl> start_labels() {
  return {{"start", true, {"a", "b", "-b"}},
          {"end_l", false, {"a", "b", "-b"}},
          {"end_r", false, {"-a", "b", "-b"}},
          {"chain", false, {"a", "-a", "b", "-b"}}};
}

std::vector<std::string> state_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < n; ++q) out.push_back("q" + std::to_string(q));
  return out;
}

}  // namespace

Pattern Pluggable::as_pattern() const {
  return Pattern(body, {{dir, dir, port}}, body.signature().direction_count());
}

ValidationReport validate_pluggable(const Pluggable& p) {
  const Graph& g = p.body;
  const Signature& sig = g.signature();
  ValidationReport out;
  if (g.empty() || !p.port.valid() || p.port.index() >= g.node_count()) {
    out.add("empty graph", "pluggable", "no port node");
    return out;
  }
  if (!sig.has_dir(g.label(p.port), p.dir)) out.add("port direction not in label", g.id(p.port), sig.direction_name(p.dir));
  if (g.has_edge(p.port, p.dir)) out.add("port slot used", g.id(p.port), sig.direction_name(p.dir));
  for (const Violation& v : validate_graph(g).violations) {
    if (v.kind == "missing edge" && v.subject == g.id(p.port) && v.detail == sig.direction_name(p.dir)) continue;
    if (!p.has_initial && v.kind == "initial node without initial label") continue;
    out.violations.push_back(v);
  }
  return out;
}

SignaturePtr start_signature(std::size_t k) {
  require(k >= 4, "the H signature needs k >= 4 directions");
  return Signature::make(standard_directions(k), start_labels());
}

std::vector<LabelDecl> f_labels(const std::vector<DirectionDecl>& dirs) {
  auto labels = start_labels();
  labels.push_back({"c_st", false, {"-a", "b"}});
  labels.push_back({"c'", false, {"-a", "-b", "b"}});
  labels.push_back({"go'_a", false, {"-a", "-b", "a"}});
  labels.push_back({"go'_b", false, {"-a", "-b", "b"}});
  for (const auto& d : dirs) {
    if (d.name == "-a") {
      labels.push_back({"go_-a", false, {"-b", "-a"}});
    } else {
      labels.push_back({"go_" + d.name, false, {"-a", d.name}});
    }
  }
  return labels;
}

SignaturePtr f_signature(std::size_t k) {
  require(k >= 4, "the F signature needs k >= 4 directions");
  auto dirs = standard_directions(k);
  return Signature::make(dirs, f_labels(dirs));
}

HShape default_h_shape(std::size_t n) { return {2 * n, n - 1, 2 * n - 1}; }

std::vector<NodeId> embed(GraphBuilder& b, const Graph& part, const std::string& prefix) {
  const Signature& from = part.signature();
  const Signature& to = b.signature();
  std::vector<NodeId> ids;
  for (std::size_t v = 0; v < part.node_count(); ++v) {
    ids.push_back(b.add_node(prefix + part.id(NodeId(v)), from.label_name(part.label(NodeId(v)))));
  }
  for (std::size_t v = 0; v < part.node_count(); ++v) {
    for (std::size_t d = 0; d < from.direction_count(); ++d) {
      NodeId u = part.neighbor(NodeId(v), DirId(d));
      if (u.valid()) b.set_half_edge(ids[v], to.direction(from.direction_name(DirId(d))), ids[u.index()]);
    }
  }
  return ids;
}

Pluggable build_H(const SignaturePtr& sig, std::size_t n, HVariant variant, const HShape& shape) {
  require(n >= 2, "H needs n >= 2");
  require(sig->direction_count() >= 4, "H needs k >= 4 directions");
  require(shape.length >= 2 && shape.left_bridge < shape.right_bridge && shape.right_bridge < shape.length,
          "H shape needs left bridge < right bridge < chain length");
  const DirId a = sig->direction("a");
  const DirId b = sig->direction("b");

  GraphBuilder g(sig);
  std::vector<NodeId> lower;
  std::vector<NodeId> upper;
  const std::size_t len = shape.length;
  for (std::size_t c = 0; c < len; ++c) {
    std::string label = c + 1 == len ? "end_r" : "chain";
    if (c == 0) label = variant == HVariant::kStart ? "start" : "end_l";
    lower.push_back(g.add_node("L" + std::to_string(c), label));
  }
  for (std::size_t c = 0; c < len; ++c) upper.push_back(g.add_node("U" + std::to_string(c), c == 0 ? "end_l" : "chain"));
  for (std::size_t c = 0; c + 1 < len; ++c) {
    g.connect(lower[c], a, lower[c + 1]);
    g.connect(upper[c], a, upper[c + 1]);
  }
  const DirId minus_b = sig->opposite(b);
  for (std::size_t c = 0; c < len; ++c) {
    if (c == shape.left_bridge || c == shape.right_bridge) {
      g.connect(lower[c], b, upper[c]);
      g.connect(lower[c], minus_b, upper[c]);
    } else {
      g.connect(lower[c], b, lower[c]);
      g.connect(upper[c], b, upper[c]);
    }
  }
  g.set_initial(lower[0]);
  return {std::move(g).build(), upper[len - 1], a, variant == HVariant::kStart};
}

Pluggable build_H(const SignaturePtr& sig, std::size_t n, HVariant variant) {
  return build_H(sig, n, variant, default_h_shape(n));
}

Pluggable build_F(const SignaturePtr& sig, std::size_t n, DirId d, std::optional<std::size_t> i) {
  require(n >= 2, "F needs n >= 2");
  require(sig->direction_count() >= 4, "F needs k >= 4 directions");
  require(d.valid() && d.index() < sig->direction_count(), "F: unknown direction");
  require(!i || *i < n, "F: i must be below n");
  const DirId a = sig->direction("a");
  const DirId b = sig->direction("b");
  const bool minus_a = d == sig->opposite(a);

  GraphBuilder g(sig);
  std::vector<NodeId> spine;
  for (std::size_t j = 0; j < n; ++j) {
    std::string label = j == 0 ? "c_st" : "c'";
    if (j + 1 == n) label = minus_a ? "go'_b" : "go'_a";
    spine.push_back(g.add_node("u" + std::to_string(j), label));
  }
  NodeId go = g.add_node("ugo", go_label(*sig, d));
  for (std::size_t j = 0; j + 1 < n; ++j) g.connect(spine[j], b, spine[j + 1]);
  g.connect(spine[n - 1], minus_a ? b : a, go);

  std::optional<NodeId> initial;
  for (std::size_t j = 0; j < n; ++j) {
    const bool start = i && *i == j;
    Pluggable h = build_H(sig, n, start ? HVariant::kStart : HVariant::kFake);
    auto ids = embed(g, h.body, "H" + std::to_string(j) + ".");
    g.connect(ids[h.port.index()], h.dir, spine[j]);
    if (start) initial = ids[h.body.initial().index()];
  }
  // Without H_start the initial node is arbitrary; keep u0 for determinism.
  g.set_initial(initial ? *initial : spine[0]);
  return {std::move(g).build(), go, d, i.has_value()};
}

WalkingAutomaton build_escape_automaton(const SignaturePtr& sig, std::size_t n) {
  require(n >= 2, "the escape automaton needs n >= 2");
  WalkingAutomaton m(sig, state_names(n));
  const Signature& s = *sig;
  auto q = [](std::size_t j) { return StateId(j); };
  auto set = [&](std::size_t state, const std::string& label, std::size_t next, DirId dir) {
    if (auto l = s.find_label(label)) m.set_move(q(state), *l, q(next), dir);
  };
  const DirId a = s.direction("a");
  const DirId b = s.direction("b");

  // Inside H_start: count n-1 steps along the lower chain, cross the left
  // bridge, run along the upper chain to the port.
  set(0, "start", 0, a);
  for (std::size_t j = 0; j + 3 <= n; ++j) set(j, "chain", j + 1, a);
  set(n - 2, "chain", n - 1, b);
  set(n - 1, "chain", n - 1, a);

  // Along the F spine: decrement at c_st / c', pass go'_a, go'_b, go_d.
  for (std::size_t j = 1; j < n; ++j) {
    set(j, "c_st", j - 1, b);
    set(j, "c'", j - 1, b);
  }
  for (std::size_t j = 0; j < n; ++j) {
    set(j, "go'_a", j, a);
    set(j, "go'_b", j, b);
    for (std::size_t d = 0; d < s.direction_count(); ++d) set(j, go_label(s, DirId(d)), j, DirId(d));
  }
  return m;
}

std::string go_label(const Signature& sig, DirId d) { return "go_" + sig.direction_name(d); }

std::string go2_label(const Signature& sig, DirId d1, DirId d2) {
  return "go_" + sig.direction_name(d1) + "_" + sig.direction_name(d2);
}

}  // namespace gwa
