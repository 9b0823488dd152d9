#include "gwa/trees/characterization.hpp"

#include <functional>

#include "gwa/core/canonical.hpp"
#include "gwa/util/parallel.hpp"

namespace gwa {
namespace {

std::string e_label(std::size_t i) { return "e_" + std::to_string(i); }
std::string end_label(std::size_t j) { return "end_" + std::to_string(j); }

struct Chain {
  NodeId top;     // its -i slot is open
  NodeId bottom;  // its +i slot is open
};

// l >= 1 nodes labelled e_i, linked by +i, with end_j leaves on every +j,
// j != i.
Chain add_fishbone(GraphBuilder& b, const TreeShape& shape, std::size_t i, std::size_t l, const std::string& prefix) {
  Chain out;
  NodeId prev;
  for (std::size_t t = 0; t < l; ++t) {
    const std::string id = prefix + std::to_string(t);
    NodeId v = b.add_node(id, e_label(i));
    for (std::size_t j = 1; j <= shape.k(); ++j) {
      if (j == i) continue;
      NodeId leaf = b.add_node(id + ".end" + std::to_string(j), end_label(j));
      b.connect(v, shape.child_dir(j), leaf);
    }
    if (t == 0) out.top = v;
    if (prev.valid()) b.connect(prev, shape.child_dir(i), v);
    prev = v;
  }
  out.bottom = prev;
  return out;
}

// A centre labelled `label` (over mid) with a parent-side fishbone of length
// `up` (non-roots only) and child-side fishbones of the given lengths.
Pattern fishbone_pattern(const SignaturePtr& mid, const TreeShape& shape, const std::string& label, std::size_t parent,
                         std::size_t up, const std::vector<std::size_t>& down) {
  GraphBuilder b(mid);
  NodeId centre = b.add_node("c", label);
  std::vector<Port> ports;
  if (parent != 0) {
    DirId out = shape.parent_dir(parent);
    if (up == 0) {
      ports.push_back({out, out, centre});
    } else {
      Chain f = add_fishbone(b, shape, parent, up, "p.");
      b.connect(f.bottom, shape.child_dir(parent), centre);
      ports.push_back({out, out, f.top});
    }
  }
  for (std::size_t i = 1; i <= down.size(); ++i) {
    DirId out = shape.child_dir(i);
    if (down[i - 1] == 0) {
      ports.push_back({out, out, centre});
    } else {
      Chain f = add_fishbone(b, shape, i, down[i - 1], std::to_string(i) + ".");
      b.connect(centre, out, f.top);
      ports.push_back({out, out, f.bottom});
    }
  }
  return Pattern(std::move(b).build(), std::move(ports), mid->direction_count());
}

std::string annotated_name(const TreeAutomaton& a, LabelId label, std::span<const StateId> q) {
  std::string out = a.signature().label_name(label) + "[";
  for (std::size_t i = 0; i < q.size(); ++i) out += (i ? "," : "") + a.state_name(q[i]);
  return out + "]";
}

bool same_tree(const Graph& x, const Graph& y) { return canonical_encode(x) == canonical_encode(y); }

// Same nodes and edges as t, with labels replaced.
Graph relabel(const Graph& t, const SignaturePtr& sig, const std::vector<LabelId>& labels) {
  GraphBuilder b(sig);
  for (std::size_t v = 0; v < t.node_count(); ++v) b.add_node(t.id(NodeId(v)), labels[v]);
  for (std::size_t v = 0; v < t.node_count(); ++v) {
    for (std::size_t d = 0; d < sig->direction_count(); ++d) {
      NodeId u = t.neighbor(NodeId(v), DirId(d));
      if (u.valid()) b.set_half_edge(NodeId(v), DirId(d), u);
    }
  }
  b.set_initial(t.initial());
  return std::move(b).build();
}

}  // namespace

std::optional<LabelId> Characterization::comp_label(LabelId a, std::span<const StateId> q) const {
  for (std::size_t l = 0; l < annotations.size(); ++l) {
    if (annotations[l].base == a && std::equal(q.begin(), q.end(), annotations[l].states.begin(), annotations[l].states.end())) {
      return LabelId(l);
    }
  }
  return std::nullopt;
}

Characterization build_characterization(const TreeAutomaton& a) {
  ValidationReport report = validate_tree_automaton(a);
  if (!report.ok()) {
    throw PreconditionError("tree automaton is invalid: " + report.violations.front().kind + " at " +
                            report.violations.front().subject);
  }
  if (!language_nonempty(a)) {
    throw PreconditionError("the automaton accepts no tree, so no annotated root label exists; the characterization "
                            "needs a non-empty language");
  }
  const SignaturePtr reg = a.signature_ptr();
  const Signature& r = *reg;
  const TreeShape& shape = a.shape();
  const std::size_t k = shape.k();
  const std::size_t n = a.state_count();

  std::vector<LabelDecl> mid_labels = r.label_decls();
  for (std::size_t i = 1; i <= k; ++i) {
    for (const auto& name : {e_label(i), end_label(i)}) {
      if (r.find_label(name)) throw PreconditionError("label name '" + name + "' is reserved for fishbones");
    }
  }
  for (std::size_t i = 1; i <= k; ++i) {
    LabelDecl e{e_label(i), false, {"-" + std::to_string(i)}};
    for (std::size_t j = 1; j <= k; ++j) e.dirs.push_back("+" + std::to_string(j));
    mid_labels.push_back(std::move(e));
  }
  for (std::size_t i = 1; i <= k; ++i) mid_labels.push_back({end_label(i), false, {"-" + std::to_string(i)}});
  SignaturePtr mid = Signature::make(r.direction_decls(), std::move(mid_labels));
  const TreeShape mid_shape(*mid);

  std::vector<LabelDecl> comp_labels;
  std::vector<Annotation> annotations;
  for (std::size_t l = 0; l < r.label_count(); ++l) {
    LabelId label(l);
    for (std::size_t s = 0; s < a.table_size(label); ++s) {
      if (r.is_initial(label) && a.entry(label, s) != a.accept()) continue;
      auto q = a.arguments(label, s);
      comp_labels.push_back({annotated_name(a, label, q), r.is_initial(label), r.label_decls()[l].dirs});
      annotations.push_back({label, q});
    }
  }
  SignaturePtr comp = Signature::make(r.direction_decls(), std::move(comp_labels));

  std::vector<Pattern> h_patterns;
  for (std::size_t l = 0; l < r.label_count(); ++l) {
    LabelId label(l);
    std::vector<std::size_t> down(shape.rank(label), 0);
    h_patterns.push_back(fishbone_pattern(mid, mid_shape, r.label_name(label), shape.parent(label), n, down));
  }
  std::vector<Pattern> g_patterns;
  for (const auto& ann : annotations) {
    std::vector<std::size_t> down;
    for (StateId q : ann.states) down.push_back(n - q.index());
    const std::size_t up = a.delta(ann.base, ann.states).index();
    g_patterns.push_back(fishbone_pattern(mid, mid_shape, r.label_name(ann.base), shape.parent(ann.base), up, down));
  }

  return Characterization{a,
                          reg,
                          mid,
                          comp,
                          std::move(annotations),
                          Homomorphism(comp, mid, std::move(g_patterns)),
                          Homomorphism(reg, mid, std::move(h_patterns))};
}

Graph annotate(const Characterization& c, const Graph& t) {
  TreeRun run = eval_dta(c.automaton, t);
  if (!run.accepted) throw PreconditionError("annotate: the tree is rejected, so its root has no annotated label");
  const TreeShape& shape = c.automaton.shape();
  std::vector<LabelId> labels(t.node_count());
  for (std::size_t v = 0; v < t.node_count(); ++v) {
    std::vector<StateId> q;
    for (NodeId child : tree_children(t, shape, NodeId(v))) q.push_back(run.states[child.index()]);
    labels[v] = *c.comp_label(t.label(NodeId(v)), q);
  }
  return relabel(t, c.comp, labels);
}

Graph strip(const Characterization& c, const Graph& annotated) {
  std::vector<LabelId> labels(annotated.node_count());
  for (std::size_t v = 0; v < annotated.node_count(); ++v) labels[v] = c.annotations[annotated.label(NodeId(v)).index()].base;
  return relabel(annotated, c.reg, labels);
}

bool consistent_annotation(const Characterization& c, const Graph& annotated) {
  const TreeShape shape(*c.comp);
  for (std::size_t v = 0; v < annotated.node_count(); ++v) {
    const Annotation& ann = c.annotations[annotated.label(NodeId(v)).index()];
    auto kids = tree_children(annotated, shape, NodeId(v));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const Annotation& child = c.annotations[annotated.label(kids[i]).index()];
      if (c.automaton.delta(child.base, child.states) != ann.states[i]) return false;
    }
  }
  return true;
}

std::optional<Contracted> contract(const Characterization& c, const Graph& t) {
  if (!same_signature(t.signature(), *c.mid) || !is_tree(t)) return std::nullopt;
  const Signature& mid = *c.mid;
  const TreeShape& shape = c.automaton.shape();
  const std::size_t reg_labels = c.reg->label_count();
  auto is_centre = [&](NodeId v) { return t.label(v).index() < reg_labels; };
  if (!is_centre(t.initial())) return std::nullopt;

  Contracted out;
  bool ok = true;
  std::function<void(NodeId)> visit = [&](NodeId v) {
    const std::size_t self = out.centres.size();
    out.centres.push_back(v);
    out.children.emplace_back();
    out.lengths.emplace_back();
    const std::size_t rank = shape.rank(t.label(v));
    for (std::size_t i = 1; i <= rank && ok; ++i) {
      const LabelId spine = mid.label(e_label(i));
      NodeId u = t.neighbor(v, shape.child_dir(i));
      std::size_t length = 0;
      while (ok && t.label(u) == spine) {
        for (std::size_t j = 1; j <= shape.k(); ++j) {
          if (j != i && mid.label_name(t.label(t.neighbor(u, shape.child_dir(j)))) != end_label(j)) ok = false;
        }
        ++length;
        u = t.neighbor(u, shape.child_dir(i));
      }
      if (!ok || !is_centre(u)) {
        ok = false;
        return;
      }
      out.children[self].push_back(out.centres.size());
      out.lengths[self].push_back(length);
      visit(u);
    }
  };
  visit(t.initial());
  if (!ok) return std::nullopt;
  return out;
}

namespace {

Graph build_from_contraction(const Graph& t, const Contracted& ct, const SignaturePtr& sig, const TreeShape& shape,
                             const std::vector<LabelId>& labels) {
  GraphBuilder b(sig);
  for (std::size_t x = 0; x < ct.centres.size(); ++x) b.add_node(t.id(ct.centres[x]), labels[x]);
  for (std::size_t x = 0; x < ct.centres.size(); ++x) {
    for (std::size_t i = 0; i < ct.children[x].size(); ++i) {
      b.connect(NodeId(x), shape.child_dir(i + 1), NodeId(ct.children[x][i]));
    }
  }
  b.set_initial(NodeId(std::size_t{0}));
  return std::move(b).build();
}

}  // namespace

std::optional<Graph> decode_h(const Characterization& c, const Graph& t) {
  auto ct = contract(c, t);
  if (!ct) return std::nullopt;
  std::vector<LabelId> labels;
  for (std::size_t x = 0; x < ct->centres.size(); ++x) {
    for (std::size_t len : ct->lengths[x]) {
      if (len != c.n()) return std::nullopt;
    }
    labels.push_back(t.label(ct->centres[x]));  // reg labels come first in mid
  }
  Graph out = build_from_contraction(t, *ct, c.reg, c.automaton.shape(), labels);
  if (!same_tree(apply(c.h, out), t)) return std::nullopt;
  return out;
}

std::optional<Graph> decode_g(const Characterization& c, const Graph& t) {
  auto ct = contract(c, t);
  if (!ct) return std::nullopt;
  const std::size_t n = c.n();
  const std::size_t m = ct->centres.size();
  std::vector<LabelId> labels(m);
  std::vector<std::size_t> value(m);  // index of delta at each centre
  // Children come after their parent in pre-order, so go backwards.
  for (std::size_t x = m; x-- > 0;) {
    const LabelId base = t.label(ct->centres[x]);
    std::vector<StateId> q;
    for (std::size_t i = 0; i < ct->children[x].size(); ++i) {
      // length = n - q_i + delta(child)  =>  q_i = n - length + delta(child)
      const std::size_t sum = n + value[ct->children[x][i]];
      const std::size_t len = ct->lengths[x][i];
      if (len > sum || sum - len >= n) return std::nullopt;
      q.push_back(StateId(sum - len));
    }
    auto label = c.comp_label(base, q);
    if (!label) return std::nullopt;
    labels[x] = *label;
    value[x] = c.automaton.delta(base, q).index();
  }
  Graph out = build_from_contraction(t, *ct, c.comp, c.automaton.shape(), labels);
  if (!same_tree(apply(c.g, out), t)) return std::nullopt;
  return out;
}

FishboneCheck measure_fishbones(const Characterization& c, std::size_t max_nodes, std::size_t jobs) {
  const auto trees = enumerate_trees(c.comp, max_nodes);
  const TreeShape shape(*c.comp);
  const std::size_t n = c.n();
  auto parts = parallel_map(trees.size(), jobs, [&](std::size_t x) {
    FishboneCheck part;
    const Graph& t = trees[x];
    Image img = apply_with_origin(c.g, t);
    std::vector<NodeId> centre(t.node_count());
    for (std::size_t v = 0; v < img.graph.node_count(); ++v) {
      if (img.pattern_node[v].index() == 0) centre[img.owner[v].index()] = NodeId(v);
    }
    for (std::size_t s = 0; s < t.node_count(); ++s) {
      const Annotation& parent = c.annotations[t.label(NodeId(s)).index()];
      auto kids = tree_children(t, shape, NodeId(s));
      for (std::size_t i = 0; i < kids.size(); ++i) {
        const Annotation& child = c.annotations[t.label(kids[i]).index()];
        const std::size_t expected = n - parent.states[i].index() + c.automaton.delta(child.base, child.states).index();
        std::size_t measured = 0;
        NodeId u = img.graph.neighbor(centre[s], shape.child_dir(i + 1));
        while (u.valid() && u != centre[kids[i].index()] && measured <= 2 * n) {
          ++measured;
          u = img.graph.neighbor(u, shape.child_dir(i + 1));
        }
        ++part.edges;
        if (measured != expected) {
          ++part.mismatches;
          part.examples.push_back(tree_term(t) + ": edge " + t.id(NodeId(s)) + " +" + std::to_string(i + 1) +
                                  " measured " + std::to_string(measured) + ", expected " + std::to_string(expected));
        }
      }
    }
    return part;
  });
  FishboneCheck out;
  out.trees = trees.size();
  for (auto& p : parts) {
    out.edges += p.edges;
    out.mismatches += p.mismatches;
    for (auto& e : p.examples) {
      if (out.examples.size() < 20) out.examples.push_back(std::move(e));
    }
  }
  return out;
}

CharacterizationReport verify_characterization(const Characterization& c, std::size_t max_nodes, std::size_t jobs) {
  CharacterizationReport report;
  const auto reg_trees = enumerate_trees(c.reg, max_nodes);
  const auto comp_trees = enumerate_trees(c.comp, max_nodes);
  report.reg_trees = reg_trees.size();
  report.comp_trees = comp_trees.size();

  auto reg_parts = parallel_map(reg_trees.size(), jobs, [&](std::size_t x) {
    CharacterizationReport part;
    const Graph& t = reg_trees[x];
    auto fail = [&](const std::string& what) { part.counterexamples.push_back(tree_term(t) + ": " + what); };
    const bool accepted = eval_dta(c.automaton, t).accepted;
    part.accepted += accepted;
    Graph image = apply(c.h, t);
    if (!is_tree(image)) fail("h(T) is not a tree");
    auto back = decode_h(c, image);
    if (back && same_tree(*back, t)) {
      ++part.h_roundtrips;
    } else {
      fail("decode_h(h(T)) != T");
    }
    auto pre = decode_g(c, image);
    if (pre.has_value() != accepted) {
      fail(accepted ? "accepted but h(T) has no g-preimage" : "rejected but h(T) has a g-preimage");
    } else if (accepted) {
      Graph ann = annotate(c, t);
      if (!same_tree(*pre, ann)) fail("g-preimage of h(T) is not the annotation of T");
      if (same_tree(apply(c.g, ann), image)) {
        ++part.g_equals_h;
      } else {
        fail("g(annotate(T)) != h(T)");
      }
    }
    return part;
  });

  auto comp_parts = parallel_map(comp_trees.size(), jobs, [&](std::size_t x) {
    CharacterizationReport part;
    const Graph& t = comp_trees[x];
    auto fail = [&](const std::string& what) { part.counterexamples.push_back(tree_term(t) + ": " + what); };
    const bool consistent = consistent_annotation(c, t);
    part.consistent += consistent;
    Graph image = apply(c.g, t);
    if (!is_tree(image)) fail("g(T') is not a tree");
    auto back = decode_g(c, image);
    if (back && same_tree(*back, t)) {
      ++part.g_roundtrips;
    } else {
      fail("decode_g(g(T')) != T'");
    }
    auto pre = decode_h(c, image);
    if (pre.has_value() != consistent) {
      fail(consistent ? "consistent but g(T') has no h-preimage" : "inconsistent but g(T') has an h-preimage");
    } else if (pre) {
      try {
        if (!same_tree(annotate(c, *pre), t)) fail("T' is not the annotation of its h-preimage");
      } catch (const PreconditionError& e) {
        fail(std::string("h-preimage is rejected: ") + e.what());
      }
    }
    return part;
  });

  for (const auto* parts : {&reg_parts, &comp_parts}) {
    for (const auto& p : *parts) {
      report.accepted += p.accepted;
      report.consistent += p.consistent;
      report.h_roundtrips += p.h_roundtrips;
      report.g_roundtrips += p.g_roundtrips;
      report.g_equals_h += p.g_equals_h;
      report.counterexamples.insert(report.counterexamples.end(), p.counterexamples.begin(), p.counterexamples.end());
    }
  }
  return report;
}

}  // namespace gwa
