#include "gwa/hom/homomorphism.hpp"

#include "gwa/core/validate.hpp"

namespace gwa {

Pattern::Pattern(Graph body, std::vector<Port> ports, std::size_t source_dirs)
    : body_(std::move(body)), ports_(std::move(ports)), by_dir_(source_dirs) {
  for (const auto& p : ports_) {
    if (p.dir.index() < by_dir_.size()) by_dir_[p.dir.index()] = p.node;
  }
}

DirId Pattern::port_at(NodeId v, DirId body_dir) const {
  for (const auto& p : ports_) {
    if (p.node == v && p.body_dir == body_dir) return p.dir;
  }
  return {};
}

std::optional<NodeId> Pattern::initial_node() const {
  for (std::size_t v = 0; v < body_.node_count(); ++v) {
    if (body_.signature().is_initial(body_.label(NodeId(v)))) return NodeId(v);
  }
  return std::nullopt;
}

Homomorphism::Homomorphism(SignaturePtr source, SignaturePtr target, std::vector<Pattern> patterns)
    : source_(std::move(source)), target_(std::move(target)), patterns_(std::move(patterns)) {
  for (std::size_t d = 0; d < source_->direction_count(); ++d) {
    auto t = target_->find_direction(source_->direction_name(DirId(d)));
    dir_map_.push_back(t ? *t : DirId());
  }
}

Pattern make_pattern(const Signature& source, const Signature& target, Graph body,
                     const std::map<std::string, std::string>& ports) {
  std::vector<Port> out;
  for (const auto& [dir, node] : ports) {
    DirId d = source.direction(dir);
    auto t = target.find_direction(dir);
    if (!t) throw StructuralError("direction '" + dir + "' is missing from the target signature");
    auto v = body.find_node(node);
    if (!v) throw StructuralError("port '" + dir + "': unknown pattern node '" + node + "'");
    out.push_back({d, *t, *v});
  }
  return Pattern(std::move(body), std::move(out), source.direction_count());
}

ValidationReport validate_homomorphism(const Homomorphism& h) {
  ValidationReport report;
  const Signature& src = h.source();
  const Signature& tgt = h.target();

  for (std::size_t i = 0; i < src.direction_count(); ++i) {
    DirId d(i);
    DirId t = h.target_dir(d);
    if (!t.valid()) {
      report.add("missing direction", src.direction_name(d), "not a direction of the target signature");
      continue;
    }
    DirId back = src.opposite(d);
    if (back.valid() && h.target_dir(back).valid() && tgt.opposite(t) != h.target_dir(back)) {
      report.add("opposite mismatch", src.direction_name(d));
    }
  }
  if (h.patterns().size() != src.label_count()) {
    report.add("pattern count", "homomorphism",
               std::to_string(h.patterns().size()) + " patterns for " + std::to_string(src.label_count()) + " labels");
    return report;
  }

  for (std::size_t l = 0; l < src.label_count(); ++l) {
    const LabelId a(l);
    const std::string& name = src.label_name(a);
    const Pattern& p = h.pattern(a);
    const Graph& body = p.body();
    if (!same_signature(body.signature(), tgt)) {
      report.add("foreign pattern signature", name);
      continue;
    }
    if (body.empty()) {
      report.add("empty pattern", name);
      continue;
    }

    for (DirId d : src.dirs(a)) {
      if (!p.port_node(d).valid()) report.add("missing port", name, src.direction_name(d));
    }
    for (const auto& port : p.ports()) {
      const std::string& dname = src.direction_name(port.dir);
      if (!src.has_dir(a, port.dir)) report.add("extra port", name, dname);
      if (!port.body_dir.valid() || !tgt.has_dir(body.label(port.node), port.body_dir)) {
        report.add("port direction not in label", name, dname + " at " + body.id(port.node));
      } else if (body.has_edge(port.node, port.body_dir)) {
        report.add("port slot used", name, dname + " at " + body.id(port.node));
      }
    }

    for (const auto& c : body.conflicts()) {
      report.add("conflicting edge", name, body.id(c.node) + " " + tgt.direction_name(c.dir));
    }
    std::size_t initial_nodes = 0;
    for (std::size_t i = 0; i < body.node_count(); ++i) {
      NodeId v(i);
      LabelId b = body.label(v);
      if (tgt.is_initial(b)) ++initial_nodes;
      for (std::size_t j = 0; j < tgt.direction_count(); ++j) {
        DirId d(j);
        NodeId u = body.neighbor(v, d);
        const std::string where = body.id(v) + " " + tgt.direction_name(d);
        if (tgt.has_dir(b, d)) {
          if (!u.valid() && !p.is_port_slot(v, d)) report.add("open slot", name, where);
        } else if (u.valid()) {
          report.add("unexpected edge", name, where);
        }
        if (u.valid() && body.neighbor(u, tgt.opposite(d)) != v) report.add("asymmetric edge", name, where);
      }
    }
    if (connected_components(body).size() > 1) report.add("pattern disconnected", name);
    if ((initial_nodes > 0) != src.is_initial(a)) {
      report.add("initial node mismatch", name,
                 src.is_initial(a) ? "initial label without an initial node" : "non-initial label with an initial node");
    }
    if (initial_nodes > 1) report.add("multiple initial nodes", name);
  }
  return report;
}

Image apply_with_origin(const Homomorphism& h, const Graph& g) {
  if (!same_signature(g.signature(), h.source())) {
    throw PreconditionError("graph is not over the source signature of the homomorphism");
  }
  const Signature& src = h.source();
  const std::size_t tdirs = h.target().direction_count();

  Image img{Graph(), {}, {}, {}};
  GraphBuilder b(h.target_ptr());
  std::vector<std::size_t> offset(g.node_count() + 1, 0);
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const Pattern& p = h.pattern(g.label(NodeId(v)));
    offset[v + 1] = offset[v] + p.body().node_count();
    for (std::size_t w = 0; w < p.body().node_count(); ++w) {
      b.add_node("(" + g.id(NodeId(v)) + "," + p.body().id(NodeId(w)) + ")", p.body().label(NodeId(w)));
      img.owner.push_back(NodeId(v));
      img.pattern_node.push_back(NodeId(w));
    }
  }
  img.external.assign(offset.back() * tdirs, 0);

  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const Pattern& p = h.pattern(g.label(NodeId(v)));
    for (std::size_t w = 0; w < p.body().node_count(); ++w) {
      for (std::size_t d = 0; d < tdirs; ++d) {
        NodeId u = p.body().neighbor(NodeId(w), DirId(d));
        if (u.valid()) b.set_half_edge(NodeId(offset[v] + w), DirId(d), NodeId(offset[v] + u.index()));
      }
    }
    for (DirId d : src.dirs(g.label(NodeId(v)))) {
      NodeId u = g.neighbor(NodeId(v), d);
      if (!u.valid()) continue;
      NodeId from = p.port_node(d);
      NodeId to = h.pattern(g.label(u)).port_node(src.opposite(d));
      DirId t = h.target_dir(d);
      if (!from.valid() || !to.valid() || !t.valid()) continue;  // invalid h; validation reports it
      NodeId x(offset[v] + from.index());
      b.set_half_edge(x, t, NodeId(offset[u.index()] + to.index()));
      img.external[x.index() * tdirs + t.index()] = 1;
    }
  }

  if (!g.empty()) {
    const Pattern& p0 = h.pattern(g.label(g.initial()));
    if (auto w = p0.initial_node()) b.set_initial(NodeId(offset[g.initial().index()] + w->index()));
  }
  img.graph = std::move(b).build();
  return img;
}

Graph apply(const Homomorphism& h, const Graph& g) { return apply_with_origin(h, g).graph; }

Homomorphism identity_homomorphism(const SignaturePtr& sig) {
  std::vector<Pattern> patterns;
  for (std::size_t l = 0; l < sig->label_count(); ++l) {
    GraphBuilder b(sig);
    NodeId v = b.add_node(sig->label_name(LabelId(l)), LabelId(l));
    std::vector<Port> ports;
    for (DirId d : sig->dirs(LabelId(l))) ports.push_back({d, d, v});
    patterns.emplace_back(std::move(b).build(), std::move(ports), sig->direction_count());
  }
  return Homomorphism(sig, sig, std::move(patterns));
}

}  // namespace gwa
