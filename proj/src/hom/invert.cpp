#include "gwa/hom/invert.hpp"

#include <sstream>

namespace gwa {

PatternResult simulate_in_pattern(const WalkingAutomaton& a, const Pattern& p, const Signature& source,
                                  const PatternEntry& entry, Walker& scratch) {
  if (!same_signature(a.signature(), p.body().signature())) {
    throw PreconditionError("automaton is not over the pattern's signature");
  }
  Configuration start;
  if (std::holds_alternative<StartEntry>(entry)) {
    auto w = p.initial_node();
    if (!w) throw PreconditionError("Start entry into a pattern without an initial node");
    start = {a.initial(), *w};
  } else {
    const auto& e = std::get<EnterEntry>(entry);
    NodeId w = p.port_node(source.opposite(e.dir));
    if (!w.valid()) {
      throw PreconditionError("cannot enter in direction '" + source.direction_name(e.dir) + "': no port for '" +
                              source.direction_name(source.opposite(e.dir)) + "'");
    }
    start = {e.state, w};
  }

  const Walk w = scratch.walk(a, p.body(), start);
  switch (w.kind) {
    case Walk::Kind::kAccept: return AcceptInside{w.steps};
    case Walk::Kind::kReject: return RejectInside{w.steps};
    case Walk::Kind::kLoop: return LoopInside{w.steps};
    case Walk::Kind::kExit: break;
  }
  DirId d = p.port_at(w.at.node, w.exit_dir);
  if (!d.valid()) {
    throw PreconditionError("automaton left the pattern through the open slot '" +
                            p.body().signature().direction_name(w.exit_dir) + "' of node '" + p.body().id(w.at.node) +
                            "'");
  }
  return Exit{w.exit_state, d, w.steps, w.at.state};
}

PatternResult simulate_in_pattern(const WalkingAutomaton& a, const Homomorphism& h, LabelId label,
                                  const PatternEntry& entry) {
  Walker scratch;
  return simulate_in_pattern(a, h.pattern(label), h.source(), entry, scratch);
}

namespace {

Action result_action(const PatternResult& r, const InverseLayout& layout) {
  if (std::holds_alternative<AcceptInside>(r)) return Action::accept();
  if (const auto* e = std::get_if<Exit>(&r)) return Action::move(layout.composite(e->state, e->dir), e->dir);
  return Action::undefined();
}

}  // namespace

Inversion invert_with_layout(const WalkingAutomaton& a, const Homomorphism& h) {
  if (!same_signature(a.signature(), h.target())) {
    throw PreconditionError("automaton is not over the target signature of the homomorphism");
  }
  if (auto report = validate_homomorphism(h); !report.ok()) {
    std::ostringstream os;
    os << "invalid homomorphism: " << report;
    throw PreconditionError(os.str());
  }
  const Signature& src = h.source();
  const auto initial = src.initial_labels();
  if (initial.empty()) throw PreconditionError("source signature has no initial label");

  InverseLayout layout;
  layout.dirs = src.direction_count();
  layout.has_p0 = initial.size() > 1;
  Walker scratch;

  StateId start;
  if (!layout.has_p0) {
    const LabelId a0 = initial.front();
    PatternResult r = simulate_in_pattern(a, h.pattern(a0), src, StartEntry{}, scratch);
    if (!std::holds_alternative<Exit>(r)) {
      layout.degenerate = true;
      WalkingAutomaton b(h.source_ptr(), {"p0"});
      if (std::holds_alternative<AcceptInside>(r)) b.set_accept(b.initial(), a0);
      return {std::move(b), layout};
    }
    const auto& e = std::get<Exit>(r);
    start = layout.composite(e.from_state, src.opposite(e.dir));
  }

  std::vector<std::string> names;
  if (layout.has_p0) names.push_back("p0");
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    for (std::size_t d = 0; d < layout.dirs; ++d) {
      names.push_back("(" + a.state_name(StateId(q)) + "," + src.direction_name(DirId(d)) + ")");
    }
  }
  WalkingAutomaton b(h.source_ptr(), std::move(names), layout.has_p0 ? StateId(std::size_t{0}) : start);

  for (std::size_t q = 0; q < a.state_count(); ++q) {
    for (std::size_t d = 0; d < layout.dirs; ++d) {
      const DirId dir(d);
      const StateId composite = layout.composite(StateId(q), dir);
      for (std::size_t l = 0; l < src.label_count(); ++l) {
        const LabelId label(l);
        if (!src.has_dir(label, src.opposite(dir))) continue;
        PatternResult r = simulate_in_pattern(a, h.pattern(label), src, EnterEntry{StateId(q), dir}, scratch);
        b.set_action(composite, label, result_action(r, layout));
      }
    }
  }
  if (layout.has_p0) {
    for (LabelId a0 : initial) {
      PatternResult r = simulate_in_pattern(a, h.pattern(a0), src, StartEntry{}, scratch);
      b.set_action(b.initial(), a0, result_action(r, layout));
    }
  }
  return {std::move(b), layout};
}

WalkingAutomaton invert(const WalkingAutomaton& a, const Homomorphism& h) { return invert_with_layout(a, h).automaton; }

std::vector<const InverseCase*> InverseReport::failures() const {
  std::vector<const InverseCase*> out;
  for (const auto& c : cases) {
    if (!c.ok()) out.push_back(&c);
  }
  return out;
}

namespace {

struct Crossing {
  StateId state;
  DirId dir;  // source direction
  NodeId owner;
};

// External-edge crossings of A's computation on h(G), in order, at most
// `limit` of them. A looping computation is unrolled along its cycle.
std::vector<Crossing> crossings(const WalkingAutomaton& a, const Homomorphism& h, const Graph& g, const Image& img,
                                const std::vector<Configuration>& t, const Outcome& o, std::size_t limit) {
  std::vector<Crossing> out;
  const std::size_t steps = outcome_steps(o);
  const auto* loop = std::get_if<Loop>(&o);
  std::size_t moves = steps;
  std::size_t cycle_start = 0;
  if (loop) {
    cycle_start = steps - loop->cycle_length;
    moves = steps + loop->cycle_length * (limit + 1);
  }
  auto at = [&](std::size_t i) -> const Configuration& {
    if (i < steps) return t[i];
    return t[cycle_start + (i - cycle_start) % loop->cycle_length];
  };
  for (std::size_t i = 0; i < moves && out.size() < limit; ++i) {
    const Configuration& c = at(i);
    const Action& act = a.action(c.state, img.graph.label(c.node));
    if (act.kind != Action::Kind::kMove || !img.is_external(c.node, act.dir)) continue;
    const NodeId owner = img.owner[c.node.index()];
    const DirId d = h.pattern(g.label(owner)).port_at(img.pattern_node[c.node.index()], act.dir);
    out.push_back({act.next, d, img.owner[img.graph.neighbor(c.node, act.dir).index()]});
  }
  return out;
}

std::string describe(const Configuration& c, const WalkingAutomaton& a, const Graph& g) {
  return "(" + a.state_name(c.state) + ", " + g.id(c.node) + ")";
}

InverseCase check_case(const WalkingAutomaton& a, const Homomorphism& h, const Inversion& inv, const Graph& g,
                       std::size_t index, Walker& scratch) {
  const WalkingAutomaton& b = inv.automaton;
  const InverseLayout& layout = inv.layout;
  const Image img = apply_with_origin(h, g);

  InverseCase c{index, run(b, g, scratch), run(a, img.graph, scratch), false, false, false, false, {}};
  std::ostringstream why;
  c.acceptance_agrees = accepted(c.b_outcome) == accepted(c.a_outcome);
  if (!c.acceptance_agrees) {
    why << "B " << outcome_name(c.b_outcome) << "s, A " << outcome_name(c.a_outcome) << "s; ";
  }

  const std::size_t b_steps = outcome_steps(c.b_outcome);
  const std::size_t a_steps = outcome_steps(c.a_outcome);
  c.bound_ok = b_steps <= b.state_count() * g.node_count() && a_steps <= a.state_count() * img.graph.node_count();
  if (!c.bound_ok) why << "step bound exceeded; ";

  // Trace alignment, t >= 1.
  const auto tb = trace(b, g);
  const auto ta = trace(a, img.graph);
  const bool b_halts = !std::holds_alternative<Loop>(c.b_outcome);
  const auto cross = crossings(a, h, g, img, ta, c.a_outcome, b_steps + 1);
  c.alignment_ok = true;
  for (std::size_t t = 1; t <= b_steps && c.alignment_ok; ++t) {
    if (t > cross.size()) {
      c.alignment_ok = false;
      why << "B step " << t << " has no matching crossing by A; ";
      break;
    }
    const Configuration& cb = tb[t];
    const std::size_t s = cb.state.index() - (layout.has_p0 ? 1 : 0);
    const bool composite = !layout.degenerate && (!layout.has_p0 || cb.state.index() > 0);
    const Crossing& x = cross[t - 1];
    if (!composite || s / layout.dirs != x.state.index() || s % layout.dirs != x.dir.index() || cb.node != x.owner) {
      c.alignment_ok = false;
      why << "B step " << t << " at " << describe(cb, b, g) << " vs crossing " << t << " into " << g.id(x.owner)
          << "; ";
    }
  }
  if (c.alignment_ok && b_halts && cross.size() != b_steps) {
    c.alignment_ok = false;
    why << "A crosses " << cross.size() << (cross.size() > b_steps ? "+" : "") << " external edges, B makes "
        << b_steps << " steps; ";
  }

  // Loop refinement.
  c.refinement_ok = true;
  const NodeId a_owner = img.owner[outcome_configuration(c.a_outcome).node.index()];
  if (std::holds_alternative<Loop>(c.b_outcome)) {
    c.refinement_ok = std::holds_alternative<Loop>(c.a_outcome);
  } else {
    c.refinement_ok = a_owner == outcome_configuration(c.b_outcome).node &&
                      (std::holds_alternative<Accept>(c.b_outcome) || !accepted(c.a_outcome));
  }
  if (!c.refinement_ok) why << "outcome refinement violated; ";
  c.detail = why.str();
  return c;
}

}  // namespace

InverseReport verify_inverse(const WalkingAutomaton& a, const Homomorphism& h, std::span<const Graph> suite) {
  return verify_inverse(a, h, invert_with_layout(a, h), suite);
}

InverseReport verify_inverse(const WalkingAutomaton& a, const Homomorphism& h, const Inversion& b,
                             std::span<const Graph> suite) {
  InverseReport report;
  report.b_states = b.automaton.state_count();
  Walker scratch;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    InverseCase c = check_case(a, h, b, suite[i], i, scratch);
    if (!c.acceptance_agrees) ++report.acceptance_disagreements;
    if (!c.alignment_ok) ++report.alignment_failures;
    if (!c.refinement_ok) ++report.refinement_failures;
    if (!c.bound_ok) ++report.bound_failures;
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace gwa
