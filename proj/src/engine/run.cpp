#include "gwa/engine/run.hpp"

#include <limits>

namespace gwa {

bool accepted(const Outcome& o) { return std::holds_alternative<Accept>(o); }

const char* outcome_name(const Outcome& o) {
  switch (o.index()) {
    case 0: return "accept";
    case 1: return "reject";
    default: return "loop";
  }
}

std::size_t outcome_steps(const Outcome& o) {
  return std::visit([](const auto& x) { return x.steps; }, o);
}

const Configuration& outcome_configuration(const Outcome& o) {
  return std::visit([](const auto& x) -> const Configuration& { return x.at; }, o);
}

Walk Walker::walk(const WalkingAutomaton& a, const Graph& g, Configuration start, std::vector<Configuration>* trace,
                  std::size_t max_len) {
  const std::size_t nodes = g.node_count();
  const std::size_t cells = a.state_count() * nodes;
  if (stamp_.size() < cells) {
    stamp_.assign(cells, 0);
    first_seen_.assign(cells, 0);
    generation_ = 0;
  }
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }

  Walk w;
  Configuration c = start;
  for (std::size_t t = 0;; ++t) {
    const std::size_t cell = c.state.index() * nodes + c.node.index();
    if (trace && trace->size() < max_len) trace->push_back(c);
    if (stamp_[cell] == generation_) {
      w.kind = Walk::Kind::kLoop;
      w.at = c;
      w.steps = t;
      w.cycle_length = t - first_seen_[cell];
      return w;
    }
    stamp_[cell] = generation_;
    first_seen_[cell] = static_cast<std::uint32_t>(t);

    const Action& act = a.action(c.state, g.label(c.node));
    if (act.kind != Action::Kind::kMove) {
      w.kind = act.kind == Action::Kind::kAccept ? Walk::Kind::kAccept : Walk::Kind::kReject;
      w.at = c;
      w.steps = t;
      return w;
    }
    const NodeId u = g.neighbor(c.node, act.dir);
    if (!u.valid()) {
      w.kind = Walk::Kind::kExit;
      w.at = c;
      w.steps = t + 1;
      w.exit_state = act.next;
      w.exit_dir = act.dir;
      return w;
    }
    c = {act.next, u};
  }
}

namespace {

void check_signatures(const WalkingAutomaton& a, const Graph& g) {
  if (!same_signature(a.signature(), g.signature())) {
    throw PreconditionError("automaton and graph are over different signatures");
  }
  if (g.empty()) throw PreconditionError("cannot run on an empty graph");
}

Outcome to_outcome(const WalkingAutomaton& a, const Graph& g, const Walk& w) {
  switch (w.kind) {
    case Walk::Kind::kAccept: return Accept{w.at, w.steps};
    case Walk::Kind::kReject: return Reject{w.at, w.steps};
    case Walk::Kind::kLoop: return Loop{w.at, w.steps, w.cycle_length};
    case Walk::Kind::kExit: break;
  }
  throw PreconditionError("automaton moved from node '" + g.id(w.at.node) + "' in state '" + a.state_name(w.at.state) +
                          "' along undefined direction '" + g.signature().direction_name(w.exit_dir) + "'");
}

}  // namespace

Outcome run(const WalkingAutomaton& a, const Graph& g, Walker& scratch) {
  check_signatures(a, g);
  return to_outcome(a, g, scratch.walk(a, g, {a.initial(), g.initial()}));
}

Outcome run(const WalkingAutomaton& a, const Graph& g) {
  Walker scratch;
  return run(a, g, scratch);
}

std::vector<Configuration> trace(const WalkingAutomaton& a, const Graph& g, std::size_t max_len) {
  check_signatures(a, g);
  Walker scratch;
  std::vector<Configuration> out;
  to_outcome(a, g, scratch.walk(a, g, {a.initial(), g.initial()}, &out, max_len));
  return out;
}

bool replay_consistent(const WalkingAutomaton& a, const Graph& g, std::span<const Configuration> t, const Outcome& o) {
  if (t.empty() || t.front() != Configuration{a.initial(), g.initial()}) return false;
  if (t.size() != outcome_steps(o) + 1) return false;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const Action& act = a.action(t[i].state, g.label(t[i].node));
    if (act.kind != Action::Kind::kMove) return false;
    if (t[i + 1] != Configuration{act.next, g.neighbor(t[i].node, act.dir)}) return false;
  }
  const Configuration& last = t.back();
  if (last != outcome_configuration(o)) return false;
  const Action& act = a.action(last.state, g.label(last.node));
  if (std::holds_alternative<Accept>(o)) return act.kind == Action::Kind::kAccept;
  if (std::holds_alternative<Reject>(o)) return act.kind == Action::Kind::kUndefined;
  const auto& loop = std::get<Loop>(o);
  if (loop.cycle_length == 0 || loop.cycle_length > loop.steps) return false;
  if (t[t.size() - 1 - loop.cycle_length] != last) return false;
  // The repeat must be the first one.
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    for (std::size_t j = i + 1; j + 1 < t.size(); ++j) {
      if (t[i] == t[j]) return false;
    }
  }
  return true;
}

AgreementReport agree_on(const WalkingAutomaton& a1, const WalkingAutomaton& a2, std::span<const Graph> suite) {
  AgreementReport report;
  Walker scratch;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    AgreementEntry e{i, run(a1, suite[i], scratch), run(a2, suite[i], scratch)};
    e.acceptance_agrees = accepted(e.first) == accepted(e.second);
    e.variant_agrees = e.first.index() == e.second.index();
    if (!e.acceptance_agrees) ++report.acceptance_disagreements;
    if (!e.variant_agrees) ++report.variant_disagreements;
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace gwa
