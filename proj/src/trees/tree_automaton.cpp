#include "gwa/trees/tree_automaton.hpp"

#include <set>

namespace gwa {

TreeAutomaton::TreeAutomaton(SignaturePtr sig, std::vector<std::string> states, StateId accept)
    : sig_(std::move(sig)), shape_(*sig_), states_(std::move(states)), accept_(accept) {
  if (states_.empty()) throw PreconditionError("a tree automaton needs at least one state");
  if (!accept_.valid() || accept_.index() >= states_.size()) throw PreconditionError("accepting state out of range");
  for (std::size_t l = 0; l < sig_->label_count(); ++l) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < shape_.rank(LabelId(l)); ++i) size *= states_.size();
    table_.emplace_back(size, StateId());
  }
}

std::optional<StateId> TreeAutomaton::find_state(std::string_view name) const {
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (states_[q] == name) return StateId(q);
  }
  return std::nullopt;
}

std::size_t TreeAutomaton::slot(LabelId a, std::span<const StateId> args) const {
  if (args.size() != shape_.rank(a)) {
    throw PreconditionError("label '" + sig_->label_name(a) + "' takes " + std::to_string(shape_.rank(a)) +
                            " arguments");
  }
  std::size_t s = 0;
  for (StateId q : args) {
    if (!q.valid() || q.index() >= states_.size()) throw PreconditionError("state out of range");
    s = s * states_.size() + q.index();
  }
  return s;
}

std::vector<StateId> TreeAutomaton::arguments(LabelId a, std::size_t slot) const {
  std::vector<StateId> out(shape_.rank(a));
  for (std::size_t i = out.size(); i > 0; --i) {
    out[i - 1] = StateId(slot % states_.size());
    slot /= states_.size();
  }
  return out;
}

ValidationReport validate_tree_automaton(const TreeAutomaton& a) {
  ValidationReport report;
  std::set<std::string> seen;
  for (const auto& name : a.state_names()) {
    if (!seen.insert(name).second) report.add("duplicate state", name);
    if (name.empty() || name.find_first_of(",[]") != std::string::npos) report.add("bad state name", name);
  }
  const Signature& sig = a.signature();
  for (std::size_t l = 0; l < sig.label_count(); ++l) {
    LabelId label(l);
    for (std::size_t s = 0; s < a.table_size(label); ++s) {
      if (a.entry(label, s).valid()) continue;
      std::string args;
      for (StateId q : a.arguments(label, s)) args += (args.empty() ? "" : ",") + a.state_name(q);
      report.add("missing transition", sig.label_name(label), "(" + args + ")");
    }
  }
  return report;
}

TreeRun eval_dta(const TreeAutomaton& a, const Graph& t) {
  if (!same_signature(t.signature(), a.signature())) throw PreconditionError("tree and automaton use different signatures");
  if (!is_tree(t)) throw PreconditionError("not a tree over the automaton's signature");
  const TreeShape& shape = a.shape();
  TreeRun run;
  run.states.assign(t.node_count(), StateId());
  std::vector<StateId> args;
  for (NodeId v : post_order(t, shape)) {
    args.clear();
    for (NodeId c : tree_children(t, shape, v)) args.push_back(run.states[c.index()]);
    StateId q = a.delta(t.label(v), args);
    if (!q.valid()) throw PreconditionError("missing transition at label '" + t.signature().label_name(t.label(v)) + "'");
    run.states[v.index()] = q;
  }
  run.root = run.states[t.initial().index()];
  run.accepted = run.root == a.accept();
  return run;
}

std::vector<std::vector<bool>> reachable_states(const TreeAutomaton& a) {
  const TreeShape& shape = a.shape();
  const Signature& sig = a.signature();
  const std::size_t n = a.state_count();
  std::vector<std::vector<bool>> reach(shape.k() + 1, std::vector<bool>(n, false));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t l = 0; l < sig.label_count(); ++l) {
      LabelId label(l);
      const std::size_t d = shape.parent(label);
      for (std::size_t s = 0; s < a.table_size(label); ++s) {
        StateId q = a.entry(label, s);
        if (!q.valid() || reach[d][q.index()]) continue;
        auto args = a.arguments(label, s);
        bool feasible = true;
        for (std::size_t i = 0; i < args.size() && feasible; ++i) feasible = reach[i + 1][args[i].index()];
        if (!feasible) continue;
        reach[d][q.index()] = true;
        changed = true;
      }
    }
  }
  return reach;
}

bool language_nonempty(const TreeAutomaton& a) { return reachable_states(a)[0][a.accept().index()]; }

TreeAutomaton accept_all_automaton(const SignaturePtr& sig) {
  TreeAutomaton a(sig, {"q"}, StateId(std::size_t{0}));
  for (std::size_t l = 0; l < sig->label_count(); ++l) {
    for (std::size_t s = 0; s < a.table_size(LabelId(l)); ++s) {
      a.set_delta(LabelId(l), a.arguments(LabelId(l), s), StateId(std::size_t{0}));
    }
  }
  return a;
}

TreeAutomaton parity_automaton(const SignaturePtr& sig) {
  TreeAutomaton a(sig, {"even", "odd"}, StateId(std::size_t{0}));
  for (std::size_t l = 0; l < sig->label_count(); ++l) {
    for (std::size_t s = 0; s < a.table_size(LabelId(l)); ++s) {
      auto args = a.arguments(LabelId(l), s);
      std::size_t parity = 1;
      for (StateId q : args) parity += q.index();
      a.set_delta(LabelId(l), args, StateId(parity % 2));
    }
  }
  return a;
}

}  // namespace gwa
