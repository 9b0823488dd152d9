#include "gwa/engine/automaton.hpp"

#include <set>

namespace gwa {

WalkingAutomaton::WalkingAutomaton(SignaturePtr sig, std::vector<std::string> states, StateId initial)
    : sig_(std::move(sig)), states_(std::move(states)), initial_(initial), labels_(sig_->label_count()) {
  table_.assign(states_.size() * labels_, Action::undefined());
}

std::optional<StateId> WalkingAutomaton::find_state(std::string_view name) const {
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (states_[q] == name) return StateId(q);
  }
  return std::nullopt;
}

StateId WalkingAutomaton::state(std::string_view name) const {
  if (auto q = find_state(name)) return *q;
  throw StructuralError("unknown state '" + std::string(name) + "'");
}

bool operator==(const WalkingAutomaton& x, const WalkingAutomaton& y) {
  return same_signature(*x.sig_, *y.sig_) && x.states_ == y.states_ && x.initial_ == y.initial_ &&
         x.table_ == y.table_;
}

ValidationReport validate_automaton(const WalkingAutomaton& a) {
  ValidationReport report;
  const Signature& sig = a.signature();
  if (a.state_count() == 0) {
    report.add("no states", "automaton");
    return report;
  }
  if (a.initial().index() >= a.state_count()) report.add("initial state out of range", "automaton");
  std::set<std::string, std::less<>> seen;
  for (const auto& name : a.state_names()) {
    if (!seen.insert(name).second) report.add("duplicate state", name);
  }
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    for (std::size_t l = 0; l < sig.label_count(); ++l) {
      const Action& act = a.action(StateId(q), LabelId(l));
      if (act.kind != Action::Kind::kMove) continue;
      const std::string subject = "(" + a.state_name(StateId(q)) + ", " + sig.label_name(LabelId(l)) + ")";
      if (act.next.index() >= a.state_count()) report.add("next state out of range", subject);
      if (act.dir.index() >= sig.direction_count() || !sig.has_dir(LabelId(l), act.dir)) {
        report.add("direction not in label", subject,
                   act.dir.index() < sig.direction_count() ? sig.direction_name(act.dir) : std::string("?"));
      }
    }
  }
  return report;
}

std::vector<StateId> unreachable_states(const WalkingAutomaton& a) {
  const std::size_t n = a.state_count();
  std::vector<char> seen(n, 0);
  std::vector<StateId> stack;
  if (a.initial().index() < n) {
    seen[a.initial().index()] = 1;
    stack.push_back(a.initial());
  }
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (std::size_t l = 0; l < a.signature().label_count(); ++l) {
      const Action& act = a.action(q, LabelId(l));
      if (act.kind == Action::Kind::kMove && act.next.index() < n && !seen[act.next.index()]) {
        seen[act.next.index()] = 1;
        stack.push_back(act.next);
      }
    }
  }
  std::vector<StateId> out;
  for (std::size_t q = 0; q < n; ++q) {
    if (!seen[q]) out.push_back(StateId(q));
  }
  return out;
}

WalkingAutomaton random_automaton(const SignaturePtr& sig, std::size_t num_states, Rng& rng,
                                  std::uint32_t accept_permille, std::uint32_t undefined_permille) {
  std::vector<std::string> names;
  for (std::size_t q = 0; q < num_states; ++q) names.push_back("q" + std::to_string(q));
  WalkingAutomaton a(sig, std::move(names));
  for (std::size_t q = 0; q < num_states; ++q) {
    for (std::size_t l = 0; l < sig->label_count(); ++l) {
      auto dirs = sig->dirs(LabelId(l));
      const std::size_t roll = rng.below(1000);
      if (roll < accept_permille) {
        a.set_accept(StateId(q), LabelId(l));
      } else if (roll < accept_permille + undefined_permille || dirs.empty()) {
        a.set_action(StateId(q), LabelId(l), Action::undefined());
      } else {
        a.set_move(StateId(q), LabelId(l), StateId(rng.below(num_states)), dirs[rng.below(dirs.size())]);
      }
    }
  }
  return a;
}

}  // namespace gwa
