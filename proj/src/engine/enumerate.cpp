#include "gwa/engine/enumerate.hpp"

namespace gwa {
namespace {

std::vector<std::string> state_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t q = 0; q < n; ++q) names.push_back("q" + std::to_string(q));
  return names;
}

}  // namespace

std::vector<Action> cell_options(const Signature& sig, std::size_t num_states, LabelId a) {
  std::vector<Action> out{Action::accept(), Action::undefined()};
  for (std::size_t q = 0; q < num_states; ++q) {
    for (DirId d : sig.dirs(a)) out.push_back(Action::move(StateId(q), d));
  }
  return out;
}

std::optional<std::uint64_t> automaton_count(const Signature& sig, std::size_t num_states) {
  std::uint64_t total = 1;
  for (std::size_t q = 0; q < num_states; ++q) {
    for (std::size_t l = 0; l < sig.label_count(); ++l) {
      const std::uint64_t k = 2 + num_states * sig.dirs(LabelId(l)).size();
      if (total > UINT64_MAX / k) return std::nullopt;
      total *= k;
    }
  }
  return total;
}

AutomatonEnumerator::AutomatonEnumerator(SignaturePtr sig, std::size_t num_states, std::uint64_t budget)
    : current_(sig, state_names(num_states)), budget_(budget) {
  if (num_states == 0) throw PreconditionError("enumerate_automata: num_states must be at least 1");
  for (std::size_t q = 0; q < num_states; ++q) {
    for (std::size_t l = 0; l < sig->label_count(); ++l) {
      options_.push_back(cell_options(*sig, num_states, LabelId(l)));
    }
  }
  digit_.assign(options_.size(), 0);
  const std::size_t labels = sig->label_count();
  for (std::size_t c = 0; c < options_.size(); ++c) {
    current_.set_action(StateId(c / labels), LabelId(c % labels), options_[c][0]);
  }
}

const WalkingAutomaton* AutomatonEnumerator::next() {
  if (done_ || produced_ >= budget_) return nullptr;
  if (produced_ > 0) {
    const std::size_t labels = current_.signature().label_count();
    std::size_t c = options_.size();
    while (c > 0) {
      --c;
      if (++digit_[c] < options_[c].size()) {
        current_.set_action(StateId(c / labels), LabelId(c % labels), options_[c][digit_[c]]);
        break;
      }
      digit_[c] = 0;
      current_.set_action(StateId(c / labels), LabelId(c % labels), options_[c][0]);
      if (c == 0) {
        done_ = true;
        return nullptr;
      }
    }
    if (options_.empty()) {
      done_ = true;
      return nullptr;
    }
  }
  ++produced_;
  return &current_;
}

std::vector<WalkingAutomaton> enumerate_automata(const SignaturePtr& sig, std::size_t num_states, std::uint64_t budget) {
  std::vector<WalkingAutomaton> out;
  AutomatonEnumerator e(sig, num_states, budget);
  while (const WalkingAutomaton* a = e.next()) out.push_back(*a);
  return out;
}

}  // namespace gwa
