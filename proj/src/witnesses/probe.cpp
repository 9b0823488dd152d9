#include "gwa/witnesses/probe.hpp"

#include <algorithm>

#include "gwa/engine/enumerate.hpp"
#include "gwa/util/parallel.hpp"

namespace gwa {
namespace {

__extension__ typedef unsigned __int128 Wide;

std::uint64_t narrow(Wide x, const char* what) {
  if (x > UINT64_MAX) throw PreconditionError(std::string(what) + " does not fit in 64 bits");
  return static_cast<std::uint64_t>(x);
}

PatternEntry entry_for(const Pluggable& p, StateId q) {
  return EnterEntry{q, p.body.signature().opposite(p.dir)};
}

std::vector<std::string> state_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t q = 0; q < n; ++q) out.push_back("q" + std::to_string(q));
  return out;
}

// Result of a walk under a partial automaton, in the lazy probe.
struct Partial {
  enum Kind : unsigned char { kAccept, kReject, kLoop, kExit, kOpen };
  Kind kind = kOpen;
  std::uint32_t state = 0;  // exit state, or the cell needed when kOpen
};

class LazySearch {
 public:
  LazySearch(const ProbePair& pair, std::size_t num_states, std::size_t max_examples, ProbeReport& report)
      : pair_(pair), n_(num_states), labels_(pair.sig->label_count()), max_examples_(max_examples), report_(report) {
    for (std::size_t q = 0; q < n_; ++q) {
      for (std::size_t l = 0; l < labels_; ++l) options_.push_back(cell_options(*pair.sig, n_, LabelId(l)));
    }
    assigned_.assign(options_.size(), -1);
    free_ = 1;
    for (const auto& o : options_) free_ *= o.size();
    total_ = free_;
  }

  void run() {
    search();
    if (covered_ != total_) throw Error("lazy probe lost track of automata");
  }

 private:
  Partial walk(const Pluggable& p, std::size_t q0) {
    const Graph& g = p.body;
    const std::size_t nodes = g.node_count();
    if (stamp_.size() < n_ * nodes) stamp_.assign(n_ * nodes, 0);
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    std::size_t q = q0;
    NodeId v = p.port;
    for (;;) {
      std::uint32_t& seen = stamp_[q * nodes + v.index()];
      if (seen == generation_) return {Partial::kLoop, 0};
      seen = generation_;
      const std::size_t cell = q * labels_ + g.label(v).index();
      if (assigned_[cell] < 0) return {Partial::kOpen, static_cast<std::uint32_t>(cell)};
      const Action& act = options_[cell][static_cast<std::size_t>(assigned_[cell])];
      if (act.kind == Action::Kind::kAccept) return {Partial::kAccept, 0};
      if (act.kind == Action::Kind::kUndefined) return {Partial::kReject, 0};
      NodeId u = g.neighbor(v, act.dir);
      if (!u.valid()) return {Partial::kExit, static_cast<std::uint32_t>(act.next.index())};
      q = act.next.index();
      v = u;
    }
  }

  void search() {
    ++report_.explored;
    std::vector<Partial> first(n_);
    std::vector<Partial> second(n_);
    for (std::size_t q = 0; q < n_; ++q) {
      for (auto [side, out] : {std::pair{&pair_.x, &first}, std::pair{&pair_.y, &second}}) {
        Partial r = walk(*side, q);
        if (r.kind == Partial::kOpen) return branch(r.state);
        (*out)[q] = r;
      }
    }
    covered_ += free_;
    for (std::size_t q = 0; q < n_; ++q) {
      if (first[q].kind == second[q].kind && first[q].state == second[q].state) continue;
      distinguishing_ += free_;
      if (report_.examples.size() < max_examples_) report_.examples.push_back(example(StateId(q)));
      break;
    }
  }

  void branch(std::size_t cell) {
    const Wide width = options_[cell].size();
    free_ /= width;
    for (std::size_t o = 0; o < options_[cell].size(); ++o) {
      assigned_[cell] = static_cast<int>(o);
      search();
    }
    assigned_[cell] = -1;
    free_ *= width;
  }

  Distinguisher example(StateId q) const {
    WalkingAutomaton a(pair_.sig, state_names(n_));
    for (std::size_t cell = 0; cell < options_.size(); ++cell) {
      if (assigned_[cell] < 0) continue;
      a.set_action(StateId(cell / labels_), LabelId(cell % labels_),
                   options_[cell][static_cast<std::size_t>(assigned_[cell])]);
    }
    Walker w;
    PatternResult r1 = simulate_in_pattern(a, pair_.x.as_pattern(), *pair_.sig, entry_for(pair_.x, q), w);
    PatternResult r2 = simulate_in_pattern(a, pair_.y.as_pattern(), *pair_.sig, entry_for(pair_.y, q), w);
    return {std::move(a), q, r1, r2};
  }

 public:
  Wide total_ = 0;
  Wide covered_ = 0;
  Wide distinguishing_ = 0;

 private:
  const ProbePair& pair_;
  std::size_t n_;
  std::size_t labels_;
  std::size_t max_examples_;
  ProbeReport& report_;
  std::vector<std::vector<Action>> options_;
  std::vector<int> assigned_;
  Wide free_ = 1;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

}  // namespace

bool same_result(const PatternResult& x, const PatternResult& y) {
  if (x.index() != y.index()) return false;
  if (const auto* ex = std::get_if<Exit>(&x)) return ex->state == std::get<Exit>(y).state;
  return true;
}

std::optional<Distinguisher> distinguishes(const WalkingAutomaton& a, const Pluggable& x, const Pluggable& y) {
  if (x.body.signature().direction_name(x.dir) != y.body.signature().direction_name(y.dir)) {
    throw PreconditionError("probe: the subgraphs have different port directions");
  }
  Walker w;
  const Pattern px = x.as_pattern();
  const Pattern py = y.as_pattern();
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    PatternResult r1 = simulate_in_pattern(a, px, x.body.signature(), entry_for(x, StateId(q)), w);
    PatternResult r2 = simulate_in_pattern(a, py, y.body.signature(), entry_for(y, StateId(q)), w);
    if (!same_result(r1, r2)) return Distinguisher{a, StateId(q), r1, r2};
  }
  return std::nullopt;
}

ProbeReport distinguishability_probe(const Pluggable& x, const Pluggable& y,
                                     const std::function<const WalkingAutomaton*()>& next,
                                     std::size_t max_examples) {
  ProbeReport report;
  for (std::size_t l = 0; l < x.body.signature().label_count(); ++l) {
    report.labels.push_back(x.body.signature().label_name(LabelId(l)));
  }
  while (const WalkingAutomaton* a = next()) {
    report.num_states = std::max(report.num_states, a->state_count());
    ++report.automata;
    ++report.explored;
    if (auto d = distinguishes(*a, x, y)) {
      ++report.distinguishing;
      if (report.examples.size() < max_examples) report.examples.push_back(std::move(*d));
    }
  }
  return report;
}

ProbePair restrict_pair(const Pluggable& x, const Pluggable& y) {
  const Signature& sig = x.body.signature();
  if (!same_signature(sig, y.body.signature())) throw PreconditionError("probe: the subgraphs use different signatures");
  std::vector<LabelId> present;
  for (const Graph* g : {&x.body, &y.body}) {
    for (std::size_t v = 0; v < g->node_count(); ++v) present.push_back(g->label(NodeId(v)));
  }
  SignaturePtr small = restrict_labels(sig, present);
  auto rebind = [&](const Pluggable& p) {
    return Pluggable{p.body.rebind(small), p.port, small->direction(sig.direction_name(p.dir)), p.has_initial};
  };
  return {small, rebind(x), rebind(y)};
}

ProbeReport lazy_probe(const Pluggable& x, const Pluggable& y, std::size_t num_states, std::size_t max_examples) {
  if (num_states == 0) throw PreconditionError("probe: at least one state is needed");
  if (x.body.signature().direction_name(x.dir) != y.body.signature().direction_name(y.dir)) {
    throw PreconditionError("probe: the subgraphs have different port directions");
  }
  ProbePair pair = restrict_pair(x, y);
  ProbeReport report;
  report.num_states = num_states;
  for (std::size_t l = 0; l < pair.sig->label_count(); ++l) report.labels.push_back(pair.sig->label_name(LabelId(l)));
  LazySearch search(pair, num_states, max_examples, report);
  search.run();
  report.automata = narrow(search.covered_, "automaton count");
  report.distinguishing = narrow(search.distinguishing_, "distinguisher count");
  return report;
}

}  // namespace gwa

namespace gwa {

bool ProbeSuite::complete() const {
  for (std::size_t r = 0; r < reports.size(); ++r) {
    if (!reports[r].complete(expected[r])) return false;
  }
  return !reports.empty();
}

std::uint64_t ProbeSuite::distinguishing() const {
  std::uint64_t total = 0;
  for (const auto& r : reports) total += r.distinguishing;
  return total;
}

ProbeSuite probe_suite(std::size_t n, std::size_t k, std::size_t max_states, std::size_t jobs) {
  SignaturePtr sig = f_signature(k);
  struct Job {
    std::string name;
    Pluggable x;
    Pluggable y;
    std::size_t states;
  };
  std::vector<Job> work;
  for (std::size_t s = 1; s <= max_states; ++s) {
    work.push_back({"H_start/H_fake", build_H(sig, n, HVariant::kStart), build_H(sig, n, HVariant::kFake), s});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < sig->direction_count(); ++d) {
        const std::string dn = sig->direction_name(DirId(d));
        work.push_back({"F_{" + std::to_string(i) + "," + dn + "}/F_" + dn, build_F(sig, n, DirId(d), i),
                        build_F(sig, n, DirId(d), std::nullopt), s});
      }
    }
  }
  ProbeSuite out{n, k, {}, {}};
  out.reports = parallel_map(work.size(), jobs, [&](std::size_t j) {
    ProbeReport r = lazy_probe(work[j].x, work[j].y, work[j].states);
    r.name = work[j].name;
    return r;
  });
  for (std::size_t j = 0; j < work.size(); ++j) {
    ProbePair pair = restrict_pair(work[j].x, work[j].y);
    auto count = automaton_count(*pair.sig, work[j].states);
    out.expected.push_back(count ? *count : 0);
  }
  return out;
}

}  // namespace gwa
