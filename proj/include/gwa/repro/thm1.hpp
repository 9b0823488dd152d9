#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwa/engine/automaton.hpp"
#include "gwa/hom/invert.hpp"

namespace gwa {

/// Labels r (initial) and x over the pair a/-a, both with D = {a, -a}.
SignaturePtr pair_signature();
/// Labels r (initial, {s}) and x ({s, t}) over self-opposite s and t.
SignaturePtr self_opposite_pair_signature();
/// r1 (initial, {a,-a}), r2 (initial, {b,-b}), x ({a,-a,b,-b}).
SignaturePtr grid_signature();

/// Each source label a becomes two nodes "0" --u--> "1" labelled a.0 and a.1
/// over the source directions plus u/-u and w/-w: a.0 carries the first half
/// of D_a and u, a.1 the rest plus -u and a w self-loop. a.0 is initial iff a
/// is.
Homomorphism expanding_homomorphism(const SignaturePtr& source);

struct GraphSuite {
  std::string name;
  SignaturePtr sig;
  std::vector<Graph> graphs;
};

/// All graphs with at most `max_nodes` nodes over each two-label
/// signature above.
std::vector<GraphSuite> small_suites(std::size_t max_nodes = 6);
/// `count` seeded random graphs over grid_signature().
GraphSuite random_suite(std::uint64_t seed, std::size_t count = 200, std::size_t max_nodes = 10);

/// Random n-state automata over h.target, with the first one guaranteed to
/// leave the initial pattern (so the unique-initial case is non-degenerate).
std::vector<WalkingAutomaton> thm1_automata(const Homomorphism& h, std::size_t count, std::uint64_t seed,
                                            std::size_t num_states = 2);

struct StateCountRow {
  std::size_t n = 0;
  std::size_t k = 0;
  bool unique_initial = false;
  std::size_t expected = 0;
  std::size_t actual = 0;
};

/// invert() on k-direction signatures with one or two initial labels and
/// n-state automata that leave h(a0).
std::vector<StateCountRow> state_count_table(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& ks);

/// Seed of the random suite unless overridden.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Predicted |invert(a, h)|: 1 when a never leaves h(a0) (unique initial
/// label), else n.k plus one for p0 when there are several initial labels.
std::size_t predicted_inverse_states(const WalkingAutomaton& a, const Homomorphism& h);

/// verify_inverse over one graph suite and a batch of automata.
struct Thm1SuiteRun {
  std::string suite;
  std::size_t graphs = 0;
  std::size_t automata = 0;
  std::size_t cases = 0;
  std::vector<std::size_t> b_states;  // per automaton
  std::size_t acceptance_disagreements = 0;
  std::size_t alignment_failures = 0;
  std::size_t refinement_failures = 0;
  std::size_t bound_failures = 0;
  std::size_t state_count_failures = 0;
  std::vector<std::string> counterexamples;  // first few

  bool ok() const {
    return acceptance_disagreements == 0 && alignment_failures == 0 && refinement_failures == 0 &&
           bound_failures == 0 && state_count_failures == 0;
  }
};

enum class Thm1Suites { kSmall, kRandom, kAll };

struct Thm1Report {
  std::vector<StateCountRow> counts;  // n in {2,3,4}, k in {4,9}
  std::vector<Thm1SuiteRun> suites;
  bool ok() const;
};

/// Small suites: every graph with at most 6 nodes over the two two-label
/// signatures, automata with 1..3 states. Random suite: 200 graphs over
/// grid_signature() drawn from `seed`, 2- and 3-state automata. The
/// homomorphism is expanding_homomorphism throughout.
Thm1Report thm1_report(Thm1Suites which, std::uint64_t seed = kDefaultSeed, std::size_t jobs = 1);

}  // namespace gwa
