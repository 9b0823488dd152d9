#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gwa/hom/invert.hpp"
#include "gwa/witnesses/gadgets.hpp"

namespace gwa {

/// An automaton that tells the two subgraphs apart when entering through the
/// port in `entry`.
struct Distinguisher {
  WalkingAutomaton automaton;
  StateId entry;
  PatternResult first;
  PatternResult second;
};

struct ProbeReport {
  std::string name;
  std::vector<std::string> labels;    // label set the automata range over
  std::size_t num_states = 0;
  std::uint64_t automata = 0;         // automata covered
  std::uint64_t distinguishing = 0;   // of those, how many tell the pair apart
  std::uint64_t explored = 0;         // partial automata examined
  std::vector<Distinguisher> examples;

  bool complete(std::uint64_t expected) const { return automata == expected; }
};

/// Same result for every entry state, as far as the probe is concerned:
/// equal variants, and equal states on Exit.
bool same_result(const PatternResult& x, const PatternResult& y);

/// Compares `a` on both subgraphs for every entry state; returns the first
/// entry that tells them apart. Both bodies must be over a's signature and
/// share the port direction.
std::optional<Distinguisher> distinguishes(const WalkingAutomaton& a, const Pluggable& x, const Pluggable& y);

/// Runs `distinguishes` on every automaton from `next` (nullptr ends the
/// stream).
ProbeReport distinguishability_probe(const Pluggable& x, const Pluggable& y,
                                     const std::function<const WalkingAutomaton*()>& next,
                                     std::size_t max_examples = 3);

/// Exhaustive probe over every automaton with `num_states` states whose
/// label set is the labels occurring in x or y. Transitions are fixed lazily,
/// only when a walk reaches them; each resulting partial automaton stands for
/// all of its completions, so `automata` equals automaton_count over that
/// label set. Examples leave unreached transitions undefined and are over the
/// restricted signature.
ProbeReport lazy_probe(const Pluggable& x, const Pluggable& y, std::size_t num_states, std::size_t max_examples = 3);

/// The restricted signature lazy_probe enumerates over, and both subgraphs
/// rebound to it.
struct ProbePair {
  SignaturePtr sig;
  Pluggable x;
  Pluggable y;
};
ProbePair restrict_pair(const Pluggable& x, const Pluggable& y);

/// lazy_probe on H_start / H_fake and on F_{i,d} / F_d for every i < n and
/// direction d, over f_signature(k), with 1..max_states states. Each
/// report carries the number of automata it must cover.
struct ProbeSuite {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<ProbeReport> reports;
  std::vector<std::uint64_t> expected;  // automaton_count per report

  bool complete() const;
  std::uint64_t distinguishing() const;
};
ProbeSuite probe_suite(std::size_t n = 2, std::size_t k = 4, std::size_t max_states = 2, std::size_t jobs = 1);

}  // namespace gwa
