#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gwa/engine/run.hpp"
#include "gwa/hom/homomorphism.hpp"
#include "gwa/witnesses/cyclic_order.hpp"
#include "gwa/witnesses/gadgets.hpp"

namespace gwa {

/// The F labels over k >= 9 standard directions plus go_{-d,a} (d != -a),
/// go_{a,b}, c_- {-a, a}, q0? {-a}, and for every d: d? (all directions),
/// acc_d and rej_d ({-d, -next(d), next(next(d))}), where next is the
/// cyclic order found by make_cyclic_order.
SignaturePtr theorem2_signature(std::size_t k);

/// Label names used by the construction.
std::string probe_label(const Signature& sig, DirId d);   // "<d>?"
std::string accept_label(const Signature& sig, DirId d);  // "acc_<d>"
std::string reject_label(const Signature& sig, DirId d);  // "rej_<d>"

/// h(d?): nodes v_e for every e, v_d labelled acc_d and the others rej_e;
/// v_e --next(next(e))--> v_{next(e)}, and v_e carries the port -e.
Pattern ring_pattern(const SignaturePtr& sig, const CyclicOrder& order, DirId d);

/// Identity on every label except d?, which goes to its ring.
Homomorphism theorem2_homomorphism(const SignaturePtr& sig);

/// G_{i,j,d}: F_{i,d} followed by w_go1, w_go2, w_1..w_j (c_-), w_end (q0?).
Graph build_G_counter(const SignaturePtr& sig, std::size_t n, std::size_t i, std::size_t j, DirId d);

/// G_{i,d,d'}: F_{i,d} and F_e for every e != d, all ports joined at v (d'?).
Graph build_G_probe(const SignaturePtr& sig, std::size_t n, std::size_t i, DirId d, DirId dprime);

/// The escape automaton extended to the theorem-2 labels: go_{d1,d2} moves
/// d2, c_- decrements and moves a (rejecting in q0), q0? accepts only in q0,
/// acc_d accepts and rej_d rejects. Requires n >= 4.
WalkingAutomaton build_counter_automaton(const SignaturePtr& sig, std::size_t n);

struct CounterRow {
  std::size_t i = 0;
  std::size_t j = 0;
  DirId d;
  bool expected = false;  // i == j
  bool accepted = false;
  std::string outcome;
};

struct ProbeRow {
  std::size_t i = 0;
  DirId d;
  DirId dprime;
  bool expected = false;  // d == d'
  bool accepted = false;
  std::string outcome;
};

struct Claim3Report {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<CounterRow> counter;
  std::vector<ProbeRow> probe;
  std::size_t mismatches = 0;
  std::size_t max_steps = 0;       // longest run
  bool bound_ok = true;            // every run within |Q|*|V| + 1 steps

  bool ok() const { return mismatches == 0 && bound_ok; }
};

/// Runs the counter automaton on h(G_{i,j,d}) and h(G_{i,d,d'}) for every
/// i, j < n and all directions. `jobs` = 0 uses every hardware thread.
Claim3Report claim3_sweep(std::size_t n, std::size_t k, std::size_t jobs = 1);

struct EscapeRow {
  std::size_t n = 0;
  std::size_t i = 0;
  DirId d;
  std::optional<StateId> exit_state;  // set if the walk left through the port
  bool ok = false;                    // left in q_i through direction d
};

struct EscapeReport {
  std::size_t k = 0;
  std::vector<EscapeRow> rows;
  std::size_t failures = 0;

  bool ok() const { return failures == 0; }
};

/// Escape automaton on F_{i,d} over f_signature(k), for every n in `ns`,
/// i < n and direction d.
EscapeReport escape_sweep(const std::vector<std::size_t>& ns, std::size_t k);

}  // namespace gwa
