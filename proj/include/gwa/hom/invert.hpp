#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gwa/engine/run.hpp"
#include "gwa/hom/homomorphism.hpp"

namespace gwa {

/// Start at the pattern's initial node in the automaton's initial state.
struct StartEntry {};
/// Arrival along the external edge of direction `dir`: the walk begins at the
/// port node w_{-dir} in `state`.
struct EnterEntry {
  StateId state;
  DirId dir;  // source direction
};
using PatternEntry = std::variant<StartEntry, EnterEntry>;

struct AcceptInside {
  std::size_t steps = 0;
};
struct RejectInside {
  std::size_t steps = 0;
};
struct LoopInside {
  std::size_t steps = 0;
};
/// The automaton left through the port of direction `dir`, now in `state`.
struct Exit {
  StateId state;
  DirId dir;  // source direction
  std::size_t steps = 0;
  StateId from_state;  // state in which the exiting move was made
};
using PatternResult = std::variant<AcceptInside, RejectInside, LoopInside, Exit>;

/// Runs `a` inside a pattern body only. Throws PreconditionError when the
/// entry is not valid for the pattern (no port w_{-d}, no initial node) or the
/// automaton is not over the pattern's signature.
PatternResult simulate_in_pattern(const WalkingAutomaton& a, const Pattern& p, const Signature& source,
                                  const PatternEntry& entry, Walker& scratch);
PatternResult simulate_in_pattern(const WalkingAutomaton& a, const Homomorphism& h, LabelId label,
                                  const PatternEntry& entry);

/// How the states of an inverse automaton are laid out.
struct InverseLayout {
  bool has_p0 = false;      // separate initial state p0 at index 0
  bool degenerate = false;  // A never leaves h(a0): a single state
  std::size_t dirs = 0;     // |D_S|

  /// Index of (q, d); q-major, d in declaration order, after p0.
  StateId composite(StateId q, DirId d) const { return StateId((has_p0 ? 1 : 0) + q.index() * dirs + d.index()); }
};

struct Inversion {
  WalkingAutomaton automaton;
  InverseLayout layout;
};

/// The automaton B over h.source with L(B) = h^{-1}(L(A)). States are p0
/// (only with several initial labels) and every (q, d), named "(q,d)";
/// unreachable ones are kept. With a unique initial label a0 and A leaving
/// h(a0) in direction d from state q, B starts in (q, -d); if A never leaves
/// h(a0), B has the single state "p0" answering immediately.
///
/// Throws PreconditionError if `a` is not over h.target or h is invalid.
Inversion invert_with_layout(const WalkingAutomaton& a, const Homomorphism& h);
WalkingAutomaton invert(const WalkingAutomaton& a, const Homomorphism& h);

struct InverseCase {
  std::size_t graph = 0;
  Outcome b_outcome;
  Outcome a_outcome;
  bool acceptance_agrees = false;
  bool alignment_ok = false;   // B's t-th configuration is A's t-th external crossing
  bool refinement_ok = false;  // B loops => A loops; B rejects => A stops or loops inside one copy
  bool bound_ok = false;       // both runs decide within |Q|.|V| + 1 steps
  std::string detail;

  bool ok() const { return acceptance_agrees && alignment_ok && refinement_ok && bound_ok; }
};

struct InverseReport {
  std::size_t b_states = 0;
  std::vector<InverseCase> cases;
  std::size_t acceptance_disagreements = 0;
  std::size_t alignment_failures = 0;
  std::size_t refinement_failures = 0;
  std::size_t bound_failures = 0;

  bool ok() const {
    return acceptance_disagreements == 0 && alignment_failures == 0 && refinement_failures == 0 && bound_failures == 0;
  }
  /// Cases that failed any check.
  std::vector<const InverseCase*> failures() const;
};

/// Checks B = invert(a, h) against A on h(G) for every G in the suite.
InverseReport verify_inverse(const WalkingAutomaton& a, const Homomorphism& h, std::span<const Graph> suite);
InverseReport verify_inverse(const WalkingAutomaton& a, const Homomorphism& h, const Inversion& b,
                             std::span<const Graph> suite);

}  // namespace gwa
