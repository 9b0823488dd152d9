#pragma once

#include <string>
#include <vector>

#include "gwa/trees/characterization.hpp"

namespace gwa {

struct Thm4Row {
  std::string automaton;  // "accept-all" or "parity"
  std::size_t states = 0;
  CharacterizationReport report;
  FishboneCheck fishbones;

  bool ok() const { return report.ok() && fishbones.mismatches == 0; }
};

/// verify_characterization and measure_fishbones for the accept-all and
/// parity automata over standard_tree_signature(k).
std::vector<Thm4Row> thm4_report(std::size_t max_nodes, std::size_t k = 2, std::size_t jobs = 1);

}  // namespace gwa
