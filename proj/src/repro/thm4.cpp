#include "gwa/repro/thm4.hpp"

namespace gwa {

std::vector<Thm4Row> thm4_report(std::size_t max_nodes, std::size_t k, std::size_t jobs) {
  SignaturePtr sig = standard_tree_signature(k);
  std::vector<Thm4Row> rows;
  for (const auto& [name, a] : {std::pair{"accept-all", accept_all_automaton(sig)}, std::pair{"parity", parity_automaton(sig)}}) {
    Characterization c = build_characterization(a);
    rows.push_back({name, a.state_count(), verify_characterization(c, max_nodes, jobs), measure_fishbones(c, max_nodes, jobs)});
  }
  return rows;
}

}  // namespace gwa
