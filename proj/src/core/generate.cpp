#include "gwa/core/generate.hpp"

#include <functional>
#include <unordered_set>

#include "gwa/core/canonical.hpp"
#include "gwa/core/validate.hpp"

namespace gwa {

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw PreconditionError("Rng::below(0)");
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

namespace {

struct Slot {
  NodeId node;
  DirId dir;
};

std::vector<Slot> slots_of(const Signature& sig, const std::vector<LabelId>& labels) {
  std::vector<Slot> slots;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    for (DirId d : sig.dirs(labels[v])) slots.push_back({NodeId(v), d});
  }
  return slots;
}

bool balanced(const Signature& sig, const std::vector<Slot>& slots) {
  std::vector<long> count(sig.direction_count(), 0);
  for (const auto& s : slots) ++count[s.dir.index()];
  for (std::size_t d = 0; d < sig.direction_count(); ++d) {
    DirId back = sig.opposite(DirId(d));
    if (back.index() != d && count[d] != count[back.index()]) return false;
  }
  return true;
}

Graph assemble(const SignaturePtr& sig, const std::vector<LabelId>& labels, const std::vector<Slot>& slots,
               const std::vector<std::size_t>& partner) {
  GraphBuilder b(sig);
  for (std::size_t v = 0; v < labels.size(); ++v) b.add_node("v" + std::to_string(v), labels[v]);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    b.set_half_edge(slots[i].node, slots[i].dir, slots[partner[i]].node);
  }
  b.set_initial(NodeId(std::size_t{0}));
  return std::move(b).build();
}

// Slot j can close slot i: opposite directions, or i itself when a
// self-opposite direction loops back to its own node.
bool can_pair(const Signature& sig, const Slot& i, const Slot& j) { return sig.opposite(i.dir) == j.dir; }

}  // namespace

std::vector<Graph> enumerate_graphs(const SignaturePtr& sig, std::size_t max_nodes) {
  std::vector<LabelId> initial;
  std::vector<LabelId> other;
  for (std::size_t a = 0; a < sig->label_count(); ++a) {
    (sig->is_initial(LabelId(a)) ? initial : other).push_back(LabelId(a));
  }

  std::vector<Graph> out;
  std::unordered_set<CanonicalCode> seen;

  for (std::size_t m = 1; m <= max_nodes; ++m) {
    for (LabelId root : initial) {
      // Non-initial labels of nodes 1..m-1 as a non-decreasing sequence;
      // the matchings below realise every arrangement anyway.
      std::vector<std::size_t> pick(m - 1, 0);
      if (m > 1 && other.empty()) break;
      while (true) {
        std::vector<LabelId> labels{root};
        for (std::size_t x : pick) labels.push_back(other[x]);
        auto slots = slots_of(*sig, labels);
        if (balanced(*sig, slots)) {
          std::vector<std::size_t> partner(slots.size(), slots.size());
          std::function<void()> match = [&] {
            std::size_t i = 0;
            while (i < slots.size() && partner[i] != slots.size()) ++i;
            if (i == slots.size()) {
              Graph g = assemble(sig, labels, slots, partner);
              if (connected_components(g).size() != 1) return;
              if (seen.insert(canonical_encode(g)).second) out.push_back(std::move(g));
              return;
            }
            for (std::size_t j = i; j < slots.size(); ++j) {
              if (partner[j] != slots.size() || !can_pair(*sig, slots[i], slots[j])) continue;
              // A slot pairs with itself only for a self-opposite direction.
              if (j == i && !sig->is_self_opposite(slots[i].dir)) continue;
              partner[i] = j;
              partner[j] = i;
              match();
              partner[i] = slots.size();
              partner[j] = slots.size();
            }
          };
          match();
        }
        // Advance the non-decreasing sequence.
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] + 1 == other.size()) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t q = pos; q < pick.size(); ++q) pick[q] = pick[pos - 1];
      }
    }
  }
  return out;
}

Graph random_graph(const SignaturePtr& sig, Rng& rng, std::size_t min_nodes, std::size_t max_nodes,
                   std::size_t attempts) {
  if (min_nodes == 0 || min_nodes > max_nodes) throw PreconditionError("random_graph: bad node range");
  std::vector<LabelId> initial;
  std::vector<LabelId> other;
  for (std::size_t a = 0; a < sig->label_count(); ++a) {
    (sig->is_initial(LabelId(a)) ? initial : other).push_back(LabelId(a));
  }
  if (initial.empty()) throw PreconditionError("random_graph: signature has no initial label");

  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    std::size_t m = min_nodes + rng.below(max_nodes - min_nodes + 1);
    if (other.empty()) m = 1;
    std::vector<LabelId> labels{initial[rng.below(initial.size())]};
    for (std::size_t v = 1; v < m; ++v) labels.push_back(other[rng.below(other.size())]);
    auto slots = slots_of(*sig, labels);
    if (!balanced(*sig, slots)) continue;

    std::vector<std::size_t> partner(slots.size(), slots.size());
    bool stuck = false;
    for (std::size_t i = 0; i < slots.size() && !stuck; ++i) {
      if (partner[i] != slots.size()) continue;
      std::vector<std::size_t> options;
      for (std::size_t j = i; j < slots.size(); ++j) {
        if (partner[j] != slots.size() || !can_pair(*sig, slots[i], slots[j])) continue;
        if (j == i && !sig->is_self_opposite(slots[i].dir)) continue;
        options.push_back(j);
      }
      if (options.empty()) {
        stuck = true;
        break;
      }
      std::size_t j = options[rng.below(options.size())];
      partner[i] = j;
      partner[j] = i;
    }
    if (stuck) continue;
    Graph g = assemble(sig, labels, slots, partner);
    if (connected_components(g).size() == 1) return g;
  }
  throw PreconditionError("random_graph: no valid connected graph found");
}

}  // namespace gwa
