#include "gwa/witnesses/cyclic_order.hpp"

#include <functional>

namespace gwa {

CyclicOrder::CyclicOrder(std::vector<DirId> order) : order_(std::move(order)), pos_(order_.size()) {
  for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i].index()] = i;
}

bool satisfies_opposite_gap(const Signature& sig, const CyclicOrder& order) {
  if (order.size() != sig.direction_count()) return false;
  for (DirId d : order.order()) {
    DirId back = sig.opposite(d);
    if (back == order.next(d) || back == order.next(order.next(d))) return false;
  }
  return true;
}

std::optional<CyclicOrder> find_cyclic_order(const Signature& sig) {
  const std::size_t k = sig.direction_count();
  if (k == 0) return std::nullopt;
  std::vector<DirId> seq{DirId(std::size_t{0})};
  std::vector<char> used(k, 0);
  used[0] = 1;

  // A direction may follow the last two placed ones if neither of them has
  // it as opposite. The wrap-around is checked once the cycle is closed.
  auto fits = [&](DirId d) {
    const std::size_t m = seq.size();
    if (sig.opposite(seq[m - 1]) == d) return false;
    if (m >= 2 && sig.opposite(seq[m - 2]) == d) return false;
    return true;
  };
  std::function<bool()> extend = [&]() -> bool {
    if (seq.size() == k) return satisfies_opposite_gap(sig, CyclicOrder(seq));
    for (std::size_t i = 0; i < k; ++i) {
      if (used[i] || !fits(DirId(i))) continue;
      used[i] = 1;
      seq.push_back(DirId(i));
      if (extend()) return true;
      seq.pop_back();
      used[i] = 0;
    }
    return false;
  };
  if (!extend()) return std::nullopt;
  return CyclicOrder(seq);
}

CyclicOrder make_cyclic_order(const Signature& sig) {
  if (sig.direction_count() < 9) {
    throw PreconditionError("a cyclic order is only guaranteed for k >= 9 directions (got " +
                            std::to_string(sig.direction_count()) +
                            "); for fewer directions the gap constraint may be unsatisfiable");
  }
  auto order = find_cyclic_order(sig);
  if (!order) throw PreconditionError("no cyclic order satisfies the gap constraint");
  return *order;
}

}  // namespace gwa
