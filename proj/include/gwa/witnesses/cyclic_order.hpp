#pragma once

#include <optional>
#include <vector>

#include "gwa/core/signature.hpp"

namespace gwa {

/// A cyclic arrangement of all directions of a signature.
class CyclicOrder {
 public:
  explicit CyclicOrder(std::vector<DirId> order);

  const std::vector<DirId>& order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  DirId next(DirId d) const { return order_[(pos_[d.index()] + 1) % order_.size()]; }
  DirId prev(DirId d) const { return order_[(pos_[d.index()] + order_.size() - 1) % order_.size()]; }

 private:
  std::vector<DirId> order_;
  std::vector<std::size_t> pos_;
};

/// -d is neither next(d) nor next(next(d)), for every d.
bool satisfies_opposite_gap(const Signature& sig, const CyclicOrder& order);

/// First order, by lexicographic backtracking over declaration positions
/// with the first direction fixed, satisfying the gap constraint; nullopt if
/// none exists.
std::optional<CyclicOrder> find_cyclic_order(const Signature& sig);

/// Same search, restricted to k >= 9 directions, where a solution always
/// exists. Throws PreconditionError for k < 9.
CyclicOrder make_cyclic_order(const Signature& sig);

}  // namespace gwa
