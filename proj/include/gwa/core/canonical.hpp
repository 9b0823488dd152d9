#pragma once

#include <compare>
#include <functional>
#include <string>

#include "gwa/core/graph.hpp"

namespace gwa {

/// Byte string identifying a pointed, direction-labelled graph up to
/// isomorphism.
class CanonicalCode {
 public:
  CanonicalCode() = default;
  explicit CanonicalCode(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }
  std::string hex() const;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;

 private:
  std::string bytes_;
};

/// Breadth-first numbering from the initial node, expanding directions in
/// declaration order. Since every node has at most one neighbour per
/// direction, the numbering is forced by the pointed structure, so two graphs
/// get the same code iff an isomorphism maps initial node to initial node and
/// preserves labels and directions.
///
/// Labels are encoded by name, directions by declaration position.
/// Throws StructuralError for empty or disconnected graphs.
CanonicalCode canonical_encode(const Graph& g);

}  // namespace gwa

template <>
struct std::hash<gwa::CanonicalCode> {
  std::size_t operator()(const gwa::CanonicalCode& c) const noexcept { return std::hash<std::string>{}(c.bytes()); }
};
