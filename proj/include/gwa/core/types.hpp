#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gwa {

// Dense index into one of the per-object tables (directions, labels, nodes,
// states). The tag keeps the four index spaces from being mixed up.
template <class Tag>
struct Id {
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();

  std::uint32_t value = kInvalid;

  constexpr Id() = default;
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  constexpr bool valid() const { return value != kInvalid; }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using DirId = Id<struct DirTag>;
using LabelId = Id<struct LabelTag>;
using NodeId = Id<struct NodeTag>;
using StateId = Id<struct StateTag>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input references something that does not exist (unknown label, direction,
// node or state name) or cannot be represented (conflicting declarations).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed document; the message carries the location.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  std::string kind;
  std::string subject;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view kind) const;
  void add(std::string kind, std::string subject, std::string detail = {});
  void merge(const ValidationReport& other, std::string_view prefix = {});
};

std::ostream& operator<<(std::ostream& os, const Violation& v);
std::ostream& operator<<(std::ostream& os, const ValidationReport& r);

}  // namespace gwa

template <class Tag>
struct std::hash<gwa::Id<Tag>> {
  std::size_t operator()(gwa::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
