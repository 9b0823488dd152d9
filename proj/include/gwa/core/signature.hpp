#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gwa/core/types.hpp"

namespace gwa {

struct DirectionDecl {
  std::string name;
  std::string opposite;

  friend bool operator==(const DirectionDecl&, const DirectionDecl&) = default;
};

struct LabelDecl {
  std::string name;
  bool initial = false;
  std::vector<std::string> dirs;

  friend bool operator==(const LabelDecl&, const LabelDecl&) = default;
};

/// Directions with their opposites, node labels, the initial labels and the
/// per-label direction sets.
///
/// A signature can be constructed from arbitrary declarations; dangling
/// references are resolved to invalid ids and reported by
/// validate_signature(). Declaration order of directions is the fixed total
/// order used by canonical encoding and the cyclic-order search.
class Signature {
 public:
  Signature(std::vector<DirectionDecl> directions, std::vector<LabelDecl> labels);

  static std::shared_ptr<const Signature> make(std::vector<DirectionDecl> directions,
                                               std::vector<LabelDecl> labels);

  std::size_t direction_count() const { return directions_.size(); }
  std::size_t label_count() const { return labels_.size(); }

  const std::string& direction_name(DirId d) const { return directions_[d.index()].name; }
  /// Invalid id when the declared opposite does not exist.
  DirId opposite(DirId d) const { return opposite_[d.index()]; }
  bool is_self_opposite(DirId d) const { return opposite_[d.index()] == d; }
  std::optional<DirId> find_direction(std::string_view name) const;
  /// Throws StructuralError for unknown names.
  DirId direction(std::string_view name) const;

  const std::string& label_name(LabelId a) const { return labels_[a.index()].name; }
  bool is_initial(LabelId a) const { return labels_[a.index()].initial; }
  /// D_a in declaration order of directions (unknown names are skipped).
  std::span<const DirId> dirs(LabelId a) const { return label_dirs_[a.index()]; }
  bool has_dir(LabelId a, DirId d) const { return dir_table_[a.index() * directions_.size() + d.index()] != 0; }
  std::optional<LabelId> find_label(std::string_view name) const;
  LabelId label(std::string_view name) const;
  std::vector<LabelId> initial_labels() const;

  const std::vector<DirectionDecl>& direction_decls() const { return directions_; }
  const std::vector<LabelDecl>& label_decls() const { return labels_; }

  /// Names referenced by the declarations that could not be resolved.
  const std::vector<std::string>& unresolved() const { return unresolved_; }

  /// Same directions in the same order, same labels in the same order; D_a
  /// compared as sets.
  friend bool operator==(const Signature& x, const Signature& y);

 private:
  std::vector<DirectionDecl> directions_;
  std::vector<LabelDecl> labels_;
  std::vector<DirId> opposite_;
  std::vector<std::vector<DirId>> label_dirs_;
  std::vector<unsigned char> dir_table_;
  std::map<std::string, DirId, std::less<>> direction_index_;
  std::map<std::string, LabelId, std::less<>> label_index_;
  std::vector<std::string> unresolved_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// Pointer-equal or structurally equal.
bool same_signature(const Signature& x, const Signature& y);

/// Copy of `sig` with the same directions and only the listed labels, in
/// their original relative order.
SignaturePtr restrict_labels(const Signature& sig, std::span<const LabelId> keep);

/// k directions a, -a, b, -b, ... and, for odd k, one self-opposite
/// direction "s" (the only way to have an odd number of directions).
std::vector<DirectionDecl> standard_directions(std::size_t k);

}  // namespace gwa
