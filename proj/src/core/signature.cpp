#include "gwa/core/signature.hpp"

#include <algorithm>
#include <ostream>

namespace gwa {

bool ValidationReport::has(std::string_view kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

void ValidationReport::add(std::string kind, std::string subject, std::string detail) {
  violations.push_back({std::move(kind), std::move(subject), std::move(detail)});
}

void ValidationReport::merge(const ValidationReport& other, std::string_view prefix) {
  for (const auto& v : other.violations) {
    violations.push_back({v.kind, std::string(prefix) + v.subject, v.detail});
  }
}

std::ostream& operator<<(std::ostream& os, const Violation& v) {
  os << v.kind << ": " << v.subject;
  if (!v.detail.empty()) os << " (" << v.detail << ")";
  return os;
}

std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
  if (r.ok()) return os << "valid";
  for (const auto& v : r.violations) os << v << '\n';
  return os;
}

Signature::Signature(std::vector<DirectionDecl> directions, std::vector<LabelDecl> labels)
    : directions_(std::move(directions)), labels_(std::move(labels)) {
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    direction_index_.try_emplace(directions_[i].name, DirId(i));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    label_index_.try_emplace(labels_[i].name, LabelId(i));
  }

  opposite_.resize(directions_.size());
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    auto it = direction_index_.find(directions_[i].opposite);
    if (it == direction_index_.end()) {
      unresolved_.push_back("direction " + directions_[i].name + ": opposite " + directions_[i].opposite);
    } else {
      opposite_[i] = it->second;
    }
  }

  dir_table_.assign(labels_.size() * directions_.size(), 0);
  label_dirs_.resize(labels_.size());
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    for (const auto& name : labels_[a].dirs) {
      auto it = direction_index_.find(name);
      if (it == direction_index_.end()) {
        unresolved_.push_back("label " + labels_[a].name + ": direction " + name);
        continue;
      }
      dir_table_[a * directions_.size() + it->second.index()] = 1;
    }
    for (std::size_t d = 0; d < directions_.size(); ++d) {
      if (dir_table_[a * directions_.size() + d]) label_dirs_[a].push_back(DirId(d));
    }
  }
}

SignaturePtr Signature::make(std::vector<DirectionDecl> directions, std::vector<LabelDecl> labels) {
  return std::make_shared<const Signature>(std::move(directions), std::move(labels));
}

std::optional<DirId> Signature::find_direction(std::string_view name) const {
  auto it = direction_index_.find(name);
  if (it == direction_index_.end()) return std::nullopt;
  return it->second;
}

DirId Signature::direction(std::string_view name) const {
  if (auto d = find_direction(name)) return *d;
  throw StructuralError("unknown direction '" + std::string(name) + "'");
}

std::optional<LabelId> Signature::find_label(std::string_view name) const {
  auto it = label_index_.find(name);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

LabelId Signature::label(std::string_view name) const {
  if (auto a = find_label(name)) return *a;
  throw StructuralError("unknown label '" + std::string(name) + "'");
}

std::vector<LabelId> Signature::initial_labels() const {
  std::vector<LabelId> out;
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    if (labels_[a].initial) out.push_back(LabelId(a));
  }
  return out;
}

bool operator==(const Signature& x, const Signature& y) {
  if (x.directions_ != y.directions_ || x.labels_.size() != y.labels_.size()) return false;
  for (std::size_t a = 0; a < x.labels_.size(); ++a) {
    if (x.labels_[a].name != y.labels_[a].name || x.labels_[a].initial != y.labels_[a].initial) return false;
  }
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return x.dir_table_ == y.dir_table_ && sorted(x.unresolved_) == sorted(y.unresolved_);
}

bool same_signature(const Signature& x, const Signature& y) { return &x == &y || x == y; }

SignaturePtr restrict_labels(const Signature& sig, std::span<const LabelId> keep) {
  std::vector<LabelId> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<LabelDecl> labels;
  labels.reserve(sorted.size());
  for (LabelId a : sorted) labels.push_back(sig.label_decls()[a.index()]);
  return Signature::make(sig.direction_decls(), std::move(labels));
}

std::vector<DirectionDecl> standard_directions(std::size_t k) {
  std::vector<DirectionDecl> out;
  for (std::size_t i = 0; i < k / 2; ++i) {
    std::string name = i < 26 ? std::string(1, static_cast<char>('a' + i)) : "d" + std::to_string(i);
    out.push_back({name, "-" + name});
    out.push_back({"-" + name, name});
  }
  if (k % 2 == 1) out.push_back({"s", "s"});
  return out;
}

}  // namespace gwa
