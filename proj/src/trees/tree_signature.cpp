#include "gwa/trees/tree_signature.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace gwa {

std::vector<DirectionDecl> tree_directions(std::size_t k) {
  std::vector<DirectionDecl> out;
  for (std::size_t i = 1; i <= k; ++i) {
    out.push_back({"+" + std::to_string(i), "-" + std::to_string(i)});
    out.push_back({"-" + std::to_string(i), "+" + std::to_string(i)});
  }
  return out;
}

SignaturePtr make_tree_signature(std::size_t k, const std::vector<TreeLabelDecl>& labels) {
  std::vector<LabelDecl> decls;
  for (const auto& l : labels) {
    if (l.rank > k) throw StructuralError("label '" + l.name + "': rank exceeds k");
    if (!l.initial && (l.parent < 1 || l.parent > k)) throw StructuralError("label '" + l.name + "': bad parent direction");
    LabelDecl d{l.name, l.initial, {}};
    if (!l.initial) d.dirs.push_back("-" + std::to_string(l.parent));
    for (std::size_t i = 1; i <= l.rank; ++i) d.dirs.push_back("+" + std::to_string(i));
    decls.push_back(std::move(d));
  }
  return Signature::make(tree_directions(k), std::move(decls));
}

SignaturePtr standard_tree_signature(std::size_t k) {
  std::vector<TreeLabelDecl> labels;
  for (std::size_t r = 0; r <= k; ++r) labels.push_back({"r" + std::to_string(r), true, r, 0});
  for (std::size_t d = 1; d <= k; ++d) {
    for (std::size_t r = 0; r <= k; ++r) {
      labels.push_back({"x" + std::to_string(d) + "_" + std::to_string(r), false, r, d});
    }
  }
  return make_tree_signature(k, labels);
}

namespace {

// Parses "+i" / "-i"; returns 0 on anything else.
long direction_index(const std::string& name, char sign) {
  if (name.size() < 2 || name[0] != sign || name[1] == '0') return 0;
  long value = 0;
  for (std::size_t p = 1; p < name.size(); ++p) {
    if (name[p] < '0' || name[p] > '9' || value > 100000) return 0;
    value = value * 10 + (name[p] - '0');
  }
  return value;
}

}  // namespace

ValidationReport validate_tree_signature(const Signature& sig) {
  ValidationReport report;
  const std::size_t dirs = sig.direction_count();
  if (dirs == 0 || dirs % 2 != 0) {
    report.add("not a tree signature", "directions", "expected +1,-1,...,+k,-k");
    return report;
  }
  const std::size_t k = dirs / 2;
  for (std::size_t i = 1; i <= k; ++i) {
    auto plus = sig.find_direction("+" + std::to_string(i));
    auto minus = sig.find_direction("-" + std::to_string(i));
    if (!plus || !minus || sig.opposite(*plus) != *minus) {
      report.add("not a tree signature", "directions", "+" + std::to_string(i) + " and -" + std::to_string(i) +
                                                           " must exist and be opposite");
    }
  }
  if (!report.ok()) return report;

  bool any_initial = false;
  for (std::size_t l = 0; l < sig.label_count(); ++l) {
    LabelId a(l);
    std::size_t parents = 0;
    std::vector<long> children;
    for (DirId d : sig.dirs(a)) {
      const std::string& name = sig.direction_name(d);
      if (direction_index(name, '-') > 0) ++parents;
      if (long c = direction_index(name, '+'); c > 0) children.push_back(c);
    }
    std::sort(children.begin(), children.end());
    bool contiguous = true;
    for (std::size_t c = 0; c < children.size(); ++c) contiguous = contiguous && children[c] == static_cast<long>(c + 1);
    const bool initial = sig.is_initial(a);
    any_initial = any_initial || initial;
    if (!contiguous || parents != (initial ? 0u : 1u)) {
      report.add("bad label shape", sig.label_name(a),
                 initial ? "root labels need directions {+1..+rank}" : "labels need directions {-d, +1..+rank}");
    }
  }
  if (!any_initial) report.add("no initial label", "signature");
  return report;
}

TreeShape::TreeShape(const Signature& sig) {
  ValidationReport report = validate_tree_signature(sig);
  if (!report.ok()) {
    throw PreconditionError("not a tree signature: " + report.violations.front().kind + " (" +
                            report.violations.front().subject + ")");
  }
  const std::size_t k = sig.direction_count() / 2;
  for (std::size_t i = 1; i <= k; ++i) {
    plus_.push_back(sig.direction("+" + std::to_string(i)));
    minus_.push_back(sig.direction("-" + std::to_string(i)));
  }
  for (std::size_t l = 0; l < sig.label_count(); ++l) {
    std::size_t rank = 0;
    std::size_t parent = 0;
    for (DirId d : sig.dirs(LabelId(l))) {
      const std::string& name = sig.direction_name(d);
      if (name[0] == '+') ++rank;
      if (name[0] == '-') parent = static_cast<std::size_t>(direction_index(name, '-'));
    }
    rank_.push_back(rank);
    parent_.push_back(parent);
  }
}

bool is_tree(const Graph& g) {
  if (!validate_tree_signature(g.signature()).ok()) return false;
  return validate_graph(g).ok();
}

std::vector<NodeId> tree_children(const Graph& g, const TreeShape& shape, NodeId v) {
  std::vector<NodeId> out;
  const std::size_t r = shape.rank(g.label(v));
  for (std::size_t i = 1; i <= r; ++i) out.push_back(g.neighbor(v, shape.child_dir(i)));
  return out;
}

std::vector<NodeId> post_order(const Graph& g, const TreeShape& shape) {
  std::vector<NodeId> out;
  if (g.empty()) return out;
  // Iterative: (node, next child index).
  std::vector<std::pair<NodeId, std::size_t>> stack{{g.initial(), 1}};
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i > shape.rank(g.label(v))) {
      out.push_back(v);
      stack.pop_back();
      continue;
    }
    NodeId c = g.neighbor(v, shape.child_dir(i++));
    if (!c.valid()) throw PreconditionError("not a tree: node '" + g.id(v) + "' lacks a child");
    if (out.size() + stack.size() > g.node_count()) throw PreconditionError("not a tree: cycle through child edges");
    stack.push_back({c, 1});
  }
  return out;
}

std::string tree_term(const Graph& t) {
  if (t.empty()) return "";
  TreeShape shape(t.signature());
  std::function<std::string(NodeId)> term = [&](NodeId v) {
    std::string out = t.signature().label_name(t.label(v));
    auto kids = tree_children(t, shape, v);
    if (kids.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < kids.size(); ++i) out += (i ? "," : "") + (kids[i].valid() ? term(kids[i]) : "?");
    return out + ")";
  };
  return term(t.initial());
}

namespace {

struct Term {
  LabelId label;
  std::vector<std::uint32_t> kids;
};

class TreeGenerator {
 public:
  explicit TreeGenerator(const SignaturePtr& sig) : sig_(sig), shape_(*sig) {}

  // Subtrees of exactly `size` nodes whose root has parent direction d
  // (d = 0: whole trees).
  const std::vector<std::uint32_t>& trees(std::size_t d, std::size_t size) {
    auto key = std::pair{d, size};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::uint32_t> out;
    for (std::size_t l = 0; l < sig_->label_count(); ++l) {
      LabelId a(l);
      if (shape_.parent(a) != d || (d == 0) != sig_->is_initial(a)) continue;
      const std::size_t r = shape_.rank(a);
      if (r == 0) {
        if (size == 1) out.push_back(add({a, {}}));
        continue;
      }
      if (size < r + 1) continue;
      std::vector<std::size_t> sizes(r, 1);
      sizes.back() = size - r;
      // Compositions of size-1 into r positive parts, lexicographic.
      for (;;) {
        combine(a, sizes, out);
        if (!next_composition(sizes)) break;
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  Graph build(std::uint32_t root) const {
    GraphBuilder b(sig_);
    std::function<NodeId(std::uint32_t)> place = [&](std::uint32_t t) {
      NodeId v = b.add_node("n" + std::to_string(b.node_count()), pool_[t].label);
      for (std::size_t i = 0; i < pool_[t].kids.size(); ++i) {
        NodeId c = place(pool_[t].kids[i]);
        b.connect(v, shape_.child_dir(i + 1), c);
      }
      return v;
    };
    NodeId r = place(root);
    b.set_initial(r);
    return std::move(b).build();
  }

 private:
  std::uint32_t add(Term t) {
    pool_.push_back(std::move(t));
    return static_cast<std::uint32_t>(pool_.size() - 1);
  }

  static bool next_composition(std::vector<std::size_t>& parts) {
    // Lexicographic successor with the same sum: move one unit leftwards.
    const std::size_t r = parts.size();
    if (r < 2) return false;
    std::size_t p = r - 1;
    while (p > 0 && parts[p] == 1) --p;
    if (p == 0) return false;
    // parts[p] > 1 and everything after is 1: bump p-1, refill the tail.
    std::size_t rest = 0;
    for (std::size_t t = p; t < r; ++t) rest += parts[t];
    ++parts[p - 1];
    --rest;
    for (std::size_t t = p; t < r; ++t) parts[t] = 1;
    parts[r - 1] = rest - (r - 1 - p);
    return true;
  }

  void combine(LabelId a, const std::vector<std::size_t>& sizes, std::vector<std::uint32_t>& out) {
    const std::size_t r = sizes.size();
    std::vector<const std::vector<std::uint32_t>*> lists;
    for (std::size_t i = 0; i < r; ++i) {
      lists.push_back(&trees(i + 1, sizes[i]));
      if (lists.back()->empty()) return;
    }
    std::vector<std::size_t> pick(r, 0);
    for (;;) {
      Term t{a, {}};
      for (std::size_t i = 0; i < r; ++i) t.kids.push_back((*lists[i])[pick[i]]);
      out.push_back(add(std::move(t)));
      std::size_t i = r;
      while (i > 0 && ++pick[i - 1] == lists[i - 1]->size()) pick[--i] = 0;
      if (i == 0) return;
    }
  }

  SignaturePtr sig_;
  TreeShape shape_;
  std::vector<Term> pool_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> memo_;
};

}  // namespace

std::vector<Graph> enumerate_trees(const SignaturePtr& sig, std::size_t max_nodes) {
  TreeGenerator gen(sig);
  std::vector<Graph> out;
  for (std::size_t size = 1; size <= max_nodes; ++size) {
    // Copy: trees() may grow the memo and invalidate references.
    std::vector<std::uint32_t> roots = gen.trees(0, size);
    for (std::uint32_t t : roots) out.push_back(gen.build(t));
  }
  return out;
}

}  // namespace gwa
