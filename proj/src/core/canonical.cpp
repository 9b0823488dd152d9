#include "gwa/core/canonical.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace gwa {
namespace {

void put_varint(std::string& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

}  // namespace

std::string CanonicalCode::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes_) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

CanonicalCode canonical_encode(const Graph& g) {
  if (g.empty()) throw StructuralError("cannot encode an empty graph");
  const Signature& sig = g.signature();
  const std::size_t n = g.node_count();
  const std::size_t dirs = sig.direction_count();
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> order(n, kUnseen);
  std::vector<NodeId> queue;
  queue.reserve(n);
  queue.push_back(g.initial());
  order[g.initial().index()] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId v = queue[head];
    for (std::size_t d = 0; d < dirs; ++d) {
      NodeId u = g.neighbor(v, DirId(d));
      if (u.valid() && order[u.index()] == kUnseen) {
        order[u.index()] = static_cast<std::uint32_t>(queue.size());
        queue.push_back(u);
      }
    }
  }
  if (queue.size() != n) {
    throw StructuralError("graph is disconnected: " + std::to_string(n - queue.size()) +
                          " node(s) unreachable from the initial node");
  }

  std::string out;
  put_varint(out, n);
  put_varint(out, dirs);
  for (NodeId v : queue) {
    const auto& name = sig.label_name(g.label(v));
    put_varint(out, name.size());
    out += name;
    for (std::size_t d = 0; d < dirs; ++d) {
      NodeId u = g.neighbor(v, DirId(d));
      put_varint(out, u.valid() ? std::uint64_t{order[u.index()]} + 1 : 0);
    }
  }
  return CanonicalCode(std::move(out));
}

}  // namespace gwa
