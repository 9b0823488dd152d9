#include "gwa/io/json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

namespace gwa {
namespace {

// A JSON value together with its location, for error messages.
class Cursor {
 public:
  Cursor(const Json& j, std::string where, std::string pointer = "")
      : j_(&j), where_(std::move(where)), pointer_(std::move(pointer)) {}

  const Json& json() const { return *j_; }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string loc = where_.empty() ? "" : where_ + ":";
    throw ParseError(loc + (pointer_.empty() ? "/" : pointer_) + ": " + msg);
  }

  bool has(std::string_view key) const { return j_->is_object() && j_->contains(key); }

  Cursor at(std::string_view key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail("missing key '" + std::string(key) + "'");
    return Cursor(*it, where_, pointer_ + "/" + std::string(key));
  }

  Cursor at(std::size_t i) const { return Cursor((*j_)[i], where_, pointer_ + "/" + std::to_string(i)); }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  const Json::object_t& object() const {
    if (!j_->is_object()) fail("expected an object");
    return j_->get_ref<const Json::object_t&>();
  }

  Cursor member(const std::string& key) const { return Cursor(j_->at(key), where_, pointer_ + "/" + key); }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).string());
    return out;
  }

 private:
  const Json* j_;
  std::string where_;
  std::string pointer_;
};

// Runs f, turning structural errors into located parse errors.
template <class F>
auto located(const Cursor& c, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    c.fail(e.what());
  }
}

Json nodes_json(const Graph& g) {
  std::vector<std::pair<std::string, std::string>> nodes;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    nodes.emplace_back(g.id(NodeId(v)), g.signature().label_name(g.label(NodeId(v))));
  }
  std::sort(nodes.begin(), nodes.end());
  Json out = Json::array();
  for (const auto& [id, label] : nodes) out.push_back({{"id", id}, {"label", label}});
  return out;
}

// Each symmetric pair once, from the endpoint whose (id, direction) is
// smaller; asymmetric slots individually, flagged.
Json edges_json(const Graph& g) {
  const Signature& sig = g.signature();
  std::vector<std::tuple<std::string, std::string, std::string, bool>> edges;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    for (std::size_t d = 0; d < sig.direction_count(); ++d) {
      NodeId from(v);
      DirId dir(d);
      NodeId to = g.neighbor(from, dir);
      if (!to.valid()) continue;
      DirId back = sig.opposite(dir);
      const bool symmetric = back.valid() && g.neighbor(to, back) == from;
      if (symmetric && std::pair{g.id(to), sig.direction_name(back)} < std::pair{g.id(from), sig.direction_name(dir)}) {
        continue;
      }
      edges.emplace_back(g.id(from), sig.direction_name(dir), g.id(to), !symmetric);
    }
  }
  std::sort(edges.begin(), edges.end());
  Json out = Json::array();
  for (const auto& [from, dir, to, half] : edges) {
    Json e = {{"from", from}, {"dir", dir}, {"to", to}};
    if (half) e["half"] = true;
    out.push_back(std::move(e));
  }
  return out;
}

// Reads nodes and edges into a builder; returns it for the caller to finish.
GraphBuilder read_body(const Cursor& c, const SignaturePtr& sig) {
  GraphBuilder b(sig);
  Cursor nodes = c.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Cursor n = nodes.at(i);
    std::string id = n.at("id").string();
    std::string label = n.at("label").string();
    located(n, [&] { return b.add_node(id, label); });
  }
  if (!c.has("edges")) return b;
  Cursor edges = c.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Cursor e = edges.at(i);
    const std::string from = e.at("from").string();
    const std::string dir = e.at("dir").string();
    const std::string to = e.at("to").string();
    const bool half = e.has("half") && e.at("half").boolean();
    located(e, [&] {
      NodeId v = b.node(from);
      NodeId u = b.node(to);
      DirId d = sig->direction(dir);
      if (half) {
        b.set_half_edge(v, d, u);
      } else {
        b.connect(v, d, u);
      }
      return 0;
    });
  }
  return b;
}

SignaturePtr pick_signature(const Cursor& c, const SignaturePtr& given, const std::string& where) {
  if (!c.has("signature")) {
    if (!given) c.fail("no signature: none inline and none supplied");
    return given;
  }
  SignaturePtr inline_sig = signature_from_json(c.json().at("signature"), where.empty() ? "signature" : where);
  if (given && !same_signature(*given, *inline_sig)) c.at("signature").fail("differs from the supplied signature");
  return inline_sig;
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t p = 0; p < end; ++p) {
      if (text[p] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find(": "); p != std::string::npos) what = what.substr(p + 2);
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json signature_to_json(const Signature& sig) {
  Json dirs = Json::array();
  for (const auto& d : sig.direction_decls()) dirs.push_back({{"name", d.name}, {"opposite", d.opposite}});
  Json labels = Json::array();
  for (const auto& l : sig.label_decls()) {
    std::vector<std::string> ds = l.dirs;
    std::sort(ds.begin(), ds.end());
    labels.push_back({{"name", l.name}, {"initial", l.initial}, {"dirs", ds}});
  }
  return {{"directions", dirs}, {"labels", labels}};
}

SignaturePtr signature_from_json(const Json& j, const std::string& where) {
  Cursor c(j, where);
  std::vector<DirectionDecl> dirs;
  Cursor ds = c.at("directions");
  for (std::size_t i = 0; i < ds.size(); ++i) {
    dirs.push_back({ds.at(i).at("name").string(), ds.at(i).at("opposite").string()});
  }
  std::vector<LabelDecl> labels;
  Cursor ls = c.at("labels");
  for (std::size_t i = 0; i < ls.size(); ++i) {
    Cursor l = ls.at(i);
    labels.push_back({l.at("name").string(), l.has("initial") && l.at("initial").boolean(), l.at("dirs").strings()});
  }
  return located(c, [&] { return Signature::make(std::move(dirs), std::move(labels)); });
}

SignaturePtr embedded_signature(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("signature")) return nullptr;
  return signature_from_json(j.at("signature"), where.empty() ? "signature" : where);
}

Json graph_to_json(const Graph& g, bool with_signature) {
  Json out = {{"nodes", nodes_json(g)}, {"edges", edges_json(g)}};
  out["initial"] = g.empty() ? Json(nullptr) : Json(g.id(g.initial()));
  if (with_signature) out["signature"] = signature_to_json(g.signature());
  return out;
}

Graph graph_from_json(const Json& j, const SignaturePtr& sig, const std::string& where) {
  Cursor c(j, where);
  if (!j.is_object()) c.fail("expected a graph object");
  SignaturePtr s = pick_signature(c, sig, where);
  GraphBuilder b = read_body(c, s);
  Cursor init = c.at("initial");
  if (!init.json().is_null()) {
    const std::string id = init.string();
    located(init, [&] {
      b.set_initial(b.node(id));
      return 0;
    });
  } else if (b.node_count() != 0) {
    init.fail("a non-empty graph needs an initial node");
  }
  return std::move(b).build();
}

Json automaton_to_json(const WalkingAutomaton& a, bool with_signature) {
  const Signature& sig = a.signature();
  std::vector<std::pair<std::string, std::string>> accept;
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> moves;
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    for (std::size_t l = 0; l < sig.label_count(); ++l) {
      const Action& act = a.action(StateId(q), LabelId(l));
      const std::string& state = a.state_name(StateId(q));
      const std::string& label = sig.label_name(LabelId(l));
      if (act.kind == Action::Kind::kAccept) accept.emplace_back(state, label);
      if (act.kind == Action::Kind::kMove) {
        moves.emplace_back(state, label, a.state_name(act.next), sig.direction_name(act.dir));
      }
    }
  }
  std::sort(accept.begin(), accept.end());
  std::sort(moves.begin(), moves.end());
  Json acc = Json::array();
  for (const auto& [q, l] : accept) acc.push_back({q, l});
  Json tr = Json::array();
  for (const auto& [q, l, next, dir] : moves) tr.push_back({{"state", q}, {"label", l}, {"next", next}, {"dir", dir}});
  Json out = {{"states", a.state_names()}, {"initial", a.state_name(a.initial())}, {"accept", acc}, {"transitions", tr}};
  if (with_signature) out["signature"] = signature_to_json(sig);
  return out;
}

WalkingAutomaton automaton_from_json(const Json& j, const SignaturePtr& sig, const std::string& where) {
  Cursor c(j, where);
  if (!j.is_object()) c.fail("expected an automaton object");
  SignaturePtr s = pick_signature(c, sig, where);
  Cursor states = c.at("states");
  std::vector<std::string> names = states.strings();
  if (names.empty()) states.fail("an automaton needs at least one state");
  WalkingAutomaton a(s, names);
  auto state = [&](const Cursor& at) { return located(at, [&] { return a.state(at.string()); }); };
  auto label = [&](const Cursor& at) { return located(at, [&] { return s->label(at.string()); }); };
  a.set_initial(state(c.at("initial")));
  auto claim = [&](const Cursor& at, StateId q, LabelId l) {
    if (a.action(q, l).kind != Action::Kind::kUndefined) at.fail("(state, label) pair defined twice");
  };
  Cursor acc = c.at("accept");
  for (std::size_t i = 0; i < acc.size(); ++i) {
    Cursor pair = acc.at(i);
    if (pair.size() != 2) pair.fail("expected [state, label]");
    StateId q = state(pair.at(0));
    LabelId l = label(pair.at(1));
    claim(pair, q, l);
    a.set_accept(q, l);
  }
  Cursor tr = c.at("transitions");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    Cursor t = tr.at(i);
    StateId q = state(t.at("state"));
    LabelId l = label(t.at("label"));
    StateId next = state(t.at("next"));
    Cursor dc = t.at("dir");
    DirId d = located(dc, [&] { return s->direction(dc.string()); });
    claim(t, q, l);
    a.set_move(q, l, next, d);
  }
  return a;
}

Json homomorphism_to_json(const Homomorphism& h) {
  const Signature& src = h.source();
  Json patterns = Json::object();
  for (std::size_t l = 0; l < src.label_count(); ++l) {
    const Pattern& p = h.pattern(LabelId(l));
    Json ports = Json::object();
    for (const Port& port : p.ports()) ports[src.direction_name(port.dir)] = p.body().id(port.node);
    patterns[src.label_name(LabelId(l))] = {
        {"nodes", nodes_json(p.body())}, {"edges", edges_json(p.body())}, {"ports", ports}};
  }
  return {{"source_sig", signature_to_json(src)}, {"target_sig", signature_to_json(h.target())}, {"patterns", patterns}};
}

Homomorphism homomorphism_from_json(const Json& j, const std::string& where) {
  Cursor c(j, where);
  SignaturePtr src = signature_from_json(c.at("source_sig").json(), where.empty() ? "source_sig" : where + ":/source_sig");
  SignaturePtr tgt = signature_from_json(c.at("target_sig").json(), where.empty() ? "target_sig" : where + ":/target_sig");
  Cursor pats = c.at("patterns");
  for (const auto& [name, value] : pats.object()) {
    if (!src->find_label(name)) pats.member(name).fail("'" + name + "' is not a source label");
  }
  std::vector<Pattern> patterns;
  for (std::size_t l = 0; l < src->label_count(); ++l) {
    const std::string& name = src->label_name(LabelId(l));
    Cursor p = pats.at(name);
    Graph body = read_body(p, tgt).build();
    std::map<std::string, std::string> ports;
    Cursor pc = p.at("ports");
    for (const auto& [dir, node] : pc.object()) ports[dir] = pc.member(dir).string();
    patterns.push_back(located(pc, [&] { return make_pattern(*src, *tgt, std::move(body), ports); }));
  }
  return Homomorphism(src, tgt, std::move(patterns));
}

Json tree_automaton_to_json(const TreeAutomaton& a, bool with_signature) {
  const Signature& sig = a.signature();
  std::vector<std::tuple<std::string, std::vector<std::string>, std::string>> rows;
  for (std::size_t l = 0; l < sig.label_count(); ++l) {
    LabelId label(l);
    for (std::size_t s = 0; s < a.table_size(label); ++s) {
      StateId r = a.entry(label, s);
      if (!r.valid()) continue;
      std::vector<std::string> args;
      for (StateId q : a.arguments(label, s)) args.push_back(a.state_name(q));
      rows.emplace_back(sig.label_name(label), std::move(args), a.state_name(r));
    }
  }
  std::sort(rows.begin(), rows.end());
  Json delta = Json::array();
  for (const auto& [label, args, result] : rows) delta.push_back({{"label", label}, {"args", args}, {"result", result}});
  Json out = {{"states", a.state_names()}, {"accept", a.state_name(a.accept())}, {"delta", delta}};
  if (with_signature) out["signature"] = signature_to_json(sig);
  return out;
}

TreeAutomaton tree_automaton_from_json(const Json& j, const SignaturePtr& sig, const std::string& where) {
  Cursor c(j, where);
  if (!j.is_object()) c.fail("expected a tree automaton object");
  SignaturePtr s = pick_signature(c, sig, where);
  Cursor states = c.at("states");
  std::vector<std::string> names = states.strings();
  if (names.empty()) states.fail("a tree automaton needs at least one state");
  auto index = [&](const Cursor& at) {
    const std::string name = at.string();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) at.fail("unknown state '" + name + "'");
    return StateId(static_cast<std::size_t>(it - names.begin()));
  };
  StateId accept = index(c.at("accept"));
  TreeAutomaton a = located(c, [&] { return TreeAutomaton(s, names, accept); });
  Cursor delta = c.at("delta");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    Cursor row = delta.at(i);
    Cursor lc = row.at("label");
    LabelId label = located(lc, [&] { return s->label(lc.string()); });
    Cursor ac = row.at("args");
    if (ac.size() != a.rank(label)) {
      ac.fail("label '" + lc.string() + "' has rank " + std::to_string(a.rank(label)) + ", got " +
              std::to_string(ac.size()) + " arguments");
    }
    std::vector<StateId> args;
    for (std::size_t p = 0; p < ac.size(); ++p) args.push_back(index(ac.at(p)));
    if (a.delta(label, args).valid()) row.fail("transition defined twice");
    a.set_delta(label, args, index(row.at("result")));
  }
  return a;
}

std::string to_dot(const Graph& g, std::string_view name) {
  const Signature& sig = g.signature();
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(std::string(name)) << " {\n";
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    NodeId n(v);
    os << "  " << quote(g.id(n)) << " [label=" << quote(g.id(n) + "\\n" + sig.label_name(g.label(n)));
    if (n == g.initial()) os << ", shape=doublecircle";
    os << "];\n";
  }
  Json edges = edges_json(g);
  for (const auto& e : edges) {
    os << "  " << quote(e["from"]) << " -> " << quote(e["to"]) << " [label=" << quote(e["dir"]);
    if (e.contains("half")) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace gwa
