#include "gwa/witnesses/theorem2.hpp"

#include "gwa/util/parallel.hpp"

namespace gwa {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

SignaturePtr directions_only(std::size_t k) { return Signature::make(standard_directions(k), {}); }

}  // namespace

std::string probe_label(const Signature& sig, DirId d) { return sig.direction_name(d) + "?"; }
std::string accept_label(const Signature& sig, DirId d) { return "acc_" + sig.direction_name(d); }
std::string reject_label(const Signature& sig, DirId d) { return "rej_" + sig.direction_name(d); }

SignaturePtr theorem2_signature(std::size_t k) {
  require(k >= 9, "the theorem-2 signature needs k >= 9 directions");
  const SignaturePtr bare = directions_only(k);
  const Signature& s = *bare;
  const CyclicOrder order = make_cyclic_order(s);
  auto dirs = standard_directions(k);
  auto labels = f_labels(dirs);
  auto name = [&](DirId d) { return s.direction_name(d); };

  const DirId a = s.direction("a");
  const DirId b = s.direction("b");
  for (std::size_t i = 0; i < k; ++i) {
    DirId d(i);
    if (d == s.opposite(a)) continue;
    DirId back = s.opposite(d);
    labels.push_back({go2_label(s, back, a), false, {name(back), "a"}});
  }
  labels.push_back({go2_label(s, a, b), false, {"a", "b"}});
  labels.push_back({"c_-", false, {"-a", "a"}});
  labels.push_back({"q0?", false, {"-a"}});
  std::vector<std::string> all;
  for (const auto& d : dirs) all.push_back(d.name);
  for (std::size_t i = 0; i < k; ++i) labels.push_back({probe_label(s, DirId(i)), false, all});
  for (std::size_t i = 0; i < k; ++i) {
    DirId d(i);
    std::vector<std::string> ring{name(s.opposite(d)), name(s.opposite(order.next(d))), name(order.next(order.next(d)))};
    labels.push_back({accept_label(s, d), false, ring});
    labels.push_back({reject_label(s, d), false, ring});
  }
  return Signature::make(std::move(dirs), std::move(labels));
}

Pattern ring_pattern(const SignaturePtr& sig, const CyclicOrder& order, DirId d) {
  const Signature& s = *sig;
  const std::size_t k = s.direction_count();
  GraphBuilder b(sig);
  std::vector<NodeId> v(k);
  for (std::size_t e = 0; e < k; ++e) {
    DirId de(e);
    v[e] = b.add_node("v_" + s.direction_name(de), de == d ? accept_label(s, de) : reject_label(s, de));
  }
  for (std::size_t e = 0; e < k; ++e) {
    DirId de(e);
    b.connect(v[e], order.next(order.next(de)), v[order.next(de).index()]);
  }
  std::vector<Port> ports;
  for (std::size_t e = 0; e < k; ++e) {
    DirId out = s.opposite(DirId(e));
    ports.push_back({out, out, v[e]});
  }
  return Pattern(std::move(b).build(), std::move(ports), k);
}

Homomorphism theorem2_homomorphism(const SignaturePtr& sig) {
  const Signature& s = *sig;
  const CyclicOrder order = make_cyclic_order(s);
  std::vector<Pattern> patterns;
  for (std::size_t l = 0; l < s.label_count(); ++l) {
    LabelId label(l);
    const std::string& name = s.label_name(label);
    if (name.size() > 1 && name.back() == '?' && name != "q0?") {
      patterns.push_back(ring_pattern(sig, order, s.direction(name.substr(0, name.size() - 1))));
      continue;
    }
    GraphBuilder b(sig);
    NodeId v = b.add_node(name, label);
    std::vector<Port> ports;
    for (DirId d : s.dirs(label)) ports.push_back({d, d, v});
    patterns.emplace_back(std::move(b).build(), std::move(ports), s.direction_count());
  }
  return Homomorphism(sig, sig, std::move(patterns));
}

Graph build_G_counter(const SignaturePtr& sig, std::size_t n, std::size_t i, std::size_t j, DirId d) {
  require(i < n && j < n, "G_counter needs i, j < n");
  const Signature& s = *sig;
  const DirId a = s.direction("a");
  const DirId b = s.direction("b");
  const bool minus_a = d == s.opposite(a);

  GraphBuilder g(sig);
  Pluggable f = build_F(sig, n, d, i);
  auto ids = embed(g, f.body, "");
  NodeId w1 = g.add_node("w_go1", minus_a ? go2_label(s, a, b) : go2_label(s, s.opposite(d), a));
  NodeId w2 = g.add_node("w_go2", minus_a ? go2_label(s, s.opposite(b), a) : go2_label(s, s.opposite(a), a));
  g.connect(ids[f.port.index()], d, w1);
  g.connect(w1, minus_a ? b : a, w2);
  NodeId last = w2;
  for (std::size_t t = 1; t <= j; ++t) {
    NodeId w = g.add_node("w_" + std::to_string(t), "c_-");
    g.connect(last, a, w);
    last = w;
  }
  NodeId end = g.add_node("w_end", "q0?");
  g.connect(last, a, end);
  g.set_initial(ids[f.body.initial().index()]);
  return std::move(g).build();
}

Graph build_G_probe(const SignaturePtr& sig, std::size_t n, std::size_t i, DirId d, DirId dprime) {
  require(i < n, "G_probe needs i < n");
  const Signature& s = *sig;
  GraphBuilder g(sig);
  NodeId v = g.add_node("v", probe_label(s, dprime));
  std::optional<NodeId> initial;
  for (std::size_t e = 0; e < s.direction_count(); ++e) {
    DirId de(e);
    const bool main = de == d;
    Pluggable f = build_F(sig, n, de, main ? std::optional<std::size_t>(i) : std::nullopt);
    auto ids = embed(g, f.body, "F" + s.direction_name(de) + ".");
    g.connect(ids[f.port.index()], de, v);
    if (main) initial = ids[f.body.initial().index()];
  }
  g.set_initial(*initial);
  return std::move(g).build();
}

WalkingAutomaton build_counter_automaton(const SignaturePtr& sig, std::size_t n) {
  require(n >= 4, "the counter automaton needs n >= 4");
  const Signature& s = *sig;
  require(s.direction_count() >= 9 && s.find_label("q0?").has_value(), "not a theorem-2 signature");
  WalkingAutomaton m = build_escape_automaton(sig, n);
  const DirId a = s.direction("a");
  const DirId b = s.direction("b");

  auto move_all = [&](const std::string& label, DirId dir) {
    LabelId l = s.label(label);
    for (std::size_t q = 0; q < n; ++q) m.set_move(StateId(q), l, StateId(q), dir);
  };
  for (std::size_t i = 0; i < s.direction_count(); ++i) {
    DirId d(i);
    if (d != s.opposite(a)) move_all(go2_label(s, s.opposite(d), a), a);
  }
  move_all(go2_label(s, a, b), b);

  const LabelId dec = s.label("c_-");
  for (std::size_t q = 1; q < n; ++q) m.set_move(StateId(q), dec, StateId(q - 1), a);
  m.set_accept(StateId(std::size_t{0}), s.label("q0?"));
  for (std::size_t i = 0; i < s.direction_count(); ++i) {
    LabelId acc = s.label(accept_label(s, DirId(i)));
    for (std::size_t q = 0; q < n; ++q) m.set_accept(StateId(q), acc);
  }
  return m;
}

Claim3Report claim3_sweep(std::size_t n, std::size_t k, std::size_t jobs) {
  const SignaturePtr sig = theorem2_signature(k);
  const Homomorphism h = theorem2_homomorphism(sig);
  const WalkingAutomaton m = build_counter_automaton(sig, n);
  Claim3Report report;
  report.n = n;
  report.k = k;

  struct Result {
    bool accepted = false;
    std::string outcome;
    std::size_t steps = 0;
    bool bound_ok = true;
  };
  auto evaluate = [&](const Graph& g) {
    Graph image = apply(h, g);
    Outcome o = run(m, image);
    Result r{accepted(o), outcome_name(o), outcome_steps(o), true};
    r.bound_ok = r.steps <= m.state_count() * image.node_count() + 1;
    return r;
  };

  const std::size_t counter_cases = n * n * k;
  auto counter = parallel_map(counter_cases, jobs, [&](std::size_t c) {
    return evaluate(build_G_counter(sig, n, c / (n * k), (c / k) % n, DirId(c % k)));
  });
  for (std::size_t c = 0; c < counter_cases; ++c) {
    CounterRow row{c / (n * k), (c / k) % n, DirId(c % k), false, counter[c].accepted, counter[c].outcome};
    row.expected = row.i == row.j;
    if (row.expected != row.accepted) ++report.mismatches;
    report.max_steps = std::max(report.max_steps, counter[c].steps);
    report.bound_ok = report.bound_ok && counter[c].bound_ok;
    report.counter.push_back(row);
  }

  const std::size_t probe_cases = n * k * k;
  auto probe = parallel_map(probe_cases, jobs, [&](std::size_t c) {
    return evaluate(build_G_probe(sig, n, c / (k * k), DirId((c / k) % k), DirId(c % k)));
  });
  for (std::size_t c = 0; c < probe_cases; ++c) {
    ProbeRow row{c / (k * k), DirId((c / k) % k), DirId(c % k), false, probe[c].accepted, probe[c].outcome};
    row.expected = row.d == row.dprime;
    if (row.expected != row.accepted) ++report.mismatches;
    report.max_steps = std::max(report.max_steps, probe[c].steps);
    report.bound_ok = report.bound_ok && probe[c].bound_ok;
    report.probe.push_back(row);
  }
  return report;
}

EscapeReport escape_sweep(const std::vector<std::size_t>& ns, std::size_t k) {
  const SignaturePtr sig = f_signature(k);
  EscapeReport report;
  report.k = k;
  Walker walker;
  for (std::size_t n : ns) {
    const WalkingAutomaton m = build_escape_automaton(sig, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < k; ++d) {
        Pluggable f = build_F(sig, n, DirId(d), i);
        Walk w = walker.walk(m, f.body, {m.initial(), f.body.initial()});
        EscapeRow row{n, i, DirId(d), std::nullopt, false};
        if (w.kind == Walk::Kind::kExit) {
          row.exit_state = w.exit_state;
          row.ok = w.exit_state == StateId(i) && w.exit_dir == DirId(d) && w.at.node == f.port;
        }
        if (!row.ok) ++report.failures;
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

}  // namespace gwa
