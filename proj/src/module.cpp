#include "mulhopf/module.hpp"

#include <map>
#include <mutex>

#include "mulhopf/errors.hpp"
#include "mulhopf/linalg.hpp"
#include "mulhopf/parallel.hpp"

namespace mulhopf {

std::string_view to_string(Side s) { return s == Side::left ? "left" : "right"; }

struct ModuleStructure::Data {
  Spec spec;
  std::mutex mutex;
  std::map<BasisId, std::vector<FactorPair>> decompositions;
  std::mutex span_mutex;
  struct Span {
    std::unique_ptr<SpanSolver<BasisId>> solver;
    std::vector<std::pair<BasisId, BasisId>> columns;
  };
  std::map<int, Span> spans;

  std::vector<FactorPair> decompose_basis(const BasisId& id);
  const Span& span(int radius);
};

ModuleStructure::ModuleStructure(Spec spec) : d_(std::make_shared<Data>()) {
  if (!spec.act) throw InputError("module '" + spec.name + "' has no action rule");
  d_->spec = std::move(spec);
}

ModuleStructure ModuleStructure::regular(const Algebra& a, Side side) {
  Spec s{.name = a.name(), .algebra = a, .carrier = a.domain(), .side = side, .act = {}, .decompose = {}};
  if (side == Side::right) {
    s.act = [a](const BasisId& m, const BasisId& x) { return a.mul_basis(m, x); };
  } else {
    s.act = [a](const BasisId& m, const BasisId& x) { return a.mul_basis(x, m); };
  }
  return ModuleStructure(std::move(s));
}

const std::string& ModuleStructure::name() const { return d_->spec.name; }
const Algebra& ModuleStructure::algebra() const { return d_->spec.algebra; }
const BasisDomain& ModuleStructure::carrier() const { return d_->spec.carrier; }
Side ModuleStructure::side() const { return d_->spec.side; }

Element ModuleStructure::basis(const BasisId& id) const {
  if (!carrier().contains(id)) throw InputError("foreign basis index in module " + name());
  return Element::unit(field(), id);
}

int ModuleStructure::radius(const Element& m) const {
  int r = 0;
  for (const auto& [id, c] : m) r = std::max(r, carrier().radius(id));
  return r;
}

void ModuleStructure::require_member(const Element& m) const {
  for (const auto& [id, c] : m) {
    if (!carrier().contains(id)) {
      throw InputError("element has basis index foreign to module " + name());
    }
  }
}

Element ModuleStructure::act_basis(const BasisId& m, const BasisId& a) const { return d_->spec.act(m, a); }

Element ModuleStructure::act(const Element& m, const Element& a) const {
  require_member(m);
  algebra().require_member(a);
  Accumulator<BasisId> acc(field());
  for (const auto& [x, c] : m) {
    for (const auto& [y, d] : a) acc.add(d_->spec.act(x, y), c * d);
  }
  return acc.finish();
}

const ModuleStructure::Data::Span& ModuleStructure::Data::span(int radius) {
  auto it = spans.find(radius);
  if (it != spans.end()) return it->second;
  Span s;
  s.solver = std::make_unique<SpanSolver<BasisId>>(spec.algebra.field());
  const Window wm = spec.carrier.window(radius);
  const Window wa = spec.algebra.window(radius);
  for (const auto& m : wm.ids) {
    for (const auto& a : wa.ids) {
      s.solver->add(spec.act(m, a));
      s.columns.emplace_back(m, a);
    }
  }
  return spans.emplace(radius, std::move(s)).first->second;
}

std::vector<FactorPair> ModuleStructure::Data::decompose_basis(const BasisId& id) {
  if (spec.decompose) return spec.decompose(id);
  const Field f = spec.algebra.field();
  const Element m = Element::unit(f, id);
  const int base = spec.expansion * std::max(spec.carrier.radius(id), 1);
  if (spec.algebra.has_local_units()) {
    for (int r : {base, 2 * base, 4 * base}) {
      auto e = spec.algebra.local_unit(r);
      if (!e) break;
      Accumulator<BasisId> acc(f);
      for (const auto& [a, c] : *e) acc.add(spec.act(id, a), c);
      if (acc.finish() == m) return {FactorPair{m, *e}};
      if (spec.algebra.unit()) break;
    }
  }
  const bool finite = spec.carrier.is_finite() && spec.algebra.is_finite();
  for (int r : {base, 2 * base}) {
    std::lock_guard lock(span_mutex);
    const Span& s = span(r);
    if (auto coeffs = s.solver->express(m)) {
      std::vector<FactorPair> out;
      for (const auto& [j, c] : *coeffs) {
        out.push_back({Element::single(s.columns[j].first, c), Element::unit(f, s.columns[j].second)});
      }
      return out;
    }
    if (finite) break;
  }
  throw WindowInsufficient("no decomposition of " + spec.carrier.format(id) + " in " + spec.name +
                           "·" + spec.algebra.name() + " on the searched window");
}

std::vector<FactorPair> ModuleStructure::decompose(const Element& m) const {
  require_member(m);
  std::vector<FactorPair> out;
  for (const auto& [id, c] : m) {
    std::vector<FactorPair> parts;
    bool cached = false;
    {
      std::lock_guard lock(d_->mutex);
      auto it = d_->decompositions.find(id);
      if (it != d_->decompositions.end()) {
        parts = it->second;
        cached = true;
      }
    }
    if (!cached) {
      parts = d_->decompose_basis(id);
      std::lock_guard lock(d_->mutex);
      d_->decompositions.emplace(id, parts);
    }
    for (auto& p : parts) out.push_back({c * p.first, std::move(p.second)});
  }
  return out;
}

namespace {

void require_windows(const Window& window_m, const Window& window_a) {
  if (window_m.ids.empty() || window_a.ids.empty()) throw InputError("empty window for module check");
}

std::string joint_label(const Window& window_m, const Window& window_a) {
  return window_m.label + " × " + window_a.label;
}

}  // namespace

Verdict check_module_associative(const ModuleStructure& m, const Window& window_m, const Window& window_a) {
  require_windows(window_m, window_a);
  const Algebra& a = m.algebra();
  const std::string label = joint_label(window_m, window_a);
  const std::size_t nm = window_m.ids.size(), na = window_a.ids.size();
  std::function<std::optional<Verdict>(std::size_t)> assoc = [&](std::size_t t) -> std::optional<Verdict> {
    const auto& x = window_m.ids[t / (na * na)];
    const auto& p = window_a.ids[(t / na) % na];
    const auto& q = window_a.ids[t % na];
    const Element ex = m.basis(x), ep = a.basis(p), eq = a.basis(q);
    // right: (x·p)·q = x·(pq); left: q·(p·x) = (qp)·x
    const Element lhs = m.act(m.act(ex, ep), eq);
    const Element rhs = m.side() == Side::right ? m.act(ex, a.mul(ep, eq)) : m.act(ex, a.mul(eq, ep));
    if (lhs == rhs) return std::nullopt;
    return Verdict::fail(label, {ex, ep, eq}, "action is not associative: " + m.format(lhs) + " vs " + m.format(rhs));
  };
  if (auto hit = first_hit(nm * na * na, assoc)) return hit->second;
  return Verdict::pass(window_m.exhaustive && window_a.exhaustive, label);
}

Verdict check_module_idempotent(const ModuleStructure& m, const Window& window_m, const Window& window_a) {
  require_windows(window_m, window_a);
  const std::string label = joint_label(window_m, window_a);
  SpanSolver<BasisId> span(m.field());
  for (const auto& x : window_m.ids) {
    for (const auto& p : window_a.ids) span.add(m.act_basis(x, p));
  }
  for (const auto& x : window_m.ids) {
    if (!span.express(m.basis(x))) {
      return Verdict::fail(label, {m.basis(x)}, m.carrier().format(x) + " is not in the span of M·A on the window");
    }
  }
  return Verdict::pass(window_m.exhaustive && window_a.exhaustive, label);
}

Verdict check_module_nondegenerate(const ModuleStructure& m, const Window& window_m, const Window& window_a) {
  require_windows(window_m, window_a);
  const std::string label = joint_label(window_m, window_a);
  using Key = std::pair<BasisId, BasisId>;
  SpanSolver<Key> ops(m.field());
  for (const auto& x : window_m.ids) {
    Accumulator<Key> col(m.field());
    for (const auto& p : window_a.ids) {
      for (const auto& [id, c] : m.act_basis(x, p)) col.add(Key{p, id}, c);
    }
    ops.add(col.finish());
  }
  if (!ops.dependencies().empty()) {
    Accumulator<BasisId> w(m.field());
    for (const auto& [j, c] : ops.dependencies().front()) w.add(window_m.ids[j], c);
    return Verdict::fail(label, {w.finish()}, "nonzero element annihilated by every window element");
  }
  return Verdict::pass(window_m.exhaustive && window_a.exhaustive, label);
}

ModuleReport check_module(const ModuleStructure& m, const Window& window_m, const Window& window_a) {
  return ModuleReport{check_module_associative(m, window_m, window_a),
                      check_module_idempotent(m, window_m, window_a),
                      check_module_nondegenerate(m, window_m, window_a)};
}

ModuleStructure tensor_module(const ModuleStructure& m, const ModuleStructure& n) {
  if (m.side() != n.side()) throw InputError("tensor_module: side mismatch");
  const std::size_t wm = m.carrier().width();
  const std::size_t wa = m.algebra().domain().width();
  ModuleStructure::Spec s;
  s.name = m.name() + "⊗" + n.name();
  s.algebra = tensor_algebra(m.algebra(), n.algebra());
  s.carrier = BasisDomain::tensor(m.carrier(), n.carrier());
  s.side = m.side();
  s.act = [m, n, wm, wa](const BasisId& x, const BasisId& y) {
    auto [x1, x2] = split_id(x, wm);
    auto [y1, y2] = split_id(y, wa);
    return tensor(m.act_basis(x1, y1), n.act_basis(x2, y2));
  };
  return ModuleStructure(std::move(s));
}

}  // namespace mulhopf
