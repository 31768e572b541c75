#include "mulhopf/bialgebra.hpp"

#include <map>
#include <mutex>

#include "mulhopf/parallel.hpp"

namespace mulhopf {

// ---------------------------------------------------------------------------
// Counit

Counit::Counit(Algebra a, Rule rule, std::string name)
    : algebra_(std::move(a)), rule_(std::move(rule)), name_(std::move(name)) {
  if (!rule_) throw InputError("counit has no rule");
}

Scalar Counit::operator()(const Element& a) const {
  algebra_.require_member(a);
  Scalar s = Scalar::zero(algebra_.field());
  for (const auto& [id, c] : a) s += c * rule_(id);
  return s;
}

Extension Counit::as_extension() const {
  const Algebra k = Algebra::ground(algebra_.field());
  auto rule = rule_;
  return Extension(
      algebra_, k,
      [k, rule](const BasisId& id) {
        const Scalar c = rule(id);
        auto scale = [c](const BasisId& t) { return Element::single(t, c); };
        return Multiplier::from_basis(k, scale, scale);
      },
      name_);
}

Counit Counit::scaled(const Scalar& c) const {
  auto rule = rule_;
  return Counit(algebra_, [rule, c](const BasisId& id) { return c * rule(id); }, c.to_string() + "·" + name_);
}

std::optional<Element> counit_witness(const Counit& eps, const Window& window) {
  for (const auto& id : window.ids) {
    const Scalar v = eps.on_basis(id);
    if (!v.is_zero()) return Element::single(id, v.inverse());
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Slicer

struct Slicer::Data {
  Data(Extension d, IotaInverter inv) : delta(std::move(d)), inverter(std::move(inv)) {}
  Extension delta;
  IotaInverter inverter;
  std::mutex mutex;
  std::map<std::pair<BasisId, BasisId>, Element> right, left;
};

Slicer::Slicer(Extension delta, int probe_radius, int expansion) {
  const Algebra aa = delta.target();
  d_ = std::make_shared<Data>(std::move(delta), IotaInverter(aa, aa.window(probe_radius), expansion));
}

const Extension& Slicer::delta() const { return d_->delta; }
const Algebra& Slicer::algebra() const { return d_->delta.source(); }
const Algebra& Slicer::tensor2() const { return d_->delta.target(); }

Element Slicer::right(const BasisId& a, const BasisId& b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(d_->mutex);
    auto it = d_->right.find(key);
    if (it != d_->right.end()) return it->second;
  }
  const Algebra& A = algebra();
  const Multiplier x = d_->delta.on_basis(a) * psi_embed({Multiplier::identity(A), iota(A, A.basis(b))});
  const int r = std::max(A.domain().radius(a), A.domain().radius(b));
  Element p = d_->inverter.invert(x, r, Side::left);
  std::lock_guard lock(d_->mutex);
  return d_->right.emplace(key, std::move(p)).first->second;
}

Element Slicer::left(const BasisId& a, const BasisId& b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(d_->mutex);
    auto it = d_->left.find(key);
    if (it != d_->left.end()) return it->second;
  }
  const Algebra& A = algebra();
  const Multiplier x = psi_embed({iota(A, A.basis(b)), Multiplier::identity(A)}) * d_->delta.on_basis(a);
  const int r = std::max(A.domain().radius(a), A.domain().radius(b));
  Element p = d_->inverter.invert(x, r, Side::right);
  std::lock_guard lock(d_->mutex);
  return d_->left.emplace(key, std::move(p)).first->second;
}

// ---------------------------------------------------------------------------
// MultiplierBialgebra

struct MultiplierBialgebra::Data {
  std::string name;
  Algebra algebra;
  Extension delta;
  std::optional<Counit> counit;
  std::optional<Element> g;
  BialgebraOptions options;
  std::shared_ptr<Slicer> slicer;
};

namespace {

int probe_radius(const BialgebraOptions& o) { return o.probe_radius > 0 ? o.probe_radius : o.window; }

}  // namespace

MultiplierBialgebra::MultiplierBialgebra(std::string name, Algebra a, Extension delta, std::optional<Counit> counit,
                                         BialgebraOptions options) {
  if (!delta.source().same_as(a)) throw InputError("Δ must have source " + a.name());
  auto d = std::make_shared<Data>(Data{std::move(name), std::move(a), std::move(delta), std::move(counit),
                                       std::nullopt, options, nullptr});
  d->slicer = std::make_shared<Slicer>(d->delta, probe_radius(options), options.expansion);
  if (d->counit) d->g = counit_witness(*d->counit, d->algebra.window(options.window));
  d_ = std::move(d);
}

const std::string& MultiplierBialgebra::name() const { return d_->name; }
const Algebra& MultiplierBialgebra::algebra() const { return d_->algebra; }
const Algebra& MultiplierBialgebra::tensor2() const { return d_->delta.target(); }
const Extension& MultiplierBialgebra::delta() const { return d_->delta; }
const std::optional<Counit>& MultiplierBialgebra::counit() const { return d_->counit; }
const std::optional<Element>& MultiplierBialgebra::g() const { return d_->g; }
const BialgebraOptions& MultiplierBialgebra::options() const { return d_->options; }
const Slicer& MultiplierBialgebra::slicer() const { return *d_->slicer; }
Window MultiplierBialgebra::window() const { return d_->algebra.window(d_->options.window); }

const Counit& MultiplierBialgebra::require_counit() const {
  if (!d_->counit) throw InputError(d_->name + " has no counit");
  return *d_->counit;
}

MultiplierBialgebra MultiplierBialgebra::with_counit(Counit eps, bool keep_g) const {
  auto d = std::make_shared<Data>(*d_);
  d->counit = std::move(eps);
  if (!keep_g) d->g = counit_witness(*d->counit, window());
  MultiplierBialgebra out = *this;
  out.d_ = std::move(d);
  return out;
}

MultiplierBialgebra MultiplierBialgebra::with_options(BialgebraOptions options) const {
  auto d = std::make_shared<Data>(*d_);
  d->options = options;
  if (probe_radius(options) != probe_radius(d_->options) || options.expansion != d_->options.expansion) {
    d->slicer = std::make_shared<Slicer>(d->delta, probe_radius(options), options.expansion);
  }
  MultiplierBialgebra out = *this;
  out.d_ = std::move(d);
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

Element sweedler_slice(const MultiplierBialgebra& h, const Element& a, const Element& b, Side side) {
  h.algebra().require_member(a);
  h.algebra().require_member(b);
  Accumulator<BasisId> acc(h.algebra().field());
  for (const auto& [x, c] : a) {
    for (const auto& [y, d] : b) {
      acc.add(side == Side::right ? h.slicer().right(x, y) : h.slicer().left(x, y), c * d);
    }
  }
  return acc.finish();
}

namespace {

std::size_t width(const Algebra& a) { return a.domain().width(); }

std::string format3(const MultiplierBialgebra& h, const Element& x) {
  return format_element(BasisDomain::tensor(h.tensor2().domain(), h.algebra().domain()), x);
}

}  // namespace

Verdict check_coassociative(const MultiplierBialgebra& h, const Window& window) {
  const Slicer& s = h.slicer();
  const Algebra& A = h.algebra();
  const std::size_t w = width(A);
  const auto& ids = window.ids;
  if (ids.empty()) throw InputError("empty window for coassociativity");
  const std::size_t n = ids.size();
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& a = ids[t / (n * n)];
    const BasisId& b = ids[(t / n) % n];
    const BasisId& c = ids[t % n];
    Accumulator<BasisId> lhs(A.field()), rhs(A.field());
    for (const auto& [uv, k] : s.right(b, c)) {
      auto [u, v] = split_id(uv, w);
      lhs.add(tensor(s.left(u, a), A.basis(v)), k);
    }
    for (const auto& [uv, k] : s.left(b, a)) {
      auto [u, v] = split_id(uv, w);
      rhs.add(tensor(A.basis(u), s.right(v, c)), k);
    }
    Element l = lhs.finish(), r = rhs.finish();
    if (l == r) return std::nullopt;
    return Verdict::fail(window.label, {A.basis(a), A.basis(b), A.basis(c)},
                         "(a⊗1⊗1)(Δ⊗A)(Δ̃(b)(1⊗c)) = " + format3(h, l) + " but (A⊗Δ)((a⊗1)Δ̃(b))(1⊗1⊗c) = " +
                             format3(h, r));
  };
  if (auto hit = first_hit(n * n * n, probe)) return hit->second;
  return Verdict::pass(window.exhaustive, window.label);
}

Verdict check_coassociative_lifted(const MultiplierBialgebra& h, const Window& window, const Window& probes) {
  const Algebra& A = h.algebra();
  const Extension id = identity_extension(A);
  const Extension left = tensor_extensions(h.delta(), id);
  const Extension right = tensor_extensions(id, h.delta());
  std::vector<Verdict> parts;
  for (const auto& b : window.ids) {
    const Multiplier db = h.delta().on_basis(b);
    Verdict v = multiplier_eq(lift_to_multiplier(left, db), lift_to_multiplier(right, db), probes);
    if (!v.ok()) {
      v.witness.insert(v.witness.begin(), A.basis(b));
      v.detail = "lift(Δ⊗A)Δ̃(b) ≠ lift(A⊗Δ)Δ̃(b): " + v.detail;
      return v;
    }
    parts.push_back(v);
  }
  Verdict out = combine(parts);
  out.window = window.label + " × " + probes.label;
  return out;
}

Verdict check_counit(const MultiplierBialgebra& h, const Window& window) {
  const Counit& eps = h.require_counit();
  const Slicer& s = h.slicer();
  const Algebra& A = h.algebra();
  const std::size_t w = width(A);
  const auto& ids = window.ids;
  if (ids.empty()) throw InputError("empty window for counit check");
  const std::size_t n = ids.size();
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& a = ids[t / n];
    const BasisId& b = ids[t % n];
    const Element ab = A.mul_basis(a, b);
    Accumulator<BasisId> right(A.field()), left(A.field());
    for (const auto& [uv, k] : s.right(a, b)) {
      auto [u, v] = split_id(uv, w);
      right.add(v, k * eps.on_basis(u));
    }
    Element r = right.finish();
    if (!(r == ab)) {
      return Verdict::fail(window.label, {A.basis(a), A.basis(b)},
                           "(ε⊗A)(Δ̃(a)(1⊗b)) = " + A.format(r) + " but ab = " + A.format(ab));
    }
    for (const auto& [uv, k] : s.left(b, a)) {
      auto [u, v] = split_id(uv, w);
      left.add(u, k * eps.on_basis(v));
    }
    Element l = left.finish();
    if (!(l == ab)) {
      return Verdict::fail(window.label, {A.basis(a), A.basis(b)},
                           "(A⊗ε)((a⊗1)Δ̃(b)) = " + A.format(l) + " but ab = " + A.format(ab));
    }
    return std::nullopt;
  };
  if (auto hit = first_hit(n * n, probe)) return hit->second;
  return Verdict::pass(window.exhaustive, window.label);
}

Verdict check_counit_lifted(const MultiplierBialgebra& h, const Window& window, const Window& probes) {
  const Algebra& A = h.algebra();
  const Extension id = identity_extension(A);
  const Extension eps = h.require_counit().as_extension();
  const Extension left = tensor_extensions(eps, id);
  const Extension right = tensor_extensions(id, eps);
  std::vector<Verdict> parts;
  for (const auto& a : window.ids) {
    const Multiplier da = h.delta().on_basis(a);
    const Multiplier ia = iota(A, A.basis(a));
    for (const auto* f : {&left, &right}) {
      Verdict v = multiplier_eq(lift_to_multiplier(*f, da), ia, probes);
      if (!v.ok()) {
        v.witness.insert(v.witness.begin(), A.basis(a));
        v.detail = std::string(f == &left ? "lift(ε⊗A)" : "lift(A⊗ε)") + "Δ̃(a) ≠ ι(a): " + v.detail;
        return v;
      }
      parts.push_back(v);
    }
  }
  Verdict out = combine(parts);
  out.window = window.label + " × " + probes.label;
  return out;
}

CounitSynthesis synthesize_counit(const MultiplierBialgebra& h, const Window& window) {
  const Slicer& s = h.slicer();
  const Algebra& A = h.algebra();
  const Field f = A.field();
  const std::size_t w = width(A);
  std::map<BasisId, std::size_t> unknown;
  std::vector<BasisId> unknown_ids;
  auto var = [&](const BasisId& id) {
    auto [it, inserted] = unknown.emplace(id, unknown_ids.size());
    if (inserted) unknown_ids.push_back(id);
    return it->second;
  };
  std::vector<std::pair<Vector, Scalar>> equations;
  auto emit = [&](std::map<BasisId, Accumulator<std::size_t>>& rows, const Element& target) {
    for (const auto& [t, c] : target) rows.try_emplace(t, Accumulator<std::size_t>(f));
    for (auto& [t, acc] : rows) equations.emplace_back(acc.finish(), target.coeff(t));
  };
  auto solve = [&]() -> std::pair<std::optional<Vector>, std::vector<Vector>> {
    std::vector<Accumulator<std::size_t>> cols(unknown_ids.size(), Accumulator<std::size_t>(f));
    Accumulator<std::size_t> rhs(f);
    for (std::size_t r = 0; r < equations.size(); ++r) {
      for (const auto& [j, c] : equations[r].first) cols[j].add(r, c);
      rhs.add(r, equations[r].second);
    }
    std::vector<Vector> columns;
    for (auto& c : cols) columns.push_back(c.finish());
    SparseMatrix m(f, equations.size(), std::move(columns));
    return {solve_linear(m, rhs.finish()), kernel_basis(m)};
  };

  for (const auto& a : window.ids) {
    for (const auto& b : window.ids) {
      std::map<BasisId, Accumulator<std::size_t>> rows;
      for (const auto& [uv, k] : s.right(a, b)) {
        auto [u, v] = split_id(uv, w);
        rows.try_emplace(v, Accumulator<std::size_t>(f)).first->second.add(var(u), k);
      }
      emit(rows, A.mul_basis(a, b));
    }
  }
  CounitSynthesis out;
  try {
    for (const auto& a : window.ids) {
      for (const auto& b : window.ids) {
        std::map<BasisId, Accumulator<std::size_t>> rows;
        for (const auto& [uv, k] : s.left(b, a)) {
          auto [u, v] = split_id(uv, w);
          rows.try_emplace(u, Accumulator<std::size_t>(f)).first->second.add(var(v), k);
        }
        emit(rows, A.mul_basis(a, b));
      }
    }
  } catch (const SliceUndefined& e) {
    if (!solve().first) {
      out.diagnostic = "the right counit condition (ε⊗A)(Δ̃(a)(1⊗b)) = ab is inconsistent on the window";
      return out;
    }
    throw;
  }
  auto [x, kernel] = solve();
  if (!x) {
    out.diagnostic = "the counit conditions are inconsistent on the window";
    return out;
  }
  std::vector<bool> free(unknown_ids.size(), false);
  for (const auto& v : kernel) {
    for (const auto& [j, c] : v) free[j] = true;
  }
  for (const auto& id : window.ids) {
    auto it = unknown.find(id);
    if (it == unknown.end() || free[it->second]) {
      throw WindowInsufficient("ε(" + A.domain().format(id) + ") is not determined by the counit conditions on " +
                               window.label);
    }
  }
  for (std::size_t j = 0; j < unknown_ids.size(); ++j) {
    if (!free[j]) out.table.emplace(unknown_ids[j], x->coeff(j));
  }
  auto table = std::make_shared<const std::map<BasisId, Scalar>>(out.table);
  auto domain = A.domain();
  Counit eps(A, [table, domain](const BasisId& id) {
    auto it = table->find(id);
    if (it == table->end()) throw WindowInsufficient("ε(" + domain.format(id) + ") lies outside the synthesized window");
    return it->second;
  }, "ε");
  for (const auto& a : window.ids) {
    for (const auto& b : window.ids) {
      const Element ab = A.mul_basis(a, b);
      bool known = true;
      for (const auto& [id, c] : ab) known = known && table->count(id);
      if (!known) continue;
      if (!(eps(ab) == eps.on_basis(a) * eps.on_basis(b))) {
        out.table.clear();
        out.diagnostic = "the solution is not multiplicative: ε(" + A.domain().format(a) + "·" +
                         A.domain().format(b) + ") ≠ ε(a)ε(b)";
        return out;
      }
    }
  }
  out.counit = std::move(eps);
  return out;
}

// ---------------------------------------------------------------------------
// Module categories

ModuleStructure tensor_module_action(const MultiplierBialgebra& h, const ModuleStructure& m,
                                     const ModuleStructure& n) {
  if (m.side() != n.side()) throw InputError("tensor_module_action: side mismatch");
  if (!m.algebra().same_as(h.algebra()) || !n.algebra().same_as(h.algebra())) {
    throw InputError("tensor_module_action: modules must be over " + h.algebra().name());
  }
  const std::size_t wm = m.carrier().width();
  const std::size_t wa = width(h.algebra());
  const Extension delta = h.delta();
  const Side side = m.side();
  ModuleStructure::Spec s;
  s.name = m.name() + "⊗" + n.name();
  s.algebra = h.algebra();
  s.carrier = BasisDomain::tensor(m.carrier(), n.carrier());
  s.side = side;
  s.expansion = h.options().expansion;
  struct Memo {
    std::mutex mutex;
    std::map<std::pair<BasisId, BasisId>, Element> values;
  };
  auto memo = std::make_shared<Memo>();
  s.act = [m, n, wm, wa, delta, side, memo](const BasisId& x, const BasisId& a) {
    {
      std::lock_guard lock(memo->mutex);
      auto it = memo->values.find({x, a});
      if (it != memo->values.end()) return it->second;
    }
    auto [x1, x2] = split_id(x, wm);
    const auto dm = m.decompose(m.basis(x1));
    const auto dn = n.decompose(n.basis(x2));
    const Multiplier da = delta.on_basis(a);
    Element out(m.field());
    for (const auto& [mi, ai] : dm) {
      for (const auto& [nj, bj] : dn) {
        const Element t = tensor(ai, bj);
        const Element y = side == Side::right ? da.right(t) : da.left(t);
        for (const auto& [pq, c] : y) {
          auto [p, q] = split_id(pq, wa);
          out += c * tensor(m.act(mi, m.algebra().basis(p)), n.act(nj, n.algebra().basis(q)));
        }
      }
    }
    std::lock_guard lock(memo->mutex);
    memo->values.emplace(std::make_pair(x, a), out);
    return out;
  };
  return ModuleStructure(std::move(s));
}

ModuleStructure unit_module(const MultiplierBialgebra& h, Side side) {
  const Counit eps = h.require_counit();
  if (!h.g()) throw InputError("unit_module: no element g with ε(g) = 1 on the window");
  const Element g = *h.g();
  const Field f = h.algebra().field();
  ModuleStructure::Spec s;
  s.name = "k";
  s.algebra = h.algebra();
  s.carrier = BasisDomain::point();
  s.side = side;
  s.act = [eps](const BasisId& t, const BasisId& a) { return Element::single(t, eps.on_basis(a)); };
  s.decompose = [g, f](const BasisId& t) { return std::vector<FactorPair>{{Element::unit(f, t), g}}; };
  return ModuleStructure(std::move(s));
}

namespace {

Verdict compare_actions(const ModuleStructure& x, const ModuleStructure& y, const Window& wm, const Window& wa,
                        const std::string& what) {
  const std::size_t na = wa.ids.size();
  const std::string label = wm.label + " × " + wa.label;
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& m = wm.ids[t / na];
    const BasisId& a = wa.ids[t % na];
    const Element l = x.act_basis(m, a);
    const Element r = y.act_basis(m, a);
    if (l == r) return std::nullopt;
    return Verdict::fail(label, {x.basis(m), x.algebra().basis(a)},
                         what + " is not A-linear: " + x.format(l) + " vs " + y.format(r));
  };
  if (auto hit = first_hit(wm.ids.size() * na, probe)) return hit->second;
  return Verdict::pass(wm.exhaustive && wa.exhaustive, label);
}

}  // namespace

std::vector<NamedVerdict> check_monoidal_instance(const MultiplierBialgebra& h,
                                                  const std::vector<ModuleStructure>& modules,
                                                  const MonoidalOptions& options) {
  const Algebra& A = h.algebra();
  const Window wa = A.window(options.algebra_radius);
  std::vector<NamedVerdict> out;
  for (Side side : {Side::right, Side::left}) {
    std::vector<ModuleStructure> mods;
    for (const auto& m : modules) {
      if (m.side() == side) mods.push_back(m);
    }
    if (mods.empty()) continue;
    const std::string tag = std::string(" [") + std::string(to_string(side)) + "]";
    for (const auto& m : mods) {
      for (const auto& n : mods) {
        for (const auto& p : mods) {
          const ModuleStructure left = tensor_module_action(h, tensor_module_action(h, m, n), p);
          const ModuleStructure right = tensor_module_action(h, m, tensor_module_action(h, n, p));
          out.push_back({"associator (" + m.name() + "⊗" + n.name() + ")⊗" + p.name() + tag,
                         compare_actions(left, right, left.window(options.carrier_radius), wa, "the associator")});
        }
      }
    }
    const ModuleStructure k = unit_module(h, side);
    for (const auto& m : mods) {
      const Window wm = m.window(options.carrier_radius);
      out.push_back({"r_M for " + m.name() + tag,
                     compare_actions(tensor_module_action(h, m, k), m, wm, wa, "r_M: M⊗k → M")});
      out.push_back({"l_M for " + m.name() + tag,
                     compare_actions(tensor_module_action(h, k, m), m, wm, wa, "l_M: k⊗M → M")});
    }
  }
  const Extension id = identity_extension(A);
  const Extension tensor_ext = compose_extensions(h.delta(), tensor_extensions(id, id));
  const ExtensionReport r =
      validate_extension(tensor_ext, extension_windows(A, tensor_ext.target(), options.algebra_radius, h.options().expansion));
  out.push_back({"tensor of A-extensions (id⊗id)∘Δ", r.combined()});
  return out;
}

}  // namespace mulhopf
