#include "mulhopf/comodule.hpp"

#include <map>
#include <mutex>

#include "mulhopf/parallel.hpp"

namespace mulhopf {

struct ComoduleAlgebra::Data {
  Data(MultiplierBialgebra bi, Extension r, IotaInverter inv)
      : h(std::move(bi)), rho(std::move(r)), inverter(std::move(inv)) {}
  MultiplierBialgebra h;
  Extension rho;
  IotaInverter inverter;
  std::mutex mutex;
  std::map<std::pair<BasisId, BasisId>, Element> slices, framed;
};

ComoduleAlgebra::ComoduleAlgebra(MultiplierBialgebra h, Extension rho, int probe_radius) {
  if (!rho.target().same_as(tensor_algebra(rho.source(), h.algebra()))) {
    throw InputError("coaction must take values in M(B⊗A)");
  }
  const Algebra ba = rho.target();
  IotaInverter inv(ba, ba.window(probe_radius), h.options().expansion);
  d_ = std::make_shared<Data>(std::move(h), std::move(rho), std::move(inv));
}

const Algebra& ComoduleAlgebra::algebra() const { return d_->rho.source(); }
const MultiplierBialgebra& ComoduleAlgebra::bialgebra() const { return d_->h; }
const Extension& ComoduleAlgebra::rho() const { return d_->rho; }

Element ComoduleAlgebra::slice(const BasisId& b, const BasisId& a) const {
  const auto key = std::make_pair(b, a);
  {
    std::lock_guard lock(d_->mutex);
    auto it = d_->slices.find(key);
    if (it != d_->slices.end()) return it->second;
  }
  const Algebra& B = algebra();
  const Algebra& A = d_->h.algebra();
  const Multiplier x = d_->rho.on_basis(b) * psi_embed({Multiplier::identity(B), iota(A, A.basis(a))});
  const int r = std::max(B.domain().radius(b), A.domain().radius(a));
  Element p = d_->inverter.invert(x, r, Side::left);
  std::lock_guard lock(d_->mutex);
  return d_->slices.emplace(key, std::move(p)).first->second;
}

Element ComoduleAlgebra::framed(const BasisId& c, const BasisId& b) const {
  const auto key = std::make_pair(c, b);
  {
    std::lock_guard lock(d_->mutex);
    auto it = d_->framed.find(key);
    if (it != d_->framed.end()) return it->second;
  }
  const Algebra& B = algebra();
  const Algebra& A = d_->h.algebra();
  const Multiplier x = psi_embed({iota(B, B.basis(c)), Multiplier::identity(A)}) * d_->rho.on_basis(b);
  const int r = std::max(B.domain().radius(b), B.domain().radius(c));
  Element p = d_->inverter.invert(x, r, Side::right);
  std::lock_guard lock(d_->mutex);
  return d_->framed.emplace(key, std::move(p)).first->second;
}

namespace {

std::string pair_label(const Window& x, const Window& y) { return x.label + " × " + y.label; }

}  // namespace

Verdict check_comodule_coassoc(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a,
                               const Window& probes) {
  const Algebra& B = c.algebra();
  const Algebra& A = c.bialgebra().algebra();
  const Extension rho_a = tensor_extensions(c.rho(), identity_extension(A));
  const Extension b_delta = tensor_extensions(identity_extension(B), c.bialgebra().delta());
  const std::size_t nb = window_b.ids.size(), na = window_a.ids.size();
  if (nb == 0 || na == 0) throw InputError("empty window for coaction check");
  const std::string label = pair_label(window_b, window_a) + " (probes " + probes.label + ")";
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& b = window_b.ids[t / na];
    const BasisId& a = window_a.ids[t % na];
    const Multiplier ia = iota(A, A.basis(a));
    const Multiplier x = c.rho().on_basis(b) * psi_embed({Multiplier::identity(B), ia});
    const Multiplier lhs = lift_to_multiplier(rho_a, x);
    const Multiplier rhs =
        lift_to_multiplier(b_delta, c.rho().on_basis(b)) *
        psi_embed({Multiplier::identity(B), Multiplier::identity(A), ia});
    Verdict v = multiplier_eq(lhs, rhs, probes);
    if (v.ok()) return std::nullopt;
    v.witness.insert(v.witness.begin(), {B.basis(b), A.basis(a)});
    v.detail = "lift(ρ⊗A)(ρ̃(b)(1⊗a)) ≠ lift(B⊗Δ)(ρ̃(b))(1⊗1⊗a): " + v.detail;
    v.window = label;
    return v;
  };
  if (auto hit = first_hit(nb * na, probe)) return hit->second;
  return Verdict::pass(window_b.exhaustive && window_a.exhaustive && probes.exhaustive, label);
}

Verdict check_comodule_coassoc_sliced(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a) {
  const Algebra& B = c.algebra();
  const MultiplierBialgebra& h = c.bialgebra();
  const Algebra& A = h.algebra();
  const Field f = A.field();
  const std::size_t wb = B.domain().width(), wa = A.domain().width();
  const std::size_t nb = window_b.ids.size(), na = window_a.ids.size();
  if (nb == 0 || na == 0) throw InputError("empty window for coaction check");
  const std::string label = window_b.label + " × " + pair_label(window_b, window_a);
  const auto domain = tensor_algebra(tensor_algebra(B, A), A).domain();
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& cc = window_b.ids[t / (nb * na)];
    const BasisId& b = window_b.ids[(t / na) % nb];
    const BasisId& a = window_a.ids[t % na];
    // Σ (c⊗1)ρ̃(u) ⊗ v over u⊗v = ρ̃(b)(1⊗a)
    Accumulator<BasisId> lhs(f), rhs(f);
    for (const auto& [uv, k] : c.slice(b, a)) {
      auto [u, v] = split_id(uv, wb);
      lhs.add(tensor(c.framed(cc, u), Element::unit(f, v)), k);
    }
    // Σ u ⊗ Δ̃(v)(1⊗a) over u⊗v = (c⊗1)ρ̃(b)
    for (const auto& [uv, k] : c.framed(cc, b)) {
      auto [u, v] = split_id(uv, wb);
      rhs.add(tensor(Element::unit(f, u), h.slicer().right(v, a)), k);
    }
    (void)wa;
    const Element l = lhs.finish(), r = rhs.finish();
    if (l == r) return std::nullopt;
    return Verdict::fail(label, {B.basis(cc), B.basis(b), A.basis(a)},
                         "(c⊗1⊗1)(ρ⊗A)(ρ̃(b)(1⊗a)) = " + format_element(domain, l) +
                             " but (B⊗Δ)((c⊗1)ρ̃(b))(1⊗1⊗a) = " + format_element(domain, r));
  };
  if (auto hit = first_hit(nb * nb * na, probe)) return hit->second;
  return Verdict::pass(window_b.exhaustive && window_a.exhaustive, label);
}

Verdict check_comodule_counit(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a,
                              const Window& probes) {
  const Algebra& B = c.algebra();
  const MultiplierBialgebra& h = c.bialgebra();
  const Algebra& A = h.algebra();
  const Counit& eps = h.require_counit();
  const Extension b_eps = tensor_extensions(identity_extension(B), eps.as_extension());
  const std::size_t nb = window_b.ids.size(), na = window_a.ids.size();
  if (nb == 0 || na == 0) throw InputError("empty window for coaction check");
  const std::string label = pair_label(window_b, window_a) + " (probes " + probes.label + ")";
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& b = window_b.ids[t / na];
    const BasisId& a = window_a.ids[t % na];
    const Multiplier x = c.rho().on_basis(b) * psi_embed({Multiplier::identity(B), iota(A, A.basis(a))});
    const Multiplier lhs = lift_to_multiplier(b_eps, x);
    const Multiplier rhs = eps.on_basis(a) * iota(B, B.basis(b));
    Verdict v = multiplier_eq(lhs, rhs, probes);
    if (v.ok()) return std::nullopt;
    v.witness.insert(v.witness.begin(), {B.basis(b), A.basis(a)});
    v.detail = "lift(B⊗ε)(ρ̃(b)(1⊗a)) ≠ ε̃(a)ι(b): " + v.detail;
    v.window = label;
    return v;
  };
  if (auto hit = first_hit(nb * na, probe)) return hit->second;
  return Verdict::pass(window_b.exhaustive && window_a.exhaustive && probes.exhaustive, label);
}

Verdict check_comodule_counit_sliced(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a) {
  const Algebra& B = c.algebra();
  const MultiplierBialgebra& h = c.bialgebra();
  const Algebra& A = h.algebra();
  const Counit& eps = h.require_counit();
  const std::size_t wb = B.domain().width();
  const std::size_t nb = window_b.ids.size(), na = window_a.ids.size();
  if (nb == 0 || na == 0) throw InputError("empty window for coaction check");
  const std::string label = pair_label(window_b, window_a);
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& b = window_b.ids[t / na];
    const BasisId& a = window_a.ids[t % na];
    Accumulator<BasisId> lhs(B.field());
    for (const auto& [uv, k] : c.slice(b, a)) {
      auto [u, v] = split_id(uv, wb);
      lhs.add(u, k * eps.on_basis(v));
    }
    const Element l = lhs.finish();
    const Element r = Element::single(b, eps.on_basis(a));
    if (l == r) return std::nullopt;
    return Verdict::fail(label, {B.basis(b), A.basis(a)},
                         "(B⊗ε)(ρ̃(b)(1⊗a)) = " + B.format(l) + " but ε̃(a)b = " + B.format(r));
  };
  if (auto hit = first_hit(nb * na, probe)) return hit->second;
  return Verdict::pass(window_b.exhaustive && window_a.exhaustive, label);
}

ComoduleAlgebra regular_comodule(const MultiplierBialgebra& h, int probe_radius) {
  return ComoduleAlgebra(h, h.delta(), probe_radius);
}

ComoduleAlgebra unit_comodule(const MultiplierBialgebra& h, int probe_radius) {
  const Algebra& A = h.algebra();
  const Algebra k = Algebra::ground(A.field());
  Extension rho(k, A, [A](const BasisId&) { return Multiplier::identity(A); }, "ρ_k");
  return ComoduleAlgebra(h, rho, probe_radius);
}

Verdict check_module_algebra(const Algebra& b, const ModuleStructure& action, const MultiplierBialgebra& h,
                             const Window& window_b, const Window& window_a) {
  if (action.side() != Side::right) throw InputError("module algebra check needs a right module");
  if (!action.algebra().same_as(h.algebra())) throw InputError("module is over a different algebra");
  const ModuleStructure bb = tensor_module_action(h, action, action);
  const std::size_t wb = b.domain().width();
  const auto& ids = window_b.ids;
  const std::size_t nb = ids.size(), na = window_a.ids.size();
  if (nb == 0 || na == 0) throw InputError("empty window for module algebra check");
  const std::string label = window_b.label + " × " + pair_label(window_b, window_a);
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& x = ids[t / (nb * na)];
    const BasisId& y = ids[(t / na) % nb];
    const BasisId& a = window_a.ids[t % na];
    const Element ea = h.algebra().basis(a);
    const Element lhs = action.act(b.mul_basis(x, y), ea);
    Accumulator<BasisId> rhs(b.field());
    for (const auto& [uv, k] : bb.act_basis(x.concat(y), a)) {
      auto [u, v] = split_id(uv, wb);
      rhs.add(b.mul_basis(u, v), k);
    }
    const Element r = rhs.finish();
    if (lhs == r) return std::nullopt;
    return Verdict::fail(label, {b.basis(x), b.basis(y), ea},
                         "μ(b⊗b')·a = " + b.format(lhs) + " but μ((b⊗b')·a) = " + b.format(r));
  };
  if (auto hit = first_hit(nb * nb * na, probe)) return hit->second;
  return Verdict::pass(window_b.exhaustive && window_a.exhaustive, label);
}

}  // namespace mulhopf
