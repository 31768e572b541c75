#include "mulhopf/extension.hpp"

#include <map>
#include <mutex>

#include "mulhopf/parallel.hpp"

namespace mulhopf {

ExtensionWindows extension_windows(const Algebra& source, const Algebra& target, int radius, int expansion) {
  ExtensionWindows w;
  w.source = source.window(expansion * std::max(radius, 1));
  w.source_pairs = source.window(radius);
  w.target = target.window(radius);
  w.target_pairs = target.window(std::max(1, radius / 2));
  return w;
}

namespace {

struct MapCache {
  Extension::Map map;
  std::mutex mutex;
  std::map<BasisId, Multiplier> values;

  Multiplier get(const BasisId& b) {
    {
      std::lock_guard lock(mutex);
      auto it = values.find(b);
      if (it != values.end()) return it->second;
    }
    Multiplier m = map(b);
    std::lock_guard lock(mutex);
    return values.emplace(b, std::move(m)).first->second;
  }
};

}  // namespace

struct Extension::Data {
  Algebra source;
  Algebra target;
  std::string name;
  int expansion;
  std::shared_ptr<MapCache> cache;
  std::optional<ModuleStructure> left, right;
};

Extension::Extension(Algebra source, Algebra target, Map map, std::string name, int expansion)
    : d_(std::make_shared<Data>(Data{std::move(source), std::move(target), std::move(name), expansion,
                                     std::make_shared<MapCache>(), std::nullopt, std::nullopt})) {
  if (!map) throw InputError("extension '" + d_->name + "' has no structure map");
  d_->cache->map = std::move(map);
  auto cache = d_->cache;
  const Field f = d_->target.field();
  ModuleStructure::Spec left{.name = d_->target.name() + " over " + d_->source.name(),
                             .algebra = d_->source,
                             .carrier = d_->target.domain(),
                             .side = Side::left,
                             .act = [cache, f](const BasisId& a, const BasisId& b) {
                               return cache->get(b).left(Element::unit(f, a));
                             },
                             .decompose = {},
                             .expansion = expansion};
  ModuleStructure::Spec right = left;
  right.side = Side::right;
  right.act = [cache, f](const BasisId& a, const BasisId& b) { return cache->get(b).right(Element::unit(f, a)); };
  d_->left.emplace(std::move(left));
  d_->right.emplace(std::move(right));
}

const Algebra& Extension::source() const { return d_->source; }
const Algebra& Extension::target() const { return d_->target; }
const std::string& Extension::name() const { return d_->name; }
int Extension::expansion() const { return d_->expansion; }

Multiplier Extension::on_basis(const BasisId& b) const {
  if (!source().domain().contains(b)) throw InputError("foreign basis index for extension " + name());
  return d_->cache->get(b);
}

Multiplier Extension::operator()(const Element& b) const {
  source().require_member(b);
  std::vector<std::pair<Scalar, Multiplier>> terms;
  for (const auto& [id, c] : b) terms.emplace_back(c, d_->cache->get(id));
  return linear_combination(target(), std::move(terms));
}

Element Extension::left_action(const Element& b, const Element& a) const {
  target().require_member(a);
  Element out(target().field());
  for (const auto& [id, c] : b) out += c * on_basis(id).left(a);
  return out;
}

Element Extension::right_action(const Element& a, const Element& b) const {
  target().require_member(a);
  Element out(target().field());
  for (const auto& [id, c] : b) out += c * on_basis(id).right(a);
  return out;
}

const ModuleStructure& Extension::left_module() const { return *d_->left; }
const ModuleStructure& Extension::right_module() const { return *d_->right; }

bool ExtensionReport::ok() const { return combined().ok(); }

Verdict ExtensionReport::combined() const {
  return combine({multipliers, multiplicative, left_idempotent, right_idempotent, left_nondegenerate,
                  right_nondegenerate});
}

ExtensionReport validate_extension(const Extension& f, const ExtensionWindows& w) {
  ExtensionReport r;
  const Algebra& b = f.source();
  {
    std::vector<Verdict> parts;
    for (const auto& id : w.source_pairs.ids) {
      Verdict v = validate_multiplier(f.on_basis(id), w.target_pairs);
      if (!v.ok()) {
        v.witness.insert(v.witness.begin(), b.basis(id));
        v.detail = "f̃(" + b.domain().format(id) + "): " + v.detail;
      }
      parts.push_back(std::move(v));
      if (!parts.back().ok()) break;
    }
    r.multipliers = combine(parts);
  }
  {
    const auto& ids = w.source_pairs.ids;
    const std::size_t n = ids.size();
    std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
      const Element x = b.basis(ids[t / n]), y = b.basis(ids[t % n]);
      Verdict v = multiplier_eq(f(b.mul(x, y)), f.on_basis(ids[t / n]) * f.on_basis(ids[t % n]), w.target);
      if (v.ok()) return std::nullopt;
      v.witness.insert(v.witness.begin(), {x, y});
      v.detail = "f̃(bb') ≠ f̃(b)f̃(b'): " + v.detail;
      return v;
    };
    if (auto hit = first_hit(n * n, probe)) {
      r.multiplicative = hit->second;
    } else {
      r.multiplicative = Verdict::pass(w.source_pairs.exhaustive && w.target.exhaustive,
                                       w.source_pairs.label + " × " + w.target.label);
    }
  }
  r.left_idempotent = check_module_idempotent(f.left_module(), w.target, w.source);
  r.right_idempotent = check_module_idempotent(f.right_module(), w.target, w.source);
  r.left_nondegenerate = check_module_nondegenerate(f.left_module(), w.target, w.source);
  r.right_nondegenerate = check_module_nondegenerate(f.right_module(), w.target, w.source);
  return r;
}

Extension extension_from_map(const Algebra& source, const Algebra& target, Extension::Map map,
                             const ExtensionWindows& w, std::string name) {
  Extension f(source, target, std::move(map), std::move(name));
  ExtensionReport r = validate_extension(f, w);
  if (!r.ok()) throw ExtensionRejected(r.combined());
  return f;
}

BimoduleRules bimodule_of(const Extension& f) {
  const Field fld = f.target().field();
  return BimoduleRules{
      [f, fld](const BasisId& b, const BasisId& a) { return f.on_basis(b).left(Element::unit(fld, a)); },
      [f, fld](const BasisId& a, const BasisId& b) { return f.on_basis(b).right(Element::unit(fld, a)); }};
}

Verdict check_balanced(const Algebra& source, const Algebra& target, const BimoduleRules& rules,
                       const ExtensionWindows& w) {
  const auto& as = w.target_pairs.ids;
  const auto& bs = w.source_pairs.ids;
  const std::size_t na = as.size(), nb = bs.size();
  const std::string label = w.target_pairs.label + " × " + w.source_pairs.label;
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& a = as[t / (nb * na)];
    const BasisId& b = bs[(t / na) % nb];
    const BasisId& a2 = as[t % na];
    const Element lhs = target.mul(rules.right(a, b), target.basis(a2));
    const Element rhs = target.mul(target.basis(a), rules.left(b, a2));
    if (lhs == rhs) return std::nullopt;
    return Verdict::fail(label, {target.basis(a), source.basis(b), target.basis(a2)},
                         "(a·b)a' = " + target.format(lhs) + " but a(b·a') = " + target.format(rhs));
  };
  if (auto hit = first_hit(na * nb * na, probe)) return hit->second;
  return Verdict::pass(w.target_pairs.exhaustive && w.source_pairs.exhaustive, label);
}

Extension extension_from_bimodule(const Algebra& source, const Algebra& target, BimoduleRules rules,
                                  const ExtensionWindows& w, std::string name) {
  Verdict balanced = check_balanced(source, target, rules, w);
  if (!balanced.ok()) throw ExtensionRejected(balanced);
  auto shared = std::make_shared<const BimoduleRules>(std::move(rules));
  Extension::Map map = [shared, target](const BasisId& b) {
    return Multiplier::from_basis(
        target, [shared, b](const BasisId& a) { return shared->left(b, a); },
        [shared, b](const BasisId& a) { return shared->right(a, b); });
  };
  return extension_from_map(source, target, std::move(map), w, std::move(name));
}

Multiplier lift_to_multiplier(const Extension& f, const Multiplier& x) {
  if (!x.algebra().same_as(f.source())) throw InputError("lift: multiplier is not on the source algebra");
  const Field fld = f.target().field();
  auto left = [f, x, fld](const Element& a) {
    Element out(fld);
    for (const auto& [ai, bi] : f.left_module().decompose(a)) out += f.left_action(x.left(bi), ai);
    return out;
  };
  auto right = [f, x, fld](const Element& a) {
    Element out(fld);
    for (const auto& [aj, bj] : f.right_module().decompose(a)) out += f.right_action(aj, x.right(bj));
    return out;
  };
  return Multiplier(f.target(), left, right, x.name().empty() ? "" : "f̄(" + x.name() + ")");
}

Extension identity_extension(const Algebra& a) {
  return Extension(a, a, [a](const BasisId& id) { return iota(a, a.basis(id)); }, "id");
}

Extension compose_extensions(const Extension& f, const Extension& g) {
  if (!f.target().same_as(g.source())) throw InputError("compose_extensions: middle algebras differ");
  return Extension(f.source(), g.target(), [f, g](const BasisId& b) { return lift_to_multiplier(g, f.on_basis(b)); },
                   g.name() + "∘" + f.name(), std::max(f.expansion(), g.expansion()));
}

namespace {

Multiplier psi_on(const Algebra& product, const std::vector<Multiplier>& parts) {
  std::vector<std::size_t> widths;
  for (const auto& p : parts) widths.push_back(p.algebra().domain().width());
  const Field f = product.field();
  auto apply = [parts, widths, f](const BasisId& id, bool left) {
    Element out = Element::unit(f, BasisId{});
    std::size_t offset = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Element e = Element::unit(f, id.slice(offset, widths[i]));
      out = tensor(out, left ? parts[i].left(e) : parts[i].right(e));
      offset += widths[i];
      if (out.is_zero()) break;
    }
    return out;
  };
  return Multiplier::from_basis(
      product, [apply](const BasisId& id) { return apply(id, true); },
      [apply](const BasisId& id) { return apply(id, false); });
}

}  // namespace

Multiplier psi_embed(const std::vector<Multiplier>& parts) {
  if (parts.empty()) throw InputError("psi_embed: no parts");
  Algebra product = parts.front().algebra();
  for (std::size_t i = 1; i < parts.size(); ++i) product = tensor_algebra(product, parts[i].algebra());
  return psi_on(product, parts);
}

Extension tensor_extensions(const Extension& f, const Extension& g) {
  const Algebra source = tensor_algebra(f.source(), g.source());
  const Algebra target = tensor_algebra(f.target(), g.target());
  const std::size_t wb = f.source().domain().width();
  return Extension(
      source, target,
      [f, g, target, wb](const BasisId& id) {
        auto [b1, b2] = split_id(id, wb);
        return psi_on(target, {f.on_basis(b1), g.on_basis(b2)});
      },
      f.name() + "⊗" + g.name(), std::max(f.expansion(), g.expansion()));
}

ModuleStructure restrict_module(const Extension& f, const ModuleStructure& m, const Window& window_m,
                                const Window& window_b) {
  if (!m.algebra().same_as(f.target())) throw InputError("restrict_module: module is over a different algebra");
  const Field fld = m.field();
  ModuleStructure::Spec s{.name = m.name() + "|" + f.source().name(),
                          .algebra = f.source(),
                          .carrier = m.carrier(),
                          .side = m.side(),
                          .act = [f, m, fld](const BasisId& x, const BasisId& b) {
                            return act_on_module(m, Element::unit(fld, x), f.on_basis(b));
                          },
                          .decompose = {},
                          .expansion = f.expansion()};
  ModuleStructure out(std::move(s));
  Verdict v = combine({check_module_idempotent(out, window_m, window_b), check_module_nondegenerate(out, window_m, window_b)});
  if (!v.ok()) throw ExtensionRejected(v);
  return out;
}

}  // namespace mulhopf

namespace mulhopf {

Verdict check_extension_roundtrip(const Extension& f, const ExtensionWindows& w) {
  const Algebra& b = f.source();
  const Algebra& a = f.target();
  const Extension from_bimodule = extension_from_bimodule(b, a, bimodule_of(f), w, f.name() + "'");
  const Extension back = extension_from_map(
      b, a, [from_bimodule](const BasisId& id) { return from_bimodule.on_basis(id); }, w, f.name() + "''");
  std::vector<Verdict> parts;
  auto tag = [&](Verdict v, const std::string& what) {
    if (!v.ok()) v.detail = what + ": " + v.detail;
    parts.push_back(std::move(v));
    return parts.back().ok();
  };
  for (const auto& id : w.source.ids) {
    const Multiplier fb = f.on_basis(id);
    if (!tag(multiplier_eq(from_bimodule.on_basis(id), fb, w.target), "bimodule → map differs from f̃")) break;
    if (!tag(multiplier_eq(back.on_basis(id), fb, w.target), "map → bimodule → map differs from f̃")) break;
  }
  for (const auto& id : w.source_pairs.ids) {
    if (!parts.back().ok()) break;
    if (!tag(multiplier_eq(lift_to_multiplier(f, iota(b, b.basis(id))), f.on_basis(id), w.target), "f̄∘ι_B ≠ f̃")) break;
  }
  if (parts.back().ok()) {
    tag(multiplier_eq(lift_to_multiplier(f, Multiplier::identity(b)), Multiplier::identity(a), w.target), "f̄(1) ≠ 1");
  }
  for (const auto& x : w.source_pairs.ids) {
    for (const auto& y : w.source_pairs.ids) {
      if (!parts.back().ok()) break;
      const Multiplier lhs = lift_to_multiplier(f, iota(b, b.basis(x)) * iota(b, b.basis(y)));
      tag(multiplier_eq(lhs, f.on_basis(x) * f.on_basis(y), w.target), "f̄ is not multiplicative");
    }
  }
  return combine(parts);
}

}  // namespace mulhopf
