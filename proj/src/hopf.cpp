#include "mulhopf/hopf.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "mulhopf/parallel.hpp"

namespace mulhopf {

struct ConvolutionElement::Data {
  Data(Algebra a, Rule r, std::string n) : algebra(std::move(a)), rule(std::move(r)), name(std::move(n)) {}
  Algebra algebra;
  Rule rule;
  std::string name;
  std::mutex mutex;
  std::map<BasisId, Multiplier> cache;
};

ConvolutionElement::ConvolutionElement(Algebra a, Rule rule, std::string name) {
  if (!rule) throw InputError("convolution element has no rule");
  d_ = std::make_shared<Data>(std::move(a), std::move(rule), std::move(name));
}

ConvolutionElement ConvolutionElement::iota_map(const Algebra& a) {
  return ConvolutionElement(a, [a](const BasisId& id) { return iota(a, a.basis(id)); }, "ι");
}

ConvolutionElement ConvolutionElement::zero(const Algebra& a) {
  return ConvolutionElement(a, [a](const BasisId&) { return Multiplier::zero(a); }, "0");
}

const Algebra& ConvolutionElement::algebra() const { return d_->algebra; }
const std::string& ConvolutionElement::name() const { return d_->name; }

Multiplier ConvolutionElement::on_basis(const BasisId& a) const {
  {
    std::lock_guard lock(d_->mutex);
    auto it = d_->cache.find(a);
    if (it != d_->cache.end()) return it->second;
  }
  Multiplier m = d_->rule(a);
  std::lock_guard lock(d_->mutex);
  return d_->cache.emplace(a, std::move(m)).first->second;
}

Multiplier ConvolutionElement::operator()(const Element& a) const {
  algebra().require_member(a);
  std::vector<std::pair<Scalar, Multiplier>> terms;
  for (const auto& [id, c] : a) terms.emplace_back(c, on_basis(id));
  return linear_combination(algebra(), std::move(terms));
}

// ---------------------------------------------------------------------------
// T1, T2

namespace {

std::size_t width(const Algebra& a) { return a.domain().width(); }

}  // namespace

Element t1(const MultiplierBialgebra& h, const Element& u) {
  h.tensor2().require_member(u);
  Accumulator<BasisId> acc(h.algebra().field());
  for (const auto& [ab, c] : u) {
    auto [a, b] = split_id(ab, width(h.algebra()));
    acc.add(h.slicer().right(a, b), c);
  }
  return acc.finish();
}

Element t2(const MultiplierBialgebra& h, const Element& u) {
  h.tensor2().require_member(u);
  Accumulator<BasisId> acc(h.algebra().field());
  for (const auto& [ab, c] : u) {
    auto [a, b] = split_id(ab, width(h.algebra()));
    acc.add(h.slicer().left(b, a), c);
  }
  return acc.finish();
}

Verdict check_bijective(const BasisDomain& domain, const Field& field, const LinearRule& t, const Window& window,
                        const Window& expanded) {
  if (window.ids.empty()) throw InputError("empty window for bijectivity check");
  const std::string label = window.label + " (preimages in " + expanded.label + ")";
  SpanSolver<BasisId> sur(field);
  for (const auto& id : expanded.ids) sur.add(t(id));
  for (const auto& id : window.ids) {
    const Element target = Element::unit(field, id);
    if (!sur.express(target)) {
      return Verdict::fail(label, {target}, "not surjective: " + domain.format(id) + " has no preimage");
    }
  }
  SpanSolver<BasisId> inj(field);
  for (const auto& id : window.ids) inj.add(t(id));
  if (!inj.dependencies().empty()) {
    Accumulator<BasisId> w(field);
    for (const auto& [j, c] : inj.dependencies().front()) w.add(window.ids[j], c);
    Element x = w.finish();
    return Verdict::fail(label, {x}, "not injective: T(" + format_element(domain, x) + ") = 0");
  }
  return Verdict::pass(window.exhaustive && expanded.exhaustive, label);
}

// ---------------------------------------------------------------------------
// Antipode

AntipodeCandidate check_antipode(const MultiplierBialgebra& h, const ConvolutionElement& s, const Window& window) {
  const Counit& eps = h.require_counit();
  const Algebra& A = h.algebra();
  const Slicer& sl = h.slicer();
  const std::size_t w = width(A);
  const auto& ids = window.ids;
  if (ids.empty()) throw InputError("empty window for antipode check");
  const std::size_t n = ids.size();
  AntipodeCandidate out{s, {}, {}};
  std::function<std::optional<Verdict>(std::size_t)> left = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& a = ids[t / n];
    const BasisId& b = ids[t % n];
    Element lhs(A.field());
    for (const auto& [uv, c] : sl.right(a, b)) {
      auto [u, v] = split_id(uv, w);
      lhs += c * s.on_basis(u).left(A.basis(v));
    }
    const Element rhs = Element::single(b, eps.on_basis(a));
    if (lhs == rhs) return std::nullopt;
    return Verdict::fail(window.label, {A.basis(a), A.basis(b)},
                         "S(a_(1,b))▷a_(2,b) = " + A.format(lhs) + " but ε(a)b = " + A.format(rhs));
  };
  std::function<std::optional<Verdict>(std::size_t)> right = [&](std::size_t t) -> std::optional<Verdict> {
    const BasisId& a = ids[t / n];
    const BasisId& b = ids[t % n];
    Element lhs(A.field());
    for (const auto& [uv, c] : sl.left(b, a)) {
      auto [u, v] = split_id(uv, w);
      lhs += c * s.on_basis(v).right(A.basis(u));
    }
    const Element rhs = Element::single(a, eps.on_basis(b));
    if (lhs == rhs) return std::nullopt;
    return Verdict::fail(window.label, {A.basis(a), A.basis(b)},
                         "b_(a,1)◁S(b_(a,2)) = " + A.format(lhs) + " but aε(b) = " + A.format(rhs));
  };
  auto hl = first_hit(n * n, left);
  out.left = hl ? hl->second : Verdict::pass(window.exhaustive, window.label);
  auto hr = first_hit(n * n, right);
  out.right = hr ? hr->second : Verdict::pass(window.exhaustive, window.label);
  return out;
}

AntipodeSynthesis synthesize_antipode(const MultiplierBialgebra& h, const Window& window) {
  const Counit& eps = h.require_counit();
  const Algebra& A = h.algebra();
  const Field f = A.field();
  const Slicer& sl = h.slicer();
  const std::size_t w = width(A);
  AntipodeSynthesis out;

  // Candidate multipliers C_j spanning the search space for each S(e_i).
  std::vector<Multiplier> cands;
  std::optional<MultiplierSpace> space;
  Window outer = window;
  if (A.is_finite()) {
    space.emplace(A);
    cands = space->basis();
  } else {
    for (const auto& id : window.ids) cands.push_back(iota(A, A.basis(id)));
    int r = 1;
    for (const auto& id : window.ids) r = std::max(r, A.domain().radius(id));
    outer = A.window(h.options().expansion * r);
  }
  std::map<BasisId, std::size_t> index;
  for (std::size_t i = 0; i < window.ids.size(); ++i) index.emplace(window.ids[i], i);
  const std::size_t nc = cands.size();
  auto var = [nc](std::size_t i, std::size_t j) { return i * nc + j; };

  std::vector<std::pair<Vector, Scalar>> equations;
  auto add_rows = [&](std::map<BasisId, Accumulator<std::size_t>>& rows, const Element& rhs) {
    for (const auto& [t, c] : rhs) rows.try_emplace(t, Accumulator<std::size_t>(f));
    for (auto& [t, acc] : rows) equations.emplace_back(acc.finish(), rhs.coeff(t));
  };
  // S(a_(1,b))▷a_(2,b) = ε(a)b with a in the outer window, b in the window.
  for (const auto& a : outer.ids) {
    for (const auto& b : window.ids) {
      const Element slice = sl.right(a, b);
      bool inside = true;
      for (const auto& [uv, c] : slice) inside = inside && index.count(split_id(uv, w).first);
      if (!inside) continue;
      std::map<BasisId, Accumulator<std::size_t>> rows;
      for (const auto& [uv, c] : slice) {
        auto [u, v] = split_id(uv, w);
        const std::size_t i = index.at(u);
        for (std::size_t j = 0; j < nc; ++j) {
          for (const auto& [t, d] : cands[j].left(A.basis(v))) {
            rows.try_emplace(t, Accumulator<std::size_t>(f)).first->second.add(var(i, j), c * d);
          }
        }
      }
      add_rows(rows, Element::single(b, eps.on_basis(a)));
    }
  }
  // b_(a,1)◁S(b_(a,2)) = aε(b) with a in the window, b in the outer window.
  for (const auto& a : window.ids) {
    for (const auto& b : outer.ids) {
      const Element slice = sl.left(b, a);
      bool inside = true;
      for (const auto& [uv, c] : slice) inside = inside && index.count(split_id(uv, w).second);
      if (!inside) continue;
      std::map<BasisId, Accumulator<std::size_t>> rows;
      for (const auto& [uv, c] : slice) {
        auto [u, v] = split_id(uv, w);
        const std::size_t i = index.at(v);
        for (std::size_t j = 0; j < nc; ++j) {
          for (const auto& [t, d] : cands[j].right(A.basis(u))) {
            rows.try_emplace(t, Accumulator<std::size_t>(f)).first->second.add(var(i, j), c * d);
          }
        }
      }
      add_rows(rows, Element::single(a, eps.on_basis(b)));
    }
  }
  const std::size_t unknowns = window.ids.size() * nc;
  std::vector<Accumulator<std::size_t>> cols(unknowns, Accumulator<std::size_t>(f));
  Accumulator<std::size_t> rhs(f);
  for (std::size_t r = 0; r < equations.size(); ++r) {
    for (const auto& [j, c] : equations[r].first) cols[j].add(r, c);
    rhs.add(r, equations[r].second);
  }
  std::vector<Vector> columns;
  for (auto& c : cols) columns.push_back(c.finish());
  const SparseMatrix m(f, equations.size(), std::move(columns));
  auto x = solve_linear(m, rhs.finish());
  if (!x) {
    out.diagnostic = "the antipode equations have no solution in the searched span on " + window.label;
    return out;
  }
  auto kernel = kernel_basis(m);
  if (!kernel.empty()) {
    const std::size_t i = kernel.front().front().first / nc;
    throw WindowInsufficient("S(" + A.domain().format(window.ids[i]) +
                             ") is not determined by the antipode equations on " + window.label);
  }
  auto table = std::make_shared<std::map<BasisId, Multiplier>>();
  std::optional<IotaInverter> inverter;
  if (A.unit() || A.has_local_units() || A.is_finite()) inverter.emplace(A, window, h.options().expansion);
  for (std::size_t i = 0; i < window.ids.size(); ++i) {
    std::vector<std::pair<Scalar, Multiplier>> terms;
    Accumulator<BasisId> preimage(f);
    for (std::size_t j = 0; j < nc; ++j) {
      const Scalar c = x->coeff(var(i, j));
      if (c.is_zero()) continue;
      terms.emplace_back(c, cands[j]);
      if (!A.is_finite()) preimage.add(window.ids[j], c);
    }
    Multiplier si = linear_combination(A, std::move(terms));
    std::optional<Element> form;
    if (!A.is_finite()) {
      form = preimage.finish();
    } else if (inverter) {
      try {
        form = inverter->invert(si, A.domain().radius(window.ids[i]));
      } catch (const SliceUndefined&) {
      }
    }
    out.iota_form.emplace(window.ids[i], form);
    table->emplace(window.ids[i], std::move(si));
  }
  auto domain = A.domain();
  out.s = ConvolutionElement(
      A,
      [table, domain](const BasisId& id) {
        auto it = table->find(id);
        if (it == table->end()) throw WindowInsufficient("S(" + domain.format(id) + ") lies outside the synthesized window");
        return it->second;
      },
      "S");
  return out;
}

// ---------------------------------------------------------------------------
// Convolution

namespace {

ConvolutionElement sliced_product(const MultiplierBialgebra& h, const ConvolutionElement& f,
                                  const ConvolutionElement& g, const Element& b, Side side, std::string name) {
  const Algebra& A = h.algebra();
  A.require_member(b);
  const std::size_t w = width(A);
  return ConvolutionElement(
      A,
      [h, f, g, b, side, A, w](const BasisId& a) {
        std::vector<std::pair<Scalar, Multiplier>> terms;
        for (const auto& [y, d] : b) {
          const Element slice = side == Side::right ? h.slicer().right(a, y) : h.slicer().left(a, y);
          for (const auto& [uv, c] : slice) {
            auto [u, v] = split_id(uv, w);
            terms.emplace_back(c * d, f.on_basis(u) * g.on_basis(v));
          }
        }
        return linear_combination(A, std::move(terms));
      },
      std::move(name));
}

}  // namespace

ConvolutionElement conv_right(const MultiplierBialgebra& h, const ConvolutionElement& f, const ConvolutionElement& g,
                              const Element& b) {
  return sliced_product(h, f, g, b, Side::right, f.name() + "∗^b" + g.name());
}

ConvolutionElement conv_left(const MultiplierBialgebra& h, const ConvolutionElement& f, const ConvolutionElement& g,
                             const Element& b) {
  return sliced_product(h, f, g, b, Side::left, f.name() + "∗_b" + g.name());
}

ConvolutionElement conv_alpha(const MultiplierBialgebra& h, const Element& b) {
  const Algebra& A = h.algebra();
  const Counit eps = h.require_counit();
  const Multiplier ib = iota(A, b);
  return ConvolutionElement(A, [eps, ib](const BasisId& a) { return eps.on_basis(a) * ib; }, "α_b");
}

ConvolutionElement conv_dot(const ConvolutionElement& f, const Element& b, const Element& b2) {
  const Algebra& A = f.algebra();
  return ConvolutionElement(
      A, [f, b, b2, A](const BasisId& a) { return f(A.mul(A.mul(b2, A.basis(a)), b)); }, "b·" + f.name() + "·b'");
}

ConvolutionElement conv_harpoon(const ConvolutionElement& f, const Element& b, const Element& b2) {
  const Algebra& A = f.algebra();
  const Multiplier ib = iota(A, b), ib2 = iota(A, b2);
  return ConvolutionElement(A, [f, ib, ib2](const BasisId& a) { return ib * f.on_basis(a) * ib2; },
                            "b⇀" + f.name() + "↼b'");
}

ConvolutionElement conv_beta(const ConvolutionElement& f, const Element& b, Side side) {
  const Algebra& A = f.algebra();
  const Element one = A.unit() ? *A.unit() : Element(A.field());
  // b·f = (a ↦ f(ab)) and f·b = (a ↦ f(ba)).
  return ConvolutionElement(
      A,
      [f, b, side, A](const BasisId& a) {
        return side == Side::left ? f(A.mul(A.basis(a), b)) : f(A.mul(b, A.basis(a)));
      },
      side == Side::left ? "b·" + f.name() : f.name() + "·b");
}

Verdict conv_eq(const ConvolutionElement& f, const ConvolutionElement& g, const Window& window, const Window& probes) {
  const Algebra& A = f.algebra();
  std::vector<Verdict> parts;
  for (const auto& a : window.ids) {
    Verdict v = multiplier_eq(f.on_basis(a), g.on_basis(a), probes);
    if (!v.ok()) {
      v.witness.insert(v.witness.begin(), A.basis(a));
      v.detail = f.name() + "(a) ≠ " + g.name() + "(a): " + v.detail;
      return v;
    }
    parts.push_back(v);
  }
  Verdict out = combine(parts);
  out.window = window.label + " × " + probes.label;
  return out;
}

Verdict check_convolution_inverse(const MultiplierBialgebra& h, const ConvolutionElement& s, const Window& window,
                                  const Window& probes) {
  const Algebra& A = h.algebra();
  const ConvolutionElement io = ConvolutionElement::iota_map(A);
  const auto& ids = window.ids;
  const std::size_t n = ids.size();
  const std::string label = window.label + " × " + probes.label;
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const Element a = A.basis(ids[t / n]);
    const Element b = A.basis(ids[t % n]);
    Verdict v = multiplier_eq(conv_right(h, s, io, b).on_basis(ids[t / n]), conv_alpha(h, b).on_basis(ids[t / n]), probes);
    if (!v.ok()) {
      v.witness.insert(v.witness.begin(), {a, b});
      v.detail = "(S ∗^b ι)(a) ≠ α_b(a): " + v.detail;
      return v;
    }
    v = multiplier_eq(conv_left(h, io, s, a).on_basis(ids[t % n]), conv_alpha(h, a).on_basis(ids[t % n]), probes);
    if (!v.ok()) {
      v.witness.insert(v.witness.begin(), {a, b});
      v.detail = "(ι ∗_a S)(b) ≠ α_a(b): " + v.detail;
      return v;
    }
    return std::nullopt;
  };
  if (auto hit = first_hit(n * n, probe)) return hit->second;
  return Verdict::pass(window.exhaustive && probes.exhaustive, label);
}

Verdict check_mixed_associativity(const MultiplierBialgebra& h, const ConvolutionElement& f,
                                  const ConvolutionElement& g, const ConvolutionElement& k, const Element& a,
                                  const Element& b, const Window& window, const Window& probes) {
  const ConvolutionElement lhs = conv_left(h, f, conv_right(h, g, k, b), a);
  const ConvolutionElement rhs = conv_right(h, conv_left(h, f, g, a), k, b);
  return conv_eq(lhs, rhs, window, probes);
}

Verdict check_convolution_unitality(const MultiplierBialgebra& h, const ConvolutionElement& f, const Element& b,
                                    const Element& c, const Window& window, const Window& probes) {
  const Algebra& A = h.algebra();
  const ConvolutionElement alpha = conv_alpha(h, b);
  const Multiplier ib = iota(A, b);
  const ConvolutionElement l1 = conv_right(h, alpha, f, c);
  const ConvolutionElement r1(A, [f, ib, c, A](const BasisId& a) { return ib * f(A.mul(A.basis(a), c)); }, "ι(b)f(ac)");
  Verdict v = conv_eq(l1, r1, window, probes);
  if (!v.ok()) return v;
  const ConvolutionElement l2 = conv_left(h, f, alpha, c);
  const ConvolutionElement r2(A, [f, ib, c, A](const BasisId& a) { return f(A.mul(c, A.basis(a))) * ib; }, "f(ca)ι(b)");
  return combine({v, conv_eq(l2, r2, window, probes)});
}

Verdict check_convolution_nondegenerate(const MultiplierBialgebra& h, const Window& window, const Window& probes) {
  const Algebra& A = h.algebra();
  const Field f = A.field();
  const auto& ids = window.ids;
  const std::string label = window.label + " × " + probes.label;
  using Key = std::tuple<BasisId, BasisId, BasisId, int, BasisId>;
  for (int kind = 0; kind < 2; ++kind) {
    // kind 0: (b·E_ij)(a) = (ab)_i ι(e_j); kind 1: (b⇀E_ij)(a) = [a = i] ι(b e_j)
    SpanSolver<Key> span(f);
    std::vector<std::pair<BasisId, BasisId>> maps;
    for (const auto& i : ids) {
      for (const auto& j : ids) {
        maps.emplace_back(i, j);
        Accumulator<Key> col(f);
        for (const auto& b : ids) {
          for (const auto& a : ids) {
            Element m(f);
            if (kind == 0) {
              const Scalar c = A.mul_basis(a, b).coeff(i);
              if (c.is_zero()) continue;
              m = Element::single(j, c);
            } else {
              if (!(a == i)) continue;
              m = A.mul_basis(b, j);
            }
            if (m.is_zero()) continue;
            for (const auto& q : probes.ids) {
              for (const auto& [o, c] : A.mul(m, A.basis(q))) col.add(Key{b, a, q, 0, o}, c);
              for (const auto& [o, c] : A.mul(A.basis(q), m)) col.add(Key{b, a, q, 1, o}, c);
            }
          }
        }
        span.add(col.finish());
      }
    }
    if (!span.dependencies().empty()) {
      const auto& dep = span.dependencies().front();
      const auto [i, j] = maps[dep.front().first];
      return Verdict::fail(label, {A.basis(i), A.basis(j)},
                           std::string(kind == 0 ? "b·f" : "b⇀f") + " vanishes for every window b but f ≠ 0");
    }
  }
  return Verdict::pass(window.exhaustive && probes.exhaustive, label);
}

}  // namespace mulhopf
