#include "mulhopf/gallery.hpp"

#include <charconv>
#include <cstdlib>

namespace mulhopf {

namespace {

std::optional<std::int32_t> parse_int(std::string_view s) {
  std::int32_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// "<prefix>[i,j,...]" with `arity` integer entries.
std::optional<BasisId> parse_bracketed(std::string_view text, std::string_view prefix, std::size_t arity) {
  if (!text.starts_with(prefix)) return std::nullopt;
  text.remove_prefix(prefix.size());
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') return std::nullopt;
  text = text.substr(1, text.size() - 2);
  BasisId id;
  for (std::size_t i = 0; i < arity; ++i) {
    const auto comma = i + 1 < arity ? text.find(',') : std::string_view::npos;
    auto v = parse_int(text.substr(0, comma));
    if (!v) return std::nullopt;
    id = id.concat(BasisId{*v});
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  return id;
}

Algebra pointwise(std::string name, BasisDomain domain, const Field& f, std::optional<Element> unit,
                  std::function<Element(int)> local_unit) {
  Algebra::Spec s;
  s.name = std::move(name);
  s.field = f;
  s.domain = std::move(domain);
  s.mul = [f](const BasisId& a, const BasisId& b) { return a == b ? Element::unit(f, a) : Element(f); };
  s.unit = std::move(unit);
  s.local_unit = std::move(local_unit);
  return Algebra(std::move(s));
}

Algebra integer_functions(std::string name, const Field& f, bool naturals) {
  BasisDomain::OracleSpec o;
  o.name = naturals ? "N" : "Z";
  o.width = 1;
  o.box = [naturals](int r) {
    std::vector<BasisId> ids;
    for (int n = naturals ? 0 : -r; n <= r; ++n) ids.push_back(BasisId{n});
    return ids;
  };
  o.radius = [](const BasisId& id) { return std::abs(id[0]); };
  o.contains = [naturals](const BasisId& id) { return id.size() == 1 && (!naturals || id[0] >= 0); };
  o.format = [](const BasisId& id) { return "d[" + std::to_string(id[0]) + "]"; };
  o.parse = [naturals](std::string_view s) -> std::optional<BasisId> {
    auto id = parse_bracketed(s, "d", 1);
    if (id && naturals && (*id)[0] < 0) return std::nullopt;
    return id;
  };
  auto domain = BasisDomain::oracle(std::move(o));
  return pointwise(std::move(name), domain, f, std::nullopt, [domain, f](int r) {
    Accumulator<BasisId> e(f);
    for (const auto& id : domain.window(r).ids) e.add(id, Scalar::one(f));
    return e.finish();
  });
}

Algebra matfin_algebra(const Field& f) {
  BasisDomain::OracleSpec o;
  o.name = "Z²";
  o.width = 2;
  o.box = [](int r) {
    std::vector<BasisId> ids;
    for (int i = -r; i <= r; ++i) {
      for (int j = -r; j <= r; ++j) ids.push_back(BasisId{i, j});
    }
    return ids;
  };
  o.radius = [](const BasisId& id) { return std::max(std::abs(id[0]), std::abs(id[1])); };
  o.contains = [](const BasisId& id) { return id.size() == 2; };
  o.format = [](const BasisId& id) { return "E[" + std::to_string(id[0]) + "," + std::to_string(id[1]) + "]"; };
  o.parse = [](std::string_view s) { return parse_bracketed(s, "E", 2); };
  Algebra::Spec s;
  s.name = "matfin";
  s.field = f;
  s.domain = BasisDomain::oracle(std::move(o));
  s.mul = [f](const BasisId& a, const BasisId& b) {
    return a[1] == b[0] ? Element::unit(f, BasisId{a[0], b[1]}) : Element(f);
  };
  s.local_unit = [f](int r) {
    Accumulator<BasisId> e(f);
    for (int i = -r; i <= r; ++i) e.add(BasisId{i, i}, Scalar::one(f));
    return e.finish();
  };
  return Algebra(std::move(s));
}

Algebra table_algebra(std::string name, std::vector<std::string> symbols, const Field& f,
                      std::function<std::optional<std::int32_t>(std::int32_t, std::int32_t)> table) {
  Algebra::Spec s;
  s.name = std::move(name);
  s.field = f;
  s.domain = BasisDomain::finite(s.name, std::move(symbols));
  s.mul = [f, table](const BasisId& a, const BasisId& b) {
    auto c = table(a[0], b[0]);
    return c ? Element::unit(f, BasisId{*c}) : Element(f);
  };
  return Algebra(std::move(s));
}

std::vector<std::string> cyclic_symbols(int n) {
  std::vector<std::string> s;
  for (int i = 0; i < n; ++i) s.push_back("d" + std::to_string(i));
  return s;
}

int parameter(std::string_view spec, std::string_view base) {
  // "base(n)"
  auto inner = spec.substr(base.size());
  if (inner.size() < 3 || inner.front() != '(' || inner.back() != ')') {
    throw InputError("gallery entry '" + std::string(base) + "' needs a parameter, e.g. " + std::string(base) + "(3)");
  }
  auto n = parse_int(inner.substr(1, inner.size() - 2));
  if (!n || *n < 1 || *n > 64) throw InputError("bad gallery parameter in '" + std::string(spec) + "'");
  return *n;
}

}  // namespace

Algebra function_algebra(std::string name, std::vector<std::string> symbols, const Field& f) {
  auto domain = BasisDomain::finite(name, std::move(symbols));
  Accumulator<BasisId> one(f);
  for (const auto& id : domain.basis()) one.add(id, Scalar::one(f));
  return pointwise(std::move(name), domain, f, one.finish(), nullptr);
}

Algebra kfin_z_algebra(const Field& f) { return integer_functions("kfin_Z", f, false); }
Algebra kfin_n_algebra(const Field& f) { return integer_functions("kfin_N", f, true); }

Extension pullback_extension(const Algebra& source, const Algebra& target, PointMap phi, std::string name) {
  const Field f = target.field();
  auto rule = [phi, f](const BasisId& i, const BasisId& t) {
    auto p = phi(t);
    return p && *p == i ? Element::unit(f, t) : Element(f);
  };
  return Extension(
      source, target,
      [target, rule](const BasisId& i) {
        auto r = [rule, i](const BasisId& t) { return rule(i, t); };
        return Multiplier::from_basis(target, r, r);
      },
      std::move(name));
}

Extension function_coproduct(const Algebra& a, PointOp op, std::string name) {
  const std::size_t w = a.domain().width();
  return pullback_extension(a, tensor_algebra(a, a),
                            [op, w](const BasisId& t) {
                              auto [x, y] = split_id(t, w);
                              return op(x, y);
                            },
                            std::move(name));
}

Counit evaluation_counit(const Algebra& a, const BasisId& point) {
  const Field f = a.field();
  return Counit(a, [f, point](const BasisId& id) { return id == point ? Scalar::one(f) : Scalar::zero(f); });
}

ConvolutionElement point_antipode(const Algebra& a, std::function<BasisId(const BasisId&)> sigma) {
  return ConvolutionElement(a, [a, sigma](const BasisId& id) { return iota(a, a.basis(sigma(id))); }, "S");
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {"kfun_cyclic(n)", "kfin_Z",         "kfin_N",      "matfin",
                                                 "rowalg2",        "zero1",          "kfun_cyclic_proj(n)",
                                                 "kfin_Z_proj",    "kfun2_nand"};
  return names;
}

GalleryEntry gallery(std::string_view spec, const Field& f) {
  auto cyclic = [&](int n) {
    Algebra a = function_algebra("kfun_cyclic(" + std::to_string(n) + ")", cyclic_symbols(n), f);
    return a;
  };
  if (spec.starts_with("kfun_cyclic_proj")) {
    const int n = parameter(spec, "kfun_cyclic_proj");
    Algebra a = cyclic(n);
    auto delta = function_coproduct(a, [](const BasisId& x, const BasisId&) { return x; });
    return {std::string(spec), a, delta, std::nullopt, std::nullopt, "K(ℤ/n) with Δ̃(f)(x,y) = f(x)"};
  }
  if (spec.starts_with("kfun_cyclic")) {
    const int n = parameter(spec, "kfun_cyclic");
    Algebra a = cyclic(n);
    auto delta = function_coproduct(a, [n](const BasisId& x, const BasisId& y) {
      return BasisId{(x[0] + y[0]) % n};
    });
    return {std::string(spec), a, delta, evaluation_counit(a, BasisId{0}),
            point_antipode(a, [n](const BasisId& x) { return BasisId{(n - x[0]) % n}; }),
            "functions on ℤ/" + std::to_string(n) + " with the group-dual coproduct"};
  }
  if (spec == "kfin_Z") {
    Algebra a = kfin_z_algebra(f);
    auto delta = function_coproduct(a, [](const BasisId& x, const BasisId& y) { return BasisId{x[0] + y[0]}; });
    return {"kfin_Z", a, delta, evaluation_counit(a, BasisId{0}),
            point_antipode(a, [](const BasisId& x) { return BasisId{-x[0]}; }),
            "finitely supported functions on ℤ with Δ̃(f)(x,y) = f(x+y)"};
  }
  if (spec == "kfin_Z_proj") {
    Algebra a = kfin_z_algebra(f);
    auto delta = function_coproduct(a, [](const BasisId& x, const BasisId&) { return x; });
    return {"kfin_Z_proj", a, delta, std::nullopt, std::nullopt, "K(ℤ) with Δ̃(f)(x,y) = f(x)"};
  }
  if (spec == "kfin_N") {
    Algebra a = kfin_n_algebra(f);
    auto delta = function_coproduct(a, [](const BasisId& x, const BasisId& y) { return BasisId{x[0] + y[0]}; });
    return {"kfin_N", a, delta, evaluation_counit(a, BasisId{0}), std::nullopt,
            "finitely supported functions on the monoid (ℕ,+)"};
  }
  if (spec == "kfun2_nand") {
    Algebra a = cyclic(2);
    auto delta = function_coproduct(a, [](const BasisId& x, const BasisId& y) {
      return BasisId{x[0] == 1 && y[0] == 1 ? 0 : 1};
    });
    return {"kfun2_nand", a, delta, std::nullopt, std::nullopt,
            "K(ℤ/2) with Δ̃ pulled back along the non-associative x∘y = ¬(x∧y)"};
  }
  if (spec == "matfin") {
    return {"matfin", matfin_algebra(f), std::nullopt, std::nullopt, std::nullopt,
            "finitely supported ℤ×ℤ matrices with local units Σ E[i,i]"};
  }
  if (spec == "rowalg2") {
    // r0 = [[1,0],[0,0]], r1 = [[0,1],[0,0]]
    auto a = table_algebra("rowalg2", {"r0", "r1"}, f, [](std::int32_t x, std::int32_t y) -> std::optional<std::int32_t> {
      if (x == 0) return y;
      return std::nullopt;
    });
    return {"rowalg2", a, std::nullopt, std::nullopt, std::nullopt, "2×2 matrices supported on the first row"};
  }
  if (spec == "zero1") {
    auto a = table_algebra("zero1", {"z"}, f, [](std::int32_t, std::int32_t) { return std::optional<std::int32_t>{}; });
    return {"zero1", a, std::nullopt, std::nullopt, std::nullopt, "one-dimensional algebra with zero product"};
  }
  throw InputError("unknown gallery entry '" + std::string(spec) + "'");
}

MultiplierBialgebra bialgebra_of(const GalleryEntry& e, BialgebraOptions options) {
  if (!e.delta) throw InputError("gallery entry '" + e.name + "' has no coproduct");
  return MultiplierBialgebra(e.name, e.algebra, *e.delta, e.counit, options);
}

}  // namespace mulhopf
