#include "mulhopf/multiplier.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "mulhopf/parallel.hpp"

namespace mulhopf {

Multiplier::Multiplier(Algebra a, Rule lambda, Rule rho, std::string name)
    : algebra_(std::move(a)), lambda_(std::move(lambda)), rho_(std::move(rho)), name_(std::move(name)) {
  if (!lambda_ || !rho_) throw InputError("multiplier needs both a left and a right part");
}

Multiplier Multiplier::identity(const Algebra& a) {
  auto id = [](const Element& x) { return x; };
  return Multiplier(a, id, id, "1");
}

Multiplier Multiplier::zero(const Algebra& a) {
  auto z = [f = a.field()](const Element&) { return Element(f); };
  return Multiplier(a, z, z, "0");
}

Multiplier Multiplier::from_basis(const Algebra& a, BasisRule lambda, BasisRule rho, std::string name, bool memoize) {
  return Multiplier(a, linear_rule(a, std::move(lambda), memoize), linear_rule(a, std::move(rho), memoize),
                    std::move(name));
}

Multiplier Multiplier::named(std::string name) const {
  Multiplier out = *this;
  out.name_ = std::move(name);
  return out;
}

Multiplier::Rule linear_rule(const Algebra& a, Multiplier::BasisRule rule, bool memoize) {
  const Field f = a.field();
  if (!memoize) {
    return [f, rule = std::move(rule)](const Element& x) {
      if (x.size() == 1 && x.front().second.is_one()) return rule(x.front().first);
      Accumulator<BasisId> acc(f);
      for (const auto& [id, c] : x) acc.add(rule(id), c);
      return acc.finish();
    };
  }
  struct Memo {
    std::mutex mutex;
    std::map<BasisId, Element> values;
  };
  auto memo = std::make_shared<Memo>();
  auto lookup = [memo, rule = std::move(rule)](const BasisId& id) {
    {
      std::lock_guard lock(memo->mutex);
      auto it = memo->values.find(id);
      if (it != memo->values.end()) return it->second;
    }
    Element v = rule(id);
    std::lock_guard lock(memo->mutex);
    memo->values.emplace(id, v);
    return v;
  };
  return [f, lookup](const Element& x) {
    Accumulator<BasisId> acc(f);
    for (const auto& [id, c] : x) acc.add(lookup(id), c);
    return acc.finish();
  };
}

Multiplier iota(const Algebra& a, const Element& x) {
  a.require_member(x);
  if (x.is_zero()) return Multiplier::zero(a);
  return Multiplier(
      a, [a, x](const Element& y) { return a.mul(x, y); }, [a, x](const Element& y) { return a.mul(y, x); },
      "ι(" + a.format(x) + ")");
}

namespace {

void require_same(const Multiplier& x, const Multiplier& y) {
  if (!x.algebra().same_as(y.algebra())) throw InputError("multipliers on different algebras");
}

}  // namespace

Multiplier operator*(const Multiplier& x, const Multiplier& y) {
  require_same(x, y);
  auto lx = x.lambda(), ly = y.lambda(), rx = x.rho(), ry = y.rho();
  return Multiplier(
      x.algebra(), [lx, ly](const Element& a) { return lx(ly(a)); }, [rx, ry](const Element& a) { return ry(rx(a)); });
}

Multiplier operator+(const Multiplier& x, const Multiplier& y) {
  return linear_combination(x.algebra(), {{Scalar::one(x.algebra().field()), x}, {Scalar::one(x.algebra().field()), y}});
}

Multiplier operator-(const Multiplier& x, const Multiplier& y) {
  return linear_combination(x.algebra(), {{Scalar::one(x.algebra().field()), x}, {-Scalar::one(x.algebra().field()), y}});
}

Multiplier operator*(const Scalar& c, const Multiplier& x) { return linear_combination(x.algebra(), {{c, x}}); }

Multiplier linear_combination(const Algebra& a, std::vector<std::pair<Scalar, Multiplier>> terms) {
  std::erase_if(terms, [](const auto& t) { return t.first.is_zero(); });
  for (const auto& t : terms) {
    if (!t.second.algebra().same_as(a)) throw InputError("multipliers on different algebras");
  }
  if (terms.empty()) return Multiplier::zero(a);
  if (terms.size() == 1 && terms.front().first.is_one()) return terms.front().second;
  auto shared = std::make_shared<const std::vector<std::pair<Scalar, Multiplier>>>(std::move(terms));
  const Field f = a.field();
  auto left = [shared, f](const Element& x) {
    Element out(f);
    for (const auto& [c, m] : *shared) out += c * m.left(x);
    return out;
  };
  auto right = [shared, f](const Element& x) {
    Element out(f);
    for (const auto& [c, m] : *shared) out += c * m.right(x);
    return out;
  };
  return Multiplier(a, left, right);
}

Verdict validate_multiplier(const Multiplier& x, const Window& window) {
  const Algebra& a = x.algebra();
  const auto& ids = window.ids;
  if (ids.empty()) throw InputError("empty window for multiplier validation");
  const std::size_t n = ids.size();
  std::function<std::optional<Verdict>(std::size_t)> probe = [&](std::size_t t) -> std::optional<Verdict> {
    const Element p = a.basis(ids[t / n]);
    const Element q = a.basis(ids[t % n]);
    const Element pq = a.mul(p, q);
    if (!(x.left(pq) == a.mul(x.left(p), q))) {
      return Verdict::fail(window.label, {p, q}, "λ(ab) ≠ λ(a)b");
    }
    if (!(x.right(pq) == a.mul(p, x.right(q)))) {
      return Verdict::fail(window.label, {p, q}, "ρ(ab) ≠ aρ(b)");
    }
    if (!(a.mul(p, x.left(q)) == a.mul(x.right(p), q))) {
      return Verdict::fail(window.label, {p, q}, "aλ(b) ≠ ρ(a)b");
    }
    return std::nullopt;
  };
  if (auto hit = first_hit(n * n, probe)) return hit->second;
  return Verdict::pass(window.exhaustive, window.label);
}

Multiplier make_multiplier(const Algebra& a, Multiplier::Rule lambda, Multiplier::Rule rho, const Window& window,
                           std::string name) {
  Multiplier x(a, std::move(lambda), std::move(rho), std::move(name));
  Verdict v = validate_multiplier(x, window);
  if (!v.ok()) throw MultiplierRejected(std::move(v));
  return x;
}

Element act_on_algebra(const Multiplier& x, const Element& a, Side side) {
  x.algebra().require_member(a);
  return side == Side::left ? x.left(a) : x.right(a);
}

Element act_on_module(const ModuleStructure& m, const Element& v, const Multiplier& x) {
  if (!m.algebra().same_as(x.algebra())) throw InputError("act_on_module: multiplier on a different algebra");
  Element out(m.field());
  for (const auto& [mi, ai] : m.decompose(v)) {
    out += m.act(mi, m.side() == Side::right ? x.right(ai) : x.left(ai));
  }
  return out;
}

Verdict multiplier_eq(const Multiplier& x, const Multiplier& y, const std::vector<Element>& probe,
                      const std::string& label, bool exhaustive) {
  if (probe.empty()) throw InputError("multiplier_eq: empty probe");
  require_same(x, y);
  std::function<std::optional<Verdict>(std::size_t)> check = [&](std::size_t i) -> std::optional<Verdict> {
    const Element& a = probe[i];
    const Element xl = x.left(a), yl = y.left(a);
    if (!(xl == yl)) {
      return Verdict::fail(label, {a}, "x▷a = " + x.algebra().format(xl) + " but y▷a = " + x.algebra().format(yl));
    }
    const Element xr = x.right(a), yr = y.right(a);
    if (!(xr == yr)) {
      return Verdict::fail(label, {a}, "a◁x = " + x.algebra().format(xr) + " but a◁y = " + x.algebra().format(yr));
    }
    return std::nullopt;
  };
  if (auto hit = first_hit(probe.size(), check)) return hit->second;
  return Verdict::pass(exhaustive, label);
}

Verdict multiplier_eq(const Multiplier& x, const Multiplier& y, const Window& probe) {
  std::vector<Element> elems;
  elems.reserve(probe.ids.size());
  for (const auto& id : probe.ids) elems.push_back(x.algebra().basis(id));
  return multiplier_eq(x, y, elems, probe.label, probe.exhaustive);
}

// ---------------------------------------------------------------------------
// IotaInverter

struct IotaInverter::Data {
  Data(Algebra a, Window w, int e) : algebra(std::move(a)), probes(std::move(w)), expansion(e) {}
  Algebra algebra;
  Window probes;
  int expansion;
  using Key = std::tuple<int, BasisId, BasisId>;
  std::once_flag solver_once;
  std::unique_ptr<SpanSolver<Key>> solver;
  std::vector<BasisId> basis;

  const SpanSolver<Key>& finite_solver() {
    std::call_once(solver_once, [this] {
      solver = std::make_unique<SpanSolver<Key>>(algebra.field());
      basis = algebra.domain().basis();
      for (const auto& t : basis) {
        Accumulator<Key> col(algebra.field());
        for (const auto& q : basis) {
          for (const auto& [o, c] : algebra.mul_basis(t, q)) col.add(Key{0, q, o}, c);
          for (const auto& [o, c] : algebra.mul_basis(q, t)) col.add(Key{1, q, o}, c);
        }
        solver->add(col.finish());
      }
    });
    return *solver;
  }
};

IotaInverter::IotaInverter(Algebra a, Window probes, int expansion) : d_(std::make_shared<Data>(std::move(a), std::move(probes), expansion)) {
  if (d_->probes.ids.empty()) throw InputError("IotaInverter: empty probe window");
}

const Algebra& IotaInverter::algebra() const { return d_->algebra; }
const Window& IotaInverter::probes() const { return d_->probes; }

Element IotaInverter::invert(const Multiplier& x, int radius, Side side) const {
  const Algebra& a = d_->algebra;
  auto probe_with = [&](const Element& e) { return side == Side::left ? x.left(e) : x.right(e); };
  Element p(a.field());
  if (a.unit()) {
    p = probe_with(*a.unit());
  } else if (a.has_local_units()) {
    const int r = d_->expansion * std::max(radius, 1);
    Element p1 = probe_with(*a.local_unit(r));
    Element p2 = probe_with(*a.local_unit(2 * r));
    if (p1 == p2) {
      p = std::move(p1);
    } else {
      Element p3 = probe_with(*a.local_unit(4 * r));
      if (!(p2 == p3)) {
        throw SliceUndefined("multiplier is not in the image of ι: X·e_R does not stabilize up to R = " +
                             std::to_string(4 * r));
      }
      p = std::move(p2);
    }
  } else if (a.is_finite()) {
    const auto& solver = d_->finite_solver();
    Accumulator<Data::Key> target(a.field());
    for (const auto& q : d_->basis) {
      const Element eq = a.basis(q);
      for (const auto& [o, c] : x.left(eq)) target.add(Data::Key{0, q, o}, c);
      for (const auto& [o, c] : x.right(eq)) target.add(Data::Key{1, q, o}, c);
    }
    auto coeffs = solver.express(target.finish());
    if (!coeffs) throw SliceUndefined("multiplier is not in the image of ι (no solution over the full basis)");
    Accumulator<BasisId> acc(a.field());
    for (const auto& [j, c] : *coeffs) acc.add(d_->basis[j], c);
    return acc.finish();
  } else {
    throw WindowInsufficient("cannot invert ι on " + a.name() + ": no unit, local units or finite basis");
  }
  for (const auto& q : d_->probes.ids) {
    const Element eq = a.basis(q);
    if (!(a.mul(p, eq) == x.left(eq)) || !(a.mul(eq, p) == x.right(eq))) {
      throw SliceUndefined("multiplier is not in the image of ι: candidate " + a.format(p) +
                           " disagrees on probe " + a.domain().format(q));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// MultiplierSpace

MultiplierSpace::MultiplierSpace(const Algebra& a) : algebra_(a) {
  if (!a.is_finite()) throw InputError("multiplier space needs a finite algebra");
  const auto& ids = a.domain().basis();
  n_ = ids.size();
  const std::size_t n = n_;
  const Field f = a.field();
  std::map<BasisId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);
  // products[p][q] as (output index, coefficient) lists
  std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> prod(n, std::vector<std::vector<std::pair<std::size_t, Scalar>>>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (const auto& [o, c] : a.mul_basis(ids[p], ids[q])) prod[p][q].emplace_back(index.at(o), c);
    }
  }
  auto lam = [n](std::size_t i, std::size_t j) { return i * n + j; };
  auto rho = [n](std::size_t i, std::size_t j) { return n * n + i * n + j; };
  auto row = [n](std::size_t type, std::size_t p, std::size_t q, std::size_t t) {
    return ((type * n + p) * n + q) * n + t;
  };
  std::vector<Accumulator<std::size_t>> cols(2 * n * n, Accumulator<std::size_t>(f));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      // λ(e_p e_q) − λ(e_p) e_q
      for (const auto& [r, c] : prod[p][q]) {
        for (std::size_t t = 0; t < n; ++t) cols[lam(r, t)].add(row(0, p, q, t), c);
      }
      for (std::size_t s = 0; s < n; ++s) {
        for (const auto& [t, d] : prod[s][q]) cols[lam(p, s)].add(row(0, p, q, t), -d);
      }
      // ρ(e_p e_q) − e_p ρ(e_q)
      for (const auto& [r, c] : prod[p][q]) {
        for (std::size_t t = 0; t < n; ++t) cols[rho(r, t)].add(row(1, p, q, t), c);
      }
      for (std::size_t s = 0; s < n; ++s) {
        for (const auto& [t, d] : prod[p][s]) cols[rho(q, s)].add(row(1, p, q, t), -d);
      }
      // e_p λ(e_q) − ρ(e_p) e_q
      for (std::size_t s = 0; s < n; ++s) {
        for (const auto& [t, d] : prod[p][s]) cols[lam(q, s)].add(row(2, p, q, t), d);
        for (const auto& [t, d] : prod[s][q]) cols[rho(p, s)].add(row(2, p, q, t), -d);
      }
    }
  }
  std::vector<Vector> columns;
  columns.reserve(cols.size());
  for (auto& c : cols) columns.push_back(c.finish());
  kernel_ = kernel_basis(SparseMatrix(f, 3 * n * n * n, std::move(columns)));
  span_ = std::make_shared<SpanSolver<std::size_t>>(f);
  for (std::size_t k = 0; k < kernel_.size(); ++k) {
    span_->add(kernel_[k]);
    std::vector<Element> left(n, Element(f)), right(n, Element(f));
    for (const auto& [u, c] : kernel_[k]) {
      if (u < n * n) {
        left[u / n] += Element::single(ids[u % n], c);
      } else {
        right[(u - n * n) / n] += Element::single(ids[(u - n * n) % n], c);
      }
    }
    auto lookup = [index](std::vector<Element> table) {
      return [index, table = std::move(table)](const BasisId& id) { return table[index.at(id)]; };
    };
    basis_.push_back(Multiplier::from_basis(a, lookup(std::move(left)), lookup(std::move(right)),
                                            "m" + std::to_string(k)));
  }
}

Multiplier MultiplierSpace::element(const Vector& coeffs) const {
  std::vector<std::pair<Scalar, Multiplier>> terms;
  for (const auto& [k, c] : coeffs) terms.emplace_back(c, basis_.at(k));
  return linear_combination(algebra_, std::move(terms));
}

Vector MultiplierSpace::unknowns_of(const Multiplier& x) const {
  const auto& ids = algebra_.domain().basis();
  const std::size_t n = n_;
  std::map<BasisId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);
  Accumulator<std::size_t> acc(algebra_.field());
  for (std::size_t i = 0; i < n; ++i) {
    const Element e = algebra_.basis(ids[i]);
    for (const auto& [o, c] : x.left(e)) acc.add(i * n + index.at(o), c);
    for (const auto& [o, c] : x.right(e)) acc.add(n * n + i * n + index.at(o), c);
  }
  return acc.finish();
}

std::optional<Vector> MultiplierSpace::coordinates(const Multiplier& x) const {
  return span_->express(unknowns_of(x));
}

bool MultiplierSpace::spanned_by_iota() const {
  SpanSolver<std::size_t> s(algebra_.field());
  for (const auto& id : algebra_.domain().basis()) {
    auto c = coordinates(iota(algebra_, algebra_.basis(id)));
    if (!c) return false;
    s.add(*c);
  }
  return s.rank() == dimension();
}

}  // namespace mulhopf

namespace mulhopf {

Multiplier complete_from_left(const Algebra& a, Multiplier::BasisRule lambda, std::string name) {
  if (!a.is_finite()) throw InputError("complete_from_left needs a finite algebra");
  const Field f = a.field();
  const auto& ids = a.domain().basis();
  // Column z: (y, w) ↦ coefficient of w in z·y.
  SpanSolver<BasisId> span(f);
  for (const auto& z : ids) {
    Accumulator<BasisId> col(f);
    for (const auto& y : ids) {
      for (const auto& [w, c] : a.mul_basis(z, y)) col.add(y.concat(w), c);
    }
    span.add(col.finish());
  }
  std::map<BasisId, Element> table;
  for (const auto& x : ids) {
    Accumulator<BasisId> target(f);
    for (const auto& y : ids) {
      for (const auto& [w, c] : a.mul(a.basis(x), lambda(y))) target.add(y.concat(w), c);
    }
    auto coeffs = span.express(target.finish());
    if (!coeffs) {
      throw InputError("no right action matches the left action on " + a.domain().format(x) +
                       (name.empty() ? "" : " for " + name));
    }
    Accumulator<BasisId> r(f);
    for (const auto& [k, c] : *coeffs) r.add(ids[k], c);
    table.emplace(x, r.finish());
  }
  return Multiplier::from_basis(a, std::move(lambda), [table = std::move(table)](const BasisId& x) {
    return table.at(x);
  }, std::move(name));
}

}  // namespace mulhopf
