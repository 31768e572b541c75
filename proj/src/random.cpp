#include "mulhopf/random.hpp"

#include <map>

#include "mulhopf/gallery.hpp"

namespace mulhopf {

namespace {

// Columns of the inverse of p, or nullopt when p is singular.
std::optional<std::vector<Vector>> inverse_columns(const Field& f, const std::vector<std::vector<Scalar>>& p) {
  const std::size_t n = p.size();
  const SparseMatrix m = SparseMatrix::from_rows(f, n, p);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = solve_linear(m, Vector::unit(f, i));
    if (!x) return std::nullopt;
    out.push_back(*x);
  }
  if (rank(m) != n) return std::nullopt;
  return out;
}

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Algebra block_sum(const std::vector<int>& blocks, const Field& f, std::string name) {
  // Block b of size 1 is k, of size 4 is M_2 with E[i,j] at offset + 2i + j.
  std::vector<std::pair<int, int>> where;  // basis index -> (offset, size)
  std::vector<std::string> symbols;
  int offset = 0;
  for (int size : blocks) {
    for (int i = 0; i < size; ++i) {
      where.emplace_back(offset, size);
      symbols.push_back("e" + std::to_string(offset + i));
    }
    offset += size;
  }
  Algebra::Spec s;
  s.name = name;
  s.field = f;
  s.domain = BasisDomain::finite(std::move(name), std::move(symbols));
  s.mul = [where, f](const BasisId& a, const BasisId& b) {
    const auto [oa, sa] = where[a[0]];
    const auto [ob, sb] = where[b[0]];
    if (oa != ob) return Element(f);
    if (sa == 1) return Element::unit(f, a);
    const int i = (a[0] - oa) / 2, j = (a[0] - oa) % 2, k = (b[0] - ob) / 2, l = (b[0] - ob) % 2;
    return j == k ? Element::unit(f, BasisId{oa + 2 * i + l}) : Element(f);
  };
  return Algebra(std::move(s));
}

Multiplier transport(const BasisChange& target, const Multiplier& x) {
  auto to_new = target.to_new, to_old = target.to_old;
  return Multiplier(
      target.algebra, [x, to_new, to_old](const Element& a) { return to_new(x.left(to_old(a))); },
      [x, to_new, to_old](const Element& a) { return to_new(x.right(to_old(a))); }, x.name());
}

}  // namespace

BasisChange change_basis(const Algebra& a, const std::vector<std::vector<Scalar>>& p, std::string name) {
  if (!a.is_finite()) throw InputError("change_basis needs a finite algebra");
  const Field f = a.field();
  const auto& ids = a.domain().basis();
  const std::size_t n = ids.size();
  if (p.size() != n) throw InputError("basis change has the wrong size");
  auto inv = inverse_columns(f, p);
  if (!inv) throw InputError("basis change is singular");
  // new_i in old coordinates, and old_j in new coordinates.
  std::vector<Element> fwd(n, Element(f)), back(n, Element(f));
  for (std::size_t i = 0; i < n; ++i) {
    Accumulator<BasisId> x(f);
    for (std::size_t j = 0; j < n; ++j) x.add(ids[j], p[j][i]);
    fwd[i] = x.finish();
    Accumulator<BasisId> y(f);
    for (const auto& [k, c] : (*inv)[i]) y.add(BasisId{static_cast<std::int32_t>(k)}, c);
    back[i] = y.finish();
  }
  std::map<BasisId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);
  auto to_old = [fwd, f](const Element& x) {
    Accumulator<BasisId> out(f);
    for (const auto& [id, c] : x) out.add(fwd.at(id[0]), c);
    return out.finish();
  };
  auto to_new = [back, index, f](const Element& x) {
    Accumulator<BasisId> out(f);
    for (const auto& [id, c] : x) out.add(back.at(index.at(id)), c);
    return out.finish();
  };
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < n; ++i) symbols.push_back("f" + std::to_string(i));
  Algebra::Spec s;
  s.name = name;
  s.field = f;
  s.domain = BasisDomain::finite(std::move(name), std::move(symbols));
  s.mul = [a, fwd, to_new](const BasisId& x, const BasisId& y) { return to_new(a.mul(fwd[x[0]], fwd[y[0]])); };
  return {Algebra(std::move(s)), to_new, to_old};
}

std::vector<std::vector<Scalar>> random_invertible(Rng& rng, const Field& f, std::size_t n) {
  for (;;) {
    std::vector<std::vector<Scalar>> p(n, std::vector<Scalar>(n, Scalar::zero(f)));
    for (auto& row : p) {
      for (auto& x : row) x = Scalar(f, uniform(rng, -2, 2));
    }
    if (rank(SparseMatrix::from_rows(f, n, p)) == n) return p;
  }
}

RandomInstance random_instance(std::uint64_t seed, const Field& f, std::size_t max_dim) {
  Rng rng(seed);
  std::vector<int> blocks;
  std::size_t dim = 0;
  const std::size_t target = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_dim)));
  while (dim < target) {
    const int size = dim + 4 <= target && rng() % 2 ? 4 : 1;
    blocks.push_back(size);
    dim += size;
  }
  const std::string name = "R" + std::to_string(seed);
  const Algebra base = block_sum(blocks, f, name + "_blocks");
  const BasisChange bc = change_basis(base, random_invertible(rng, f, dim), name);
  const Algebra& a = bc.algebra;
  RandomInstance out{a, {ModuleStructure::regular(a, Side::right)}};
  // χ picks the coefficient of the first one-dimensional block.
  int offset = 0;
  for (int size : blocks) {
    if (size == 1) {
      const BasisId e{offset};
      auto to_old = bc.to_old;
      const Element g = bc.to_new(base.basis(e));
      ModuleStructure::Spec s;
      s.name = "χ" + std::to_string(offset);
      s.algebra = a;
      s.carrier = BasisDomain::point();
      s.side = Side::right;
      s.act = [to_old, e, f](const BasisId& m, const BasisId& x) {
        Element old = to_old(Element::unit(f, x));
        return Element::single(m, old.coeff(e));
      };
      s.decompose = [g, f](const BasisId& m) { return std::vector<FactorPair>{{Element::unit(f, m), g}}; };
      out.modules.emplace_back(std::move(s));
      break;
    }
    offset += size;
  }
  return out;
}

Extension random_extension(std::uint64_t seed, const Field& f) {
  Rng rng(seed);
  const int p = static_cast<int>(uniform(rng, 1, 3)), q = static_cast<int>(uniform(rng, 1, 3));
  std::vector<std::string> sp, sq;
  for (int i = 0; i < p; ++i) sp.push_back("x" + std::to_string(i));
  for (int i = 0; i < q; ++i) sq.push_back("y" + std::to_string(i));
  const std::string name = "E" + std::to_string(seed);
  const Algebra b0 = function_algebra(name + "_src0", sp, f);
  const Algebra a0 = function_algebra(name + "_tgt0", sq, f);
  std::vector<std::int32_t> phi;
  for (int t = 0; t < q; ++t) phi.push_back(static_cast<std::int32_t>(uniform(rng, 0, p - 1)));
  const Extension base =
      pullback_extension(b0, a0, [phi](const BasisId& t) { return std::optional<BasisId>(BasisId{phi[t[0]]}); },
                         name + "_0");
  const BasisChange bs = change_basis(b0, random_invertible(rng, f, p), name + "_src");
  const BasisChange at = change_basis(a0, random_invertible(rng, f, q), name + "_tgt");
  auto to_old_src = bs.to_old;
  return Extension(
      bs.algebra, at.algebra,
      [base, at, to_old_src, f](const BasisId& b) { return transport(at, base(to_old_src(Element::unit(f, b)))); },
      name);
}

}  // namespace mulhopf
