#include <doctest.h>

#include "mulhopf/gallery.hpp"

using namespace mulhopf;

namespace {

const Field Q = Field::rationals();

// Both sides of the sliced coassociativity identity for a triple (a, b, c).
std::pair<Element, Element> coassoc_sides(const MultiplierBialgebra& h, const Element& a, const Element& b,
                                          const Element& c) {
  const Algebra& A = h.algebra();
  const std::size_t w = A.domain().width();
  Element lhs(Q), rhs(Q);
  for (const auto& [id, coeff] : sweedler_slice(h, b, c, Side::right)) {
    auto [u, v] = split_id(id, w);
    lhs += coeff * tensor(sweedler_slice(h, A.basis(u), a, Side::left), A.basis(v));
  }
  for (const auto& [id, coeff] : sweedler_slice(h, b, a, Side::left)) {
    auto [u, v] = split_id(id, w);
    rhs += coeff * tensor(A.basis(u), sweedler_slice(h, A.basis(v), c, Side::right));
  }
  return {lhs, rhs};
}

}  // namespace

TEST_CASE("gallery coproducts are coassociative and counital") {
  for (std::string name : {"kfun_cyclic(2)", "kfun_cyclic(3)", "kfun_cyclic(5)"}) {
    CAPTURE(name);
    auto h = bialgebra_of(gallery(name));
    auto w = h.window();
    CHECK(check_coassociative(h, w).status == Status::proven);
    CHECK(check_counit(h, w).status == Status::proven);
    CHECK(check_counit_lifted(h, w, h.window()).status == Status::proven);
  }
  auto z = bialgebra_of(gallery("kfin_Z"), BialgebraOptions{3, 2, 0});
  CHECK(check_coassociative(z, z.window()).status == Status::holds_on_window);
  CHECK(check_counit(z, z.window()).status == Status::holds_on_window);
  CHECK(check_coassociative_lifted(z, z.algebra().window(1), tensor_power(z.algebra(), 3).window(1)).status ==
        Status::holds_on_window);
}

TEST_CASE("sweedler slices of K(Z)") {
  auto h = bialgebra_of(gallery("kfin_Z"), BialgebraOptions{3, 2, 0});
  const Algebra& A = h.algebra();
  // Δ̃(δ_n)(1⊗δ_m) = δ_{n-m}⊗δ_m.
  for (int n = -2; n <= 2; ++n) {
    for (int m = -2; m <= 2; ++m) {
      CHECK(sweedler_slice(h, A.basis(BasisId{n}), A.basis(BasisId{m}), Side::right) ==
            tensor(A.basis(BasisId{n - m}), A.basis(BasisId{m})));
      CHECK(sweedler_slice(h, A.basis(BasisId{n}), A.basis(BasisId{m}), Side::left) ==
            tensor(A.basis(BasisId{m}), A.basis(BasisId{n - m})));
    }
  }
}

TEST_CASE("perturbed coproduct fails coassociativity with a witness") {
  auto base = gallery("kfun_cyclic(2)");
  const Algebra& A = base.algebra;
  // Δ̃(f)(x, y) = f(1 - x).
  auto delta = function_coproduct(A, [](const BasisId& x, const BasisId&) { return BasisId{1 - x[0]}; }, "Δ'");
  MultiplierBialgebra h("perturbed", A, delta, std::nullopt);
  auto v = check_coassociative(h, h.window());
  REQUIRE(v.status == Status::failed);
  REQUIRE(v.witness.size() == 3);
  auto [lhs, rhs] = coassoc_sides(h, v.witness[0], v.witness[1], v.witness[2]);
  CHECK_FALSE(lhs == rhs);

  auto nand = bialgebra_of(gallery("kfun2_nand"));
  auto n = check_coassociative(nand, nand.window());
  REQUIRE(n.status == Status::failed);
  auto [l2, r2] = coassoc_sides(nand, n.witness[0], n.witness[1], n.witness[2]);
  CHECK_FALSE(l2 == r2);
}

TEST_CASE("wrong counit fails") {
  auto e = gallery("kfun_cyclic(3)");
  auto h = bialgebra_of(e).with_counit(evaluation_counit(e.algebra, BasisId{1}));
  auto v = check_counit(h, h.window());
  REQUIRE(v.status == Status::failed);
  CHECK(v.witness.size() == 2);
}

TEST_CASE("counit synthesis") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    auto e = gallery("kfun_cyclic(" + std::to_string(n) + ")");
    MultiplierBialgebra h(e.name, e.algebra, *e.delta, std::nullopt);
    auto s = synthesize_counit(h, h.window());
    REQUIRE(s.counit.has_value());
    for (const auto& [id, value] : s.table) CHECK(value == Scalar(Q, id[0] == 0 ? 1 : 0));
  }
  auto z = gallery("kfin_Z");
  MultiplierBialgebra hz(z.name, z.algebra, *z.delta, std::nullopt, BialgebraOptions{3, 2, 0});
  auto sz = synthesize_counit(hz, hz.window());
  REQUIRE(sz.counit.has_value());
  for (int n = -3; n <= 3; ++n) CHECK(sz.table.at(BasisId{n}) == Scalar(Q, n == 0 ? 1 : 0));

  auto p = gallery("kfin_Z_proj");
  MultiplierBialgebra hp(p.name, p.algebra, *p.delta, std::nullopt, BialgebraOptions{3, 2, 0});
  auto sp = synthesize_counit(hp, hp.window());
  CHECK_FALSE(sp.counit.has_value());
  CHECK_FALSE(sp.diagnostic.empty());
}

TEST_CASE("monoidal structure on modules") {
  for (std::string name : {"kfun_cyclic(2)", "kfin_Z"}) {
    CAPTURE(name);
    auto h = bialgebra_of(gallery(name), BialgebraOptions{2, 2, 0});
    auto a = ModuleStructure::regular(h.algebra(), Side::right);
    auto aa = tensor_module_action(h, a, a);
    auto al = ModuleStructure::regular(h.algebra(), Side::left);
    for (const auto& [label, v] : check_monoidal_instance(h, {a, aa, al}, MonoidalOptions{1, 1})) {
      CAPTURE(label);
      CHECK(v.ok());
    }
  }
}

TEST_CASE("doubled counit breaks the left unit constraint") {
  auto h = bialgebra_of(gallery("kfun_cyclic(2)"));
  auto doubled = h.with_counit(h.require_counit().scaled(Scalar(Q, 2)), true);
  auto a = ModuleStructure::regular(h.algebra(), Side::right);
  bool broken = false;
  for (const auto& [label, v] : check_monoidal_instance(doubled, {a}, MonoidalOptions{0, 0})) {
    if (label.starts_with("l_M")) {
      CHECK(v.status == Status::failed);
      CHECK_FALSE(v.witness.empty());
      broken = true;
    }
  }
  CHECK(broken);
}
