#include <doctest.h>

#include "mulhopf/gallery.hpp"
#include "mulhopf/random.hpp"

using namespace mulhopf;

namespace {

const Field Q = Field::rationals();

Element d(const Algebra& a, int n) { return a.basis(BasisId{n}); }

Multiplier even_indicator(const Algebra& a) {
  auto keep = [a](const BasisId& id) { return id[0] % 2 == 0 ? a.basis(id) : a.zero(); };
  return Multiplier::from_basis(a, keep, keep, "u");
}

Extension eps_extension(const Algebra& c) { return evaluation_counit(c, BasisId{0}).as_extension(); }

// f̃(δ_n) = ι(δ_{2n}) on K(Z): multiplicative, but odd deltas are never reached.
Extension doubling(const Algebra& z) {
  return Extension(z, z, [z](const BasisId& b) { return iota(z, z.basis(BasisId{2 * b[0]})); }, "δ2n");
}

}  // namespace

TEST_CASE("extension_from_map accepts and rejects") {
  auto C = gallery("kfun_cyclic(2)").algebra;
  auto w = extension_windows(C, C, 0);
  CHECK_NOTHROW(extension_from_map(C, C, [C](const BasisId& b) { return iota(C, C.basis(b)); }, w));

  auto k = Algebra::ground(Q);
  auto we = extension_windows(C, k, 0);
  auto eps = extension_from_map(
      C, k, [k](const BasisId& b) { return b[0] == 0 ? Multiplier::identity(k) : Multiplier::zero(k); }, we, "ε");
  CHECK(eps.left_action(d(C, 0), k.scalar(Scalar(Q, 3))) == k.scalar(Scalar(Q, 3)));
  CHECK(eps.left_action(d(C, 1), k.scalar(Scalar(Q, 3))).is_zero());

  try {
    extension_from_map(C, C, [C](const BasisId&) { return Multiplier::zero(C); }, w, "0");
    FAIL("zero map accepted");
  } catch (const ExtensionRejected& e) {
    CHECK(e.verdict.status == Status::failed);
    CHECK(e.verdict.detail.find("span of M·A") != std::string::npos);
  }

  auto Z = kfin_z_algebra();
  auto f = doubling(Z);
  CHECK_THROWS_AS(extension_from_map(Z, Z, [f](const BasisId& b) { return f.on_basis(b); },
                                     extension_windows(Z, Z, 2)),
                  ExtensionRejected);
}

TEST_CASE("bimodule presentation") {
  auto C = gallery("kfun_cyclic(2)").algebra;
  auto w = extension_windows(C, C, 0);
  auto regular = extension_from_bimodule(
      C, C,
      BimoduleRules{[C](const BasisId& b, const BasisId& a) { return C.mul_basis(b, a); },
                    [C](const BasisId& a, const BasisId& b) { return C.mul_basis(a, b); }},
      w);
  for (const auto& id : C.domain().basis()) {
    CHECK(multiplier_eq(regular.on_basis(id), iota(C, C.basis(id)), C.window(0)).status == Status::proven);
  }

  auto Z = kfin_z_algebra();
  auto wz = extension_windows(Z, Z, 2);
  auto pointwise = extension_from_bimodule(
      Z, Z,
      BimoduleRules{[Z](const BasisId& b, const BasisId& a) { return Z.mul_basis(b, a); },
                    [Z](const BasisId& a, const BasisId& b) { return Z.mul_basis(a, b); }},
      wz);
  CHECK(multiplier_eq(pointwise.on_basis(BasisId{1}), iota(Z, d(Z, 1)), Z.window(3)).ok());

  auto k = Algebra::ground(Q);
  auto from_eps = extension_from_bimodule(
      C, k,
      BimoduleRules{[k](const BasisId& b, const BasisId&) { return b[0] == 0 ? k.scalar(Scalar::one(Q)) : k.zero(); },
                    [k](const BasisId&, const BasisId& b) { return b[0] == 0 ? k.scalar(Scalar::one(Q)) : k.zero(); }},
      extension_windows(C, k, 0));
  auto eps = eps_extension(C);
  for (const auto& id : C.domain().basis()) {
    CHECK(multiplier_eq(from_eps.on_basis(id), eps.on_basis(id), k.window(0)).status == Status::proven);
  }

  // b·a uses δ_0 and a·b uses δ_1: (a·b)a' ≠ a(b·a').
  BimoduleRules unbalanced{
      [C](const BasisId&, const BasisId& a) { return C.mul(d(C, 0), C.basis(a)); },
      [C](const BasisId& a, const BasisId&) { return C.mul(C.basis(a), d(C, 1)); }};
  auto bal = check_balanced(C, C, unbalanced, w);
  REQUIRE(bal.status == Status::failed);
  CHECK(bal.witness.size() == 3);
  CHECK_THROWS_AS(extension_from_bimodule(C, C, unbalanced, w), ExtensionRejected);
}

TEST_CASE("lift to multipliers") {
  auto Z = kfin_z_algebra();
  auto id = identity_extension(Z);
  auto u = even_indicator(Z);
  CHECK(multiplier_eq(lift_to_multiplier(id, u), u, Z.window(4)).ok());
  CHECK(multiplier_eq(lift_to_multiplier(id, Multiplier::identity(Z)), Multiplier::identity(Z), Z.window(4)).ok());

  auto C = gallery("kfun_cyclic(2)").algebra;
  auto k = Algebra::ground(Q);
  auto eps = eps_extension(C);
  CHECK(multiplier_eq(lift_to_multiplier(eps, Multiplier::identity(C)), Multiplier::identity(k), k.window(0)).status ==
        Status::proven);
  CHECK(multiplier_eq(lift_to_multiplier(eps, iota(C, d(C, 1))), Multiplier::zero(k), k.window(0)).status ==
        Status::proven);
}

TEST_CASE("composition") {
  auto C = gallery("kfun_cyclic(2)").algebra;
  auto k = Algebra::ground(Q);
  auto eps = eps_extension(C);
  auto id = identity_extension(C);
  for (const auto& e : {compose_extensions(eps, identity_extension(k)), compose_extensions(id, eps)}) {
    for (const auto& b : C.domain().basis()) {
      CHECK(multiplier_eq(e.on_basis(b), eps.on_basis(b), k.window(0)).status == Status::proven);
    }
  }
  auto Z = kfin_z_algebra();
  auto shift = pullback_extension(Z, Z, [](const BasisId& t) { return BasisId{t[0] + 1}; }, "τ");
  auto two = compose_extensions(shift, shift);
  CHECK(validate_extension(two, extension_windows(Z, Z, 2)).ok());
  CHECK(multiplier_eq(two.on_basis(BasisId{3}), iota(Z, d(Z, 1)), Z.window(4)).ok());
}

TEST_CASE("tensor products of extensions") {
  auto C = gallery("kfun_cyclic(2)").algebra;
  auto CC = tensor_algebra(C, C);
  auto id = identity_extension(C);
  auto eps = eps_extension(C);
  auto idid = tensor_extensions(id, id);
  for (const auto& b : CC.domain().basis()) {
    CHECK(multiplier_eq(idid.on_basis(b), iota(CC, CC.basis(b)), CC.window(0)).status == Status::proven);
  }
  auto eid = tensor_extensions(eps, id);
  CHECK(eid.target().same_as(C));
  CHECK(validate_extension(eid, extension_windows(CC, C, 0)).ok());
  for (const auto& b : CC.domain().basis()) {
    const Multiplier expected = b[0] == 0 ? iota(C, C.basis(BasisId{b[1]})) : Multiplier::zero(C);
    CHECK(multiplier_eq(eid.on_basis(b), expected, C.window(0)).status == Status::proven);
  }
  auto ee = tensor_extensions(eps, eps);
  CHECK(ee.target().is_ground());
  CHECK(validate_extension(ee, extension_windows(CC, ee.target(), 0)).ok());
}

TEST_CASE("restriction of modules") {
  auto Z = kfin_z_algebra();
  auto m = ModuleStructure::regular(Z, Side::right);
  auto r = restrict_module(identity_extension(Z), m, Z.window(2), Z.window(4));
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) CHECK(r.act(d(Z, i), d(Z, j)) == m.act(d(Z, i), d(Z, j)));
  }
  CHECK_THROWS_AS(restrict_module(doubling(Z), m, Z.window(2), Z.window(4)), ExtensionRejected);
}

TEST_CASE("presentations round trip on gallery extensions") {
  auto C = gallery("kfun_cyclic(3)");
  CHECK(check_extension_roundtrip(identity_extension(C.algebra), extension_windows(C.algebra, C.algebra, 0)).status ==
        Status::proven);
  CHECK(check_extension_roundtrip(*C.delta, extension_windows(C.algebra, C.delta->target(), 0)).status ==
        Status::proven);
  auto eps = C.counit->as_extension();
  CHECK(check_extension_roundtrip(eps, extension_windows(C.algebra, eps.target(), 0)).status == Status::proven);
  auto Z = gallery("kfin_Z");
  CHECK(check_extension_roundtrip(*Z.delta, extension_windows(Z.algebra, Z.delta->target(), 1)).status ==
        Status::holds_on_window);
}

TEST_CASE("presentations round trip on seeded random extensions") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    auto f = random_extension(seed);
    auto w = extension_windows(f.source(), f.target(), 0);
    CHECK(validate_extension(f, w).ok());
    CHECK(check_extension_roundtrip(f, w).status == Status::proven);
  }
}
