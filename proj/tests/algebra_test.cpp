#include <doctest.h>

#include "mulhopf/gallery.hpp"
#include "mulhopf/random.hpp"

using namespace mulhopf;

namespace {

const Field Q = Field::rationals();

Algebra k2() { return gallery("kfun_cyclic(2)").algebra; }

Element d(const Algebra& a, int n) { return a.basis(BasisId{n}); }

// d0·d0 = d1, every other product 0; optionally d1·d0 = d0.
Algebra nilpotent(bool perturbed) {
  Algebra::Spec s;
  s.name = perturbed ? "nil2_perturbed" : "nil2";
  s.field = Q;
  s.domain = BasisDomain::finite(s.name, {"d0", "d1"});
  s.mul = [perturbed](const BasisId& a, const BasisId& b) {
    if (a[0] == 0 && b[0] == 0) return Element::unit(Q, BasisId{1});
    if (perturbed && a[0] == 1 && b[0] == 0) return Element::unit(Q, BasisId{0});
    return Element(Q);
  };
  return Algebra(std::move(s));
}

ModuleStructure zero_module(const Algebra& a) {
  ModuleStructure::Spec s;
  s.name = "k_0";
  s.algebra = a;
  s.carrier = BasisDomain::point();
  s.side = Side::right;
  s.act = [f = a.field()](const BasisId&, const BasisId&) { return Element(f); };
  return ModuleStructure(std::move(s));
}

}  // namespace

TEST_CASE("element products") {
  const Algebra a = k2();
  CHECK(a.mul(d(a, 0), d(a, 0)) == d(a, 0));
  CHECK(a.mul(d(a, 0), d(a, 1)).is_zero());
  const Algebra z = kfin_z_algebra();
  CHECK(z.mul(d(z, 3), d(z, 3)) == d(z, 3));
  CHECK(z.mul(d(z, 3), d(z, 4)).is_zero());
  CHECK_THROWS_AS(a.mul(d(a, 0), Element::unit(Q, BasisId{7})), InputError);
}

TEST_CASE("associativity") {
  CHECK(check_associativity(k2(), k2().window(0)).status == Status::proven);
  const Algebra z = kfin_z_algebra();
  CHECK(check_associativity(z, z.window(3)).status == Status::holds_on_window);
  const Algebra n = nilpotent(false);
  CHECK(check_associativity(n, n.window(0)).status == Status::proven);
  const Algebra p = nilpotent(true);
  auto v = check_associativity(p, p.window(0));
  REQUIRE(v.status == Status::failed);
  REQUIRE(v.witness.size() == 3);
  for (const auto& w : v.witness) CHECK(w == d(p, 0));
  // (d0d0)d0 = d1d0 = d0 but d0(d0d0) = d0d1 = 0.
  CHECK(p.mul(p.mul(v.witness[0], v.witness[1]), v.witness[2]) !=
        p.mul(v.witness[0], p.mul(v.witness[1], v.witness[2])));
  CHECK_THROWS_AS(check_associativity(z, Window{}), InputError);
}

TEST_CASE("idempotency") {
  auto r = check_idempotent(k2(), k2().window(0));
  CHECK(r.verdict.status == Status::proven);
  REQUIRE(r.decompositions.count(BasisId{0}));
  Element sum(Q);
  const Algebra a = k2();
  for (const auto& fp : r.decompositions.at(BasisId{0})) sum += a.mul(fp.first, fp.second);
  CHECK(sum == d(a, 0));
  const Algebra z1 = gallery("zero1").algebra;
  auto zr = check_idempotent(z1, z1.window(0));
  REQUIRE(zr.verdict.status == Status::failed);
  CHECK(zr.verdict.witness.at(0) == z1.basis(BasisId{0}));
  const Algebra z = kfin_z_algebra();
  CHECK(check_idempotent(z, z.window(3)).verdict.status == Status::holds_on_window);
}

TEST_CASE("non-degeneracy") {
  CHECK(check_nondegenerate(k2(), k2().window(0)).status == Status::proven);
  const Algebra z = kfin_z_algebra();
  CHECK(check_nondegenerate(z, z.window(3)).status == Status::holds_on_window);
  const Algebra row = gallery("rowalg2").algebra;
  auto v = check_nondegenerate(row, row.window(0));
  REQUIRE(v.status == Status::failed);
  REQUIRE(v.witness.size() == 1);
  // x = [[0,1],[0,0]] kills every y = [[a,b],[0,0]] from the left.
  const Element x = v.witness[0];
  CHECK(x == row.basis(BasisId{1}));
  for (const auto& id : row.domain().basis()) CHECK(row.mul(x, row.basis(id)).is_zero());
  // Unital finite algebras without a stored unit are checked by kernels.
  auto inst = random_instance(3);
  CHECK(check_nondegenerate(inst.algebra, inst.algebra.window(0)).status == Status::proven);
}

TEST_CASE("local units") {
  const Algebra a = k2();
  auto w = local_units_witness(a, {d(a, 0) + d(a, 1)}, a.window(0));
  REQUIRE(w);
  CHECK(w->at(0) == d(a, 0) + d(a, 1));
  const Algebra z = kfin_z_algebra();
  const Element p = d(z, 2) + d(z, 5);
  auto wz = local_units_witness(z, {p}, z.window(5));
  REQUIRE(wz);
  CHECK(z.mul(p, wz->at(0)) == p);
  CHECK(z.mul(wz->at(0), p) == p);
  const Algebra z1 = gallery("zero1").algebra;
  CHECK_FALSE(local_units_witness(z1, {z1.basis(BasisId{0})}, z1.window(0)));
  const Algebra m = gallery("matfin").algebra;
  const Element e = m.basis(BasisId{1, -2}) + m.basis(BasisId{0, 0});
  auto wm = local_units_witness(m, {e}, m.window(2));
  REQUIRE(wm);
  CHECK(m.mul(e, wm->at(0)) == e);
  CHECK(m.mul(wm->at(0), e) == e);
}

TEST_CASE("tensor algebras") {
  const Algebra a = k2();
  const Algebra aa = tensor_algebra(a, a);
  const Element x = tensor(d(a, 0), d(a, 1));
  CHECK(aa.mul(x, x) == x);
  CHECK(aa.mul(x, tensor(d(a, 1), d(a, 1))).is_zero());
  const Algebra z = kfin_z_algebra();
  const Algebra zz = tensor_algebra(z, z);
  const Element y = tensor(d(z, 1), d(z, 2));
  CHECK(zz.mul(y, y) == y);
  CHECK(zz.format(y) == "1*(d[1],d[2])");
  CHECK(tensor_algebra(Algebra::ground(Q), a).same_as(a));
}

TEST_CASE("parse and format round trip") {
  const Algebra z = kfin_z_algebra();
  for (const char* text : {"1*d[0]", "-1/2*d[-3] + 4*d[7]", "0"}) {
    const Element x = z.parse(text);
    CHECK(z.parse(z.format(x)) == x);
  }
  const Algebra zz = tensor_algebra(z, z);
  const Element t = zz.parse("2*(d[1],d[-1]) - (d[0],d[0])");
  CHECK(t.size() == 2);
  CHECK(zz.parse(zz.format(t)) == t);
  CHECK_THROWS_AS(z.parse("d[x]"), InputError);
}

TEST_CASE("module checks") {
  const Algebra a = k2();
  auto reg = check_module(ModuleStructure::regular(a, Side::right), a.window(0), a.window(0));
  CHECK(reg.associative.status == Status::proven);
  CHECK(reg.idempotent.status == Status::proven);
  CHECK(reg.nondegenerate.status == Status::proven);
  auto zero = check_module(zero_module(a), BasisDomain::point().window(0), a.window(0));
  CHECK(zero.idempotent.status == Status::failed);
  const Algebra z = kfin_z_algebra();
  auto rz = check_module(ModuleStructure::regular(z, Side::right), z.window(2), z.window(2));
  CHECK(rz.associative.status == Status::holds_on_window);
  CHECK(rz.idempotent.status == Status::holds_on_window);
  CHECK(rz.nondegenerate.status == Status::holds_on_window);
}

TEST_CASE("tensor modules") {
  const Algebra a = k2();
  const auto m = ModuleStructure::regular(a, Side::right);
  const auto mm = tensor_module(m, m);
  const Algebra aa = tensor_algebra(a, a);
  auto r = check_module(mm, mm.window(0), aa.window(0));
  CHECK(r.ok());
  CHECK(r.nondegenerate.status == Status::proven);
  const Algebra z = kfin_z_algebra();
  const auto mz = ModuleStructure::regular(z, Side::right);
  const auto zz = tensor_module(mz, mz);
  CHECK(check_module_nondegenerate(zz, zz.window(1), tensor_algebra(z, z).window(1)).status ==
        Status::holds_on_window);
  const auto bad = tensor_module(zero_module(a), m);
  CHECK(check_module_nondegenerate(bad, bad.window(0), aa.window(0)).status == Status::failed);
  CHECK_THROWS_AS(tensor_module(m, ModuleStructure::regular(a, Side::left)), InputError);
}

TEST_CASE("tensor modules of seeded random instances stay non-degenerate") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    auto x = random_instance(seed), y = random_instance(seed + 1000);
    const Algebra ab = tensor_algebra(x.algebra, y.algebra);
    for (const auto& m : x.modules) {
      for (const auto& n : y.modules) {
        REQUIRE(check_module(m, m.window(0), x.algebra.window(0)).ok());
        const auto mn = tensor_module(m, n);
        CHECK(check_module_nondegenerate(mn, mn.window(0), ab.window(0)).status == Status::proven);
      }
    }
  }
}
