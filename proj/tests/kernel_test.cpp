#include <doctest.h>

#include <random>

#include <limits>

#include "mulhopf/errors.hpp"
#include "mulhopf/linalg.hpp"

using namespace mulhopf;

namespace {

const Field Q = Field::rationals();

Vector vec(const Field& f, std::vector<std::int64_t> xs) {
  Accumulator<std::size_t> acc(f);
  for (std::size_t i = 0; i < xs.size(); ++i) acc.add(i, Scalar(f, xs[i]));
  return acc.finish();
}

SparseMatrix mat(const Field& f, std::vector<std::vector<std::int64_t>> rows) {
  std::vector<std::vector<Scalar>> s;
  for (const auto& r : rows) {
    std::vector<Scalar> row;
    for (auto x : r) row.emplace_back(f, x);
    s.push_back(row);
  }
  return SparseMatrix::from_rows(f, rows.empty() ? 0 : rows[0].size(), s);
}

}  // namespace

TEST_CASE("scalar arithmetic is exact") {
  const Scalar third(Q, 1, 3);
  CHECK((third + third + third).is_one());
  CHECK(Scalar(Q, 2, 4) == Scalar(Q, 1, 2));
  CHECK(Scalar(Q, -3, -6).to_string() == "1/2");
  CHECK(Scalar::parse(Q, "-7/21").to_string() == "-1/3");
  const Field f7 = Field::prime(7);
  CHECK(Scalar(f7, 3).inverse() == Scalar(f7, 5));
  CHECK(Scalar(f7, 1, 2) == Scalar(f7, 4));
  CHECK(Scalar(f7, -1).to_string() == "6");
  CHECK_THROWS_AS(Field::prime(9), InputError);
  CHECK_THROWS_AS(Scalar::parse(Q, "1/0"), InputError);
  CHECK_THROWS(Scalar(Q, 0).inverse());
  CHECK_THROWS_AS(Scalar(Q, 1) + Scalar(f7, 1), InputError);
}

TEST_CASE("scalar overflow promotes to big rationals") {
  Scalar x(Q, std::int64_t{1} << 62);
  Scalar y = x * x * x;  // 2^186
  Scalar z = y / x / x;
  CHECK(z == x);
  CHECK((y - y).is_zero());
  Scalar big(Q, std::numeric_limits<std::int64_t>::max());
  CHECK(((big + big) - big) == big);
  CHECK((Scalar(Q, 1, std::numeric_limits<std::int64_t>::max()) * Scalar(Q, 1, 3)).inverse() ==
        big * Scalar(Q, 3));
}

TEST_CASE("field axioms on seeded samples") {
  for (const Field f : {Q, Field::prime(101)}) {
    std::mt19937_64 rng(7);
    auto draw = [&] {
      const auto n = static_cast<std::int64_t>(rng() % 2001) - 1000;
      const auto d = static_cast<std::int64_t>(rng() % 50) + 1;
      return f.kind() == FieldKind::prime ? Scalar(f, n) : Scalar(f, n, d);
    };
    for (int i = 0; i < 300; ++i) {
      const Scalar a = draw(), b = draw(), c = draw();
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK((a + (-a)).is_zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }
}

TEST_CASE("sparse vectors are canonical") {
  Accumulator<std::size_t> acc(Q);
  acc.add(2, Scalar(Q, 1));
  acc.add(0, Scalar(Q, 3));
  acc.add(2, Scalar(Q, -1));
  const Vector v = acc.finish();
  CHECK(v.size() == 1);
  CHECK(v == vec(Q, {3}));
  CHECK(v.coeff(2).is_zero());
}

TEST_CASE("solve_linear") {
  SUBCASE("identity") {
    auto x = solve_linear(mat(Q, {{1, 0}, {0, 1}}), vec(Q, {3, 5}));
    REQUIRE(x);
    CHECK(*x == vec(Q, {3, 5}));
  }
  SUBCASE("underdetermined homogeneous") {
    const auto m = mat(Q, {{1, 1}});
    auto x = solve_linear(m, Vector(Q));
    REQUIRE(x);
    CHECK(m.apply(*x).is_zero());
  }
  SUBCASE("inconsistent") { CHECK_FALSE(solve_linear(mat(Q, {{1}, {1}}), vec(Q, {1, 2}))); }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(solve_linear(mat(Q, {{1}}), vec(Q, {1, 2})), InputError); }
  SUBCASE("seeded substitution") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      std::vector<std::vector<std::int64_t>> rows(3, std::vector<std::int64_t>(4));
      for (auto& r : rows) {
        for (auto& x : r) x = static_cast<std::int64_t>(rng() % 5) - 2;
      }
      const auto m = mat(Q, rows);
      const Vector b = m.apply(vec(Q, {1, -1, 2, 0}));
      auto x = solve_linear(m, b);
      REQUIRE(x);
      CHECK(m.apply(*x) == b);
    }
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(mat(Q, {{1, 0}, {0, 1}})).empty());
  auto z = kernel_basis(SparseMatrix(Q, 1, 1));
  REQUIRE(z.size() == 1);
  CHECK(z[0] == vec(Q, {1}));
  // [[1,1],[2,2]]: (1,-1) by hand.
  auto k = kernel_basis(mat(Q, {{1, 1}, {2, 2}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0].coeff(0) == -k[0].coeff(1));
  CHECK_FALSE(k[0].is_zero());
  SUBCASE("seeded kernels annihilate and are independent") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
      std::vector<std::vector<std::int64_t>> rows(2, std::vector<std::int64_t>(5));
      for (auto& r : rows) {
        for (auto& x : r) x = static_cast<std::int64_t>(rng() % 3) - 1;
      }
      const auto m = mat(Q, rows);
      const auto ker = kernel_basis(m);
      CHECK(ker.size() + rank(m) == 5);
      for (const auto& v : ker) CHECK(m.apply(v).is_zero());
      if (!ker.empty()) CHECK(rank(SparseMatrix(Q, 5, ker)) == ker.size());
    }
  }
}

TEST_CASE("SpanSolver expresses targets in inserted columns") {
  SpanSolver<std::size_t> s(Q);
  s.add(vec(Q, {1, 1, 0}));
  s.add(vec(Q, {0, 1, 1}));
  s.add(vec(Q, {1, 2, 1}));
  CHECK(s.rank() == 2);
  REQUIRE(s.dependencies().size() == 1);
  auto x = s.express(vec(Q, {1, 0, -1}));
  REQUIRE(x);
  CHECK(x->coeff(0) + x->coeff(2) == Scalar(Q, 1));
  CHECK(x->coeff(1) + x->coeff(2) == Scalar(Q, -1));
  CHECK_FALSE(s.express(vec(Q, {1, 0, 0})));
}
