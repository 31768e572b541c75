#include <doctest.h>

#include <random>

#include "mulhopf/gallery.hpp"

using namespace mulhopf;

namespace {

const Field Q = Field::rationals();

Verdict bijective(const MultiplierBialgebra& h, bool first, int r, int expanded) {
  const Algebra& A2 = h.tensor2();
  LinearRule t = [&h, &A2, first](const BasisId& id) { return first ? t1(h, A2.basis(id)) : t2(h, A2.basis(id)); };
  return check_bijective(A2.domain(), A2.field(), t, A2.window(r), A2.window(expanded));
}

// S(e_i) + c·ι(e_j) at one basis element.
ConvolutionElement perturbed(const ConvolutionElement& s, BasisId at, Element shift, std::string name) {
  const Algebra a = s.algebra();
  return ConvolutionElement(
      a,
      [s, a, at, shift](const BasisId& id) { return id == at ? s.on_basis(id) + iota(a, shift) : s.on_basis(id); },
      std::move(name));
}

bool antipode_ok(const MultiplierBialgebra& h, const ConvolutionElement& s, const Window& w) {
  return check_antipode(h, s, w).ok();
}

}  // namespace

TEST_CASE("T maps on the gallery") {
  auto c = bialgebra_of(gallery("kfun_cyclic(3)"));
  CHECK(bijective(c, true, 0, 0).status == Status::proven);
  CHECK(bijective(c, false, 0, 0).status == Status::proven);

  auto z = bialgebra_of(gallery("kfin_Z"), BialgebraOptions{2, 2, 0});
  CHECK(bijective(z, true, 2, 4).status == Status::holds_on_window);
  CHECK(bijective(z, false, 2, 4).status == Status::holds_on_window);

  // Δ̃(δ_0)(1⊗δ_1) = 0 on K(N) since 0 - 1 is not a point.
  auto n = bialgebra_of(gallery("kfin_N"), BialgebraOptions{2, 2, 0});
  auto v = bijective(n, true, 2, 4);
  REQUIRE(v.status == Status::failed);
  CHECK(v.witness.size() == 1);
  CHECK(t1(n, tensor(n.algebra().basis(BasisId{0}), n.algebra().basis(BasisId{1}))).is_zero());

  auto p = bialgebra_of(gallery("kfun_cyclic_proj(3)"));
  // Δ̃(f)(x, y) = f(x): T1 is the identity and T2 lands in A⊗1.
  CHECK(bijective(p, true, 0, 0).status == Status::proven);
  auto t2v = bijective(p, false, 0, 0);
  REQUIRE(t2v.status == Status::failed);
  CHECK(t2v.detail.find("no preimage") != std::string::npos);

  auto zp = bialgebra_of(gallery("kfin_Z_proj"), BialgebraOptions{2, 2, 0});
  CHECK_THROWS_AS(bijective(zp, false, 2, 4), SliceUndefined);
}

TEST_CASE("antipode synthesis") {
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    auto h = bialgebra_of(gallery("kfun_cyclic(" + std::to_string(n) + ")"));
    auto s = synthesize_antipode(h, h.window());
    REQUIRE(s.s.has_value());
    const Algebra& A = h.algebra();
    for (int x = 0; x < n; ++x) {
      const auto& form = s.iota_form.at(BasisId{x});
      REQUIRE(form.has_value());
      CHECK(*form == A.basis(BasisId{(n - x) % n}));
    }
    CHECK(check_antipode(h, *s.s, h.window()).ok());
  }
  auto z = bialgebra_of(gallery("kfin_Z"), BialgebraOptions{3, 2, 0});
  auto s = synthesize_antipode(z, z.window());
  REQUIRE(s.s.has_value());
  for (int n = -3; n <= 3; ++n) {
    const auto& form = s.iota_form.at(BasisId{n});
    REQUIRE(form.has_value());
    CHECK(*form == z.algebra().basis(BasisId{-n}));
  }
}

TEST_CASE("wrong antipodes fail") {
  auto e = gallery("kfun_cyclic(3)");
  auto h = bialgebra_of(e);
  const Window w = h.window();
  CHECK(check_antipode(h, *e.antipode, w).ok());
  CHECK(check_convolution_inverse(h, *e.antipode, w, w).ok());

  auto swapped = point_antipode(e.algebra, [](const BasisId& x) { return x; });
  auto sv = check_antipode(h, swapped, w);
  CHECK(sv.left.status == Status::failed);
  CHECK(sv.right.status == Status::failed);
  CHECK(check_convolution_inverse(h, swapped, w, w).status == Status::failed);

  auto zero = ConvolutionElement::zero(e.algebra);
  CHECK_FALSE(check_antipode(h, zero, w).ok());
  CHECK(check_convolution_inverse(h, zero, w, w).status == Status::failed);
}

TEST_CASE("antipode and convolution inverse agree") {
  std::mt19937_64 rng(7);
  for (std::string name : {"kfun_cyclic(3)", "kfin_Z"}) {
    CAPTURE(name);
    auto e = gallery(name);
    auto h = bialgebra_of(e, BialgebraOptions{2, 2, 0});
    const Window w = e.algebra.is_finite() ? h.window() : e.algebra.window(1);
    const Window probes = e.algebra.is_finite() ? h.window() : e.algebra.window(2);
    std::vector<ConvolutionElement> candidates = {*e.antipode, ConvolutionElement::zero(e.algebra),
                                                  ConvolutionElement::iota_map(e.algebra)};
    for (int i = 0; i < 10; ++i) {
      const BasisId at = w.ids[rng() % w.ids.size()];
      const BasisId to = w.ids[rng() % w.ids.size()];
      const Scalar c(Q, static_cast<std::int64_t>(rng() % 5) - 2);
      candidates.push_back(perturbed(*e.antipode, at, c * e.algebra.basis(to), "S'"));
    }
    for (const auto& s : candidates) {
      CHECK(antipode_ok(h, s, w) == check_convolution_inverse(h, s, w, probes).ok());
    }
  }
}

TEST_CASE("convolution identities on seeded probes") {
  std::mt19937_64 rng(11);
  for (std::string name : {"kfun_cyclic(3)", "kfin_Z"}) {
    CAPTURE(name);
    auto e = gallery(name);
    auto h = bialgebra_of(e, BialgebraOptions{1, 2, 0});
    const Algebra& A = e.algebra;
    const Window w = h.window();
    const Window probes = A.is_finite() ? w : A.window(1);
    const std::vector<ConvolutionElement> maps = {ConvolutionElement::iota_map(A), *e.antipode};
    auto pick = [&] { return A.basis(w.ids[rng() % w.ids.size()]); };
    for (int i = 0; i < 6; ++i) {
      const auto& f = maps[rng() % 2];
      const auto& g = maps[rng() % 2];
      const auto& k = maps[rng() % 2];
      const Element a = pick(), b = pick(), c = pick();
      CHECK(check_mixed_associativity(h, f, g, k, a, b, w, probes).ok());
      CHECK(check_convolution_unitality(h, f, b, c, w, probes).ok());
    }
    CHECK(check_convolution_nondegenerate(h, w, probes).ok());
  }
}

TEST_CASE("convolution products of point maps") {
  auto e = gallery("kfun_cyclic(3)");
  auto h = bialgebra_of(e);
  const Algebra& A = e.algebra;
  const Window w = h.window();
  const auto io = ConvolutionElement::iota_map(A);
  for (const auto& b : w.ids) {
    // S ∗^b ι = α_b.
    CHECK(conv_eq(conv_right(h, *e.antipode, io, A.basis(b)), conv_alpha(h, A.basis(b)), w, w).status ==
          Status::proven);
    CHECK(conv_eq(conv_left(h, io, *e.antipode, A.basis(b)), conv_alpha(h, A.basis(b)), w, w).status ==
          Status::proven);
  }
  // (b⇀ι↼b')(a) = ι(bab').
  auto harp = conv_harpoon(io, A.basis(BasisId{1}), A.basis(BasisId{1}));
  CHECK(multiplier_eq(harp.on_basis(BasisId{1}), iota(A, A.basis(BasisId{1})), w).status == Status::proven);
  CHECK(multiplier_eq(harp.on_basis(BasisId{2}), Multiplier::zero(A), w).status == Status::proven);
}
