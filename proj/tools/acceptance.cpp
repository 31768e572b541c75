// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mulhopf/gallery.hpp"
#include "mulhopf/parallel.hpp"
#include "mulhopf/pipeline.hpp"
#include "mulhopf/random.hpp"

using namespace mulhopf;

namespace {

const Field Q = Field::rationals();

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string cyclic(int n) { return "kfun_cyclic(" + std::to_string(n) + ")"; }

Report run_entry(const std::string& command, const GalleryEntry& e, RunOptions o = {}) {
  return run(command, SpecFile{e, std::nullopt, std::nullopt}, "gallery:" + e.name, "gallery:" + e.name, o);
}

Report run_gallery(const std::string& command, const std::string& name, RunOptions o = {}) {
  return run_entry(command, gallery(name), o);
}

const ReportEntry* find(const Report& r, const std::string& axiom) {
  for (const auto& e : r.entries) {
    if (e.axiom == axiom) return &e;
  }
  return nullptr;
}

bool clean(const Report& r) {
  for (const auto& e : r.entries) {
    if (e.status == EntryStatus::failed || e.status == EntryStatus::window_insufficient) return false;
  }
  return true;
}

std::string iota_string(const Algebra& a, const BasisId& id) { return "ι(" + a.format(a.basis(id)) + ")"; }

// Expected tables ε(e_x) = [x = 0] and S(e_x) = ι(e_{-x}) with -x taken mod n when n > 0.
void check_tables(Outcome& out, const Report& r, const Algebra& a, const std::vector<BasisId>& ids, int n) {
  out.require(r.counit_table.size() == ids.size(), "counit table has " + std::to_string(r.counit_table.size()) +
                                                       " entries, expected " + std::to_string(ids.size()));
  out.require(r.antipode_table.size() == ids.size(), "antipode table has " + std::to_string(r.antipode_table.size()) +
                                                         " entries, expected " + std::to_string(ids.size()));
  if (!out.pass) return;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int x = ids[i][0];
    const BasisId inv{n > 0 ? (n - x) % n : -x};
    const std::string sym = a.domain().format(ids[i]);
    out.require(r.counit_table[i].first == sym && r.counit_table[i].second == (x == 0 ? "1" : "0"),
                "ε(" + sym + ") = " + r.counit_table[i].second);
    out.require(r.antipode_table[i].first == sym && r.antipode_table[i].second == iota_string(a, inv),
                "S(" + sym + ") = " + r.antipode_table[i].second);
  }
}

std::vector<Element> parse_witness(const Algebra& a, const ReportEntry& e) {
  std::vector<Element> out;
  for (const auto& w : e.witness) out.push_back(a.parse(w));
  return out;
}

// Sliced coassociativity sides for (a, b, c), recomputed from slices.
std::pair<Element, Element> coassoc_sides(const MultiplierBialgebra& h, const Element& a, const Element& b,
                                          const Element& c) {
  const Algebra& A = h.algebra();
  const std::size_t w = A.domain().width();
  Element lhs(A.field()), rhs(A.field());
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

// S(a_(1,b))▷a_(2,b) and ε(a)b.
std::pair<Element, Element> antipode_sides(const MultiplierBialgebra& h, const ConvolutionElement& s,
                                           const Element& a, const Element& b) {
  const Algebra& A = h.algebra();
  Element lhs(A.field());
  for (const auto& [id, coeff] : sweedler_slice(h, a, b, Side::right)) {
    auto [u, v] = split_id(id, A.domain().width());
    lhs += coeff * s.on_basis(u).left(A.basis(v));
  }
  return {lhs, h.require_counit()(a) * b};
}

std::vector<std::string> bialgebra_bundles() {
  std::vector<std::string> out;
  for (int n = 2; n <= 6; ++n) out.push_back(cyclic(n));
  out.push_back("kfin_Z");
  out.push_back("kfin_N");
  return out;
}

// --- criteria ---------------------------------------------------------------

Outcome unital_collapse() {
  Outcome out;
  for (int n = 2; n <= 6; ++n) {
    const auto start = std::chrono::steady_clock::now();
    MultiplierSpace m(gallery(cyclic(n)).algebra);
    const bool spanned = m.spanned_by_iota();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(m.dimension() == static_cast<std::size_t>(n),
                "n = " + std::to_string(n) + ": dim M(A) = " + std::to_string(m.dimension()));
    out.require(spanned, "n = " + std::to_string(n) + ": ι(A) is a proper subspace");
    out.require(s < 1.0, "n = " + std::to_string(n) + " took " + std::to_string(s) + " s");
  }
  if (out.pass) out.detail = "dim M(K(Z/n)) = n and M(A) = ι(A) for n = 2..6";
  return out;
}

Outcome finite_classification() {
  Outcome out;
  for (int n = 2; n <= 6; ++n) {
    const auto r = run_gallery("classify", cyclic(n));
    out.require(exit_code(r) == 0, cyclic(n) + ": exit " + std::to_string(exit_code(r)));
    out.require(r.classification == "multiplier Hopf algebra (proven; finite)",
                cyclic(n) + ": " + r.classification.value_or("no classification"));
    const Algebra a = gallery(cyclic(n)).algebra;
    check_tables(out, r, a, a.domain().basis(), n);
  }
  if (out.pass) out.detail = "n = 2..6 proven, ε(d_k) = [k=0], S(d_k) = ι(d_{n-k})";
  return out;
}

Outcome flagship() {
  Outcome out;
  set_default_jobs(1);
  RunOptions o;
  o.window = 8;
  o.expansion = 2;
  const auto r = run_gallery("classify", "kfin_Z", o);
  out.require(exit_code(r) == 0, "exit " + std::to_string(exit_code(r)));
  out.require(clean(r), "an entry failed or was window-insufficient");
  out.require(r.classification == "multiplier Hopf algebra (holds_on_window 8)",
              r.classification.value_or("no classification"));
  const auto* coass = find(r, "bialgebra.coassociativity");
  out.require(coass && coass->status == EntryStatus::holds_on_window && coass->window.find("(17)") != std::string::npos,
              "coassociativity did not run on the 17-element window");
  for (const char* axiom : {"bialgebra.counit", "hopf.T1", "hopf.T2", "hopf.antipode_left", "hopf.antipode_right"}) {
    const auto* e = find(r, axiom);
    out.require(e && e->status == EntryStatus::holds_on_window, std::string(axiom) + " missing or not on window");
  }
  const Algebra a = gallery("kfin_Z").algebra;
  check_tables(out, r, a, a.window(8).ids, 0);
  if (out.pass) out.detail = "17^3 coassociativity triples, T1/T2 bijective, ε and S tables for |n| <= 8";
  return out;
}

Outcome negative_controls() {
  Outcome out;
  {
    const auto r = run_gallery("check-algebra", "rowalg2");
    const auto* e = find(r, "algebra.nondegenerate");
    out.require(exit_code(r) == 1 && e && e->status == EntryStatus::failed, "rowalg2: non-degeneracy did not fail");
    if (out.pass) {
      const Algebra a = gallery("rowalg2").algebra;
      const auto w = parse_witness(a, *e);
      out.require(w.size() == 1 && a.format(w[0]) == "1*r1", "rowalg2: unexpected witness");
      bool left_zero = true;
      for (const auto& b : a.domain().basis()) left_zero = left_zero && a.mul(w[0], a.basis(b)).is_zero();
      out.require(left_zero, "rowalg2: witness does not annihilate A");
    }
  }
  {
    const auto r = run_gallery("check-algebra", "zero1");
    const auto* e = find(r, "algebra.idempotent");
    out.require(exit_code(r) == 1 && e && e->status == EntryStatus::failed, "zero1: idempotency did not fail");
    if (out.pass) {
      const Algebra a = gallery("zero1").algebra;
      const auto w = parse_witness(a, *e);
      bool all_zero = true;
      for (const auto& x : a.domain().basis()) {
        for (const auto& y : a.domain().basis()) all_zero = all_zero && a.mul_basis(x, y).is_zero();
      }
      out.require(w.size() == 1 && !w[0].is_zero() && all_zero, "zero1: witness does not re-verify");
    }
  }
  {
    // Δ̃(f)(x, y) = f(1 - x) on K(Z/2).
    GalleryEntry e = gallery(cyclic(2));
    e.name = "kfun_cyclic(2) with perturbed Δ";
    e.delta = function_coproduct(e.algebra, [](const BasisId& x, const BasisId&) { return BasisId{1 - x[0]}; });
    const auto r1 = run_entry("check-bialgebra", e);
    const auto r2 = run_entry("check-bialgebra", e);
    const auto* c = find(r1, "bialgebra.coassociativity");
    out.require(exit_code(r1) == 1 && c && c->status == EntryStatus::failed, "perturbed Δ: coassociativity did not fail");
    if (out.pass) {
      out.require(c->witness == find(r2, "bialgebra.coassociativity")->witness, "perturbed Δ: witness not reproducible");
      const auto w = parse_witness(e.algebra, *c);
      out.require(w.size() == 3, "perturbed Δ: witness is not a triple");
      if (out.pass) {
        MultiplierBialgebra h(e.name, e.algebra, *e.delta, e.counit);
        const auto [lhs, rhs] = coassoc_sides(h, w[0], w[1], w[2]);
        out.require(!(lhs == rhs), "perturbed Δ: witness triple satisfies coassociativity");
      }
    }
  }
  {
    // S(d_x) = ι(d_x) on K(Z/3).
    GalleryEntry e = gallery(cyclic(3));
    e.name = "kfun_cyclic(3) with perturbed S";
    e.antipode = point_antipode(e.algebra, [](const BasisId& x) { return x; });
    const auto r = run_entry("check-hopf", e);
    const auto* left = find(r, "hopf.antipode_left");
    const auto* inv = find(r, "hopf.convolution_inverse");
    out.require(exit_code(r) == 1 && left && left->status == EntryStatus::failed && inv &&
                    inv->status == EntryStatus::failed,
                "perturbed S: antipode and convolution-inverse checks did not both fail");
    if (out.pass) {
      MultiplierBialgebra h = bialgebra_of(e);
      const auto w = parse_witness(e.algebra, *left);
      const auto [lhs, rhs] = antipode_sides(h, *e.antipode, w.at(0), w.at(1));
      out.require(!(lhs == rhs), "perturbed S: antipode witness re-verifies as valid");
      const auto wi = parse_witness(e.algebra, *inv);
      // (S ∗^b ι)(a) = α_b(a) and (ι ∗_a S)(b) = α_a(b), on the witness probe.
      const Element a = wi.at(0), b = wi.at(1), c = wi.at(2);
      const auto io = ConvolutionElement::iota_map(e.algebra);
      const auto v1 = multiplier_eq(conv_right(h, *e.antipode, io, b)(a), conv_alpha(h, b)(a), {c}, "witness", false);
      const auto v2 = multiplier_eq(conv_left(h, io, *e.antipode, a)(b), conv_alpha(h, a)(b), {c}, "witness", false);
      out.require(!(v1.ok() && v2.ok()), "perturbed S: convolution witness re-verifies as valid");
    }
  }
  if (out.pass) out.detail = "rowalg2, zero1, perturbed Δ and perturbed S exit 1 with re-verified witnesses";
  return out;
}

Outcome antipode_agreement() {
  Outcome out;
  std::mt19937_64 rng(2024);
  int compared = 0, perturbed = 0;
  auto agree = [&](const MultiplierBialgebra& h, const ConvolutionElement& s, const Window& w, const Window& probes,
                   const std::string& label) {
    const bool a = check_antipode(h, s, w).ok();
    const bool c = check_convolution_inverse(h, s, w, probes).ok();
    ++compared;
    out.require(a == c, label + ": check_antipode " + (a ? "passes" : "fails") + " but convolution inverse " +
                            (c ? "passes" : "fails"));
  };
  for (const auto& name : bialgebra_bundles()) {
    const GalleryEntry e = gallery(name);
    const MultiplierBialgebra h = bialgebra_of(e, BialgebraOptions{3, 2, 0});
    const Window w = e.algebra.is_finite() ? h.window() : e.algebra.window(2);
    std::vector<ConvolutionElement> candidates = {ConvolutionElement::iota_map(e.algebra),
                                                  ConvolutionElement::zero(e.algebra)};
    if (e.antipode) candidates.push_back(*e.antipode);
    for (const auto& s : candidates) agree(h, s, w, w, name + " " + s.name());
  }
  for (int i = 0; i < 20; ++i) {
    const GalleryEntry e = gallery(i % 2 ? "kfin_Z" : cyclic(3 + i % 4));
    const MultiplierBialgebra h = bialgebra_of(e, BialgebraOptions{3, 2, 0});
    const Window w = e.algebra.is_finite() ? h.window() : e.algebra.window(2);
    // Both points within radius 1 so that the perturbation is visible on pairs of radius 2.
    const Window inner = e.algebra.is_finite() ? w : e.algebra.window(1);
    const BasisId at = inner.ids[rng() % inner.ids.size()];
    const Element shift =
        Scalar(Q, static_cast<std::int64_t>(rng() % 3) + 1) * e.algebra.basis(inner.ids[rng() % inner.ids.size()]);
    const ConvolutionElement base = *e.antipode;
    const Algebra A = e.algebra;
    const ConvolutionElement s(
        A, [base, A, at, shift](const BasisId& id) { return id == at ? base.on_basis(id) + iota(A, shift) : base.on_basis(id); },
        "S'");
    const bool a = check_antipode(h, s, w).ok();
    agree(h, s, w, w, e.name + " perturbed at " + A.domain().format(at));
    out.require(!a, e.name + ": a nonzero perturbation of S passed");
    ++perturbed;
  }
  if (out.pass) {
    out.detail = std::to_string(compared) + " comparisons agree, " + std::to_string(perturbed) + " perturbed S rejected";
  }
  return out;
}

Outcome tensor_nondegeneracy() {
  Outcome out;
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto x = random_instance(seed), y = random_instance(seed + 5000);
    const Algebra xy = tensor_algebra(x.algebra, y.algebra);
    for (const auto& m : x.modules) {
      for (const auto& n : y.modules) {
        const auto mn = tensor_module(m, n);
        const Verdict v = check_module_nondegenerate(mn, mn.window(0), xy.window(0));
        ++checked;
        out.require(v.status == Status::proven, "seed " + std::to_string(seed) + ": " + v.detail);
      }
    }
  }
  if (out.pass) out.detail = std::to_string(checked) + " tensor modules over 50 seeded pairs are non-degenerate";
  return out;
}

Outcome extension_roundtrip() {
  Outcome out;
  int checked = 0;
  auto check = [&](const Extension& f, int radius, const std::string& label) {
    const auto w = extension_windows(f.source(), f.target(), radius);
    const Verdict v = check_extension_roundtrip(f, w);
    ++checked;
    out.require(v.ok(), label + ": " + v.detail);
  };
  for (const auto& name : bialgebra_bundles()) {
    const GalleryEntry e = gallery(name);
    const int r = e.algebra.is_finite() ? 0 : 1;
    check(identity_extension(e.algebra), r, name + " identity");
    check(*e.delta, r, name + " Δ");
    if (e.counit) check(e.counit->as_extension(), r, name + " ε");
  }
  check(identity_extension(gallery("matfin").algebra), 1, "matfin identity");
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    check(random_extension(seed), 0, "random extension " + std::to_string(seed));
  }
  if (out.pass) out.detail = std::to_string(checked) + " extensions round trip; lift is unital and extends f̃";
  return out;
}

Outcome convolution_identities() {
  Outcome out;
  int probes_run = 0;
  for (const auto& name : bialgebra_bundles()) {
    const GalleryEntry e = gallery(name);
    const MultiplierBialgebra h = bialgebra_of(e, BialgebraOptions{1, 2, 0});
    const Algebra& A = e.algebra;
    const Window w = h.window();
    const Window probes = A.is_finite() ? w : A.window(1);
    std::vector<ConvolutionElement> maps = {ConvolutionElement::iota_map(A)};
    if (e.antipode) maps.push_back(*e.antipode);
    std::mt19937_64 rng(fnv1a64(name));
    auto pick = [&] { return A.basis(w.ids[rng() % w.ids.size()]); };
    for (int i = 0; i < 100 && out.pass; ++i) {
      const auto& f = maps[rng() % maps.size()];
      const auto& g = maps[rng() % maps.size()];
      const auto& k = maps[rng() % maps.size()];
      const Element a = pick(), b = pick(), c = pick();
      const Verdict m = check_mixed_associativity(h, f, g, k, a, b, w, probes);
      const Verdict u = check_convolution_unitality(h, f, b, c, w, probes);
      out.require(m.ok(), name + " mixed associativity: " + m.detail);
      out.require(u.ok(), name + " unitality: " + u.detail);
      ++probes_run;
    }
  }
  if (out.pass) out.detail = std::to_string(probes_run) + " probes of mixed associativity and unitality";
  return out;
}

Outcome monoidal_instances() {
  Outcome out;
  // (A⊗A)^{⊗3} has n^6 basis elements; K(Z/6) alone would exceed the budget.
  for (const auto& name : {cyclic(2), cyclic(3), cyclic(4), cyclic(5), std::string("kfin_Z"), std::string("kfin_N")}) {
    const MultiplierBialgebra h = bialgebra_of(gallery(name), BialgebraOptions{2, 2, 0});
    std::vector<ModuleStructure> mods;
    for (Side side : {Side::right, Side::left}) {
      const auto a = ModuleStructure::regular(h.algebra(), side);
      mods.push_back(a);
      mods.push_back(tensor_module_action(h, a, a));
    }
    for (const auto& nv : check_monoidal_instance(h, mods, MonoidalOptions{1, 1})) {
      out.require(nv.verdict.ok(), name + " " + nv.name + ": " + nv.verdict.detail);
    }
  }
  const MultiplierBialgebra h = bialgebra_of(gallery(cyclic(2)));
  const MultiplierBialgebra doubled = h.with_counit(h.require_counit().scaled(Scalar(Q, 2)), true);
  const auto a = ModuleStructure::regular(h.algebra(), Side::right);
  bool broken = false;
  for (const auto& nv : check_monoidal_instance(doubled, {a}, MonoidalOptions{0, 0})) {
    if (nv.name.starts_with("l_M")) broken = nv.verdict.status == Status::failed && !nv.verdict.witness.empty();
  }
  out.require(broken, "2ε did not break l_M with a witness");
  if (out.pass) out.detail = "associator and unit constraints on {A, A⊗A}; 2ε breaks l_M";
  return out;
}

std::string full_suite_json() {
  std::string all;
  const std::vector<std::string> inputs = {cyclic(2), cyclic(3), "kfin_Z", "kfin_N", "rowalg2", "zero1", "kfun2_nand"};
  RunOptions o;
  o.window = 2;
  o.seed = 7;
  for (const auto& command : commands()) {
    for (const auto& name : inputs) {
      try {
        all += to_json(run_gallery(command, name, o)) + "\n";
      } catch (const InputError& e) {
        all += std::string("input error: ") + e.what() + "\n";
      }
    }
  }
  return all;
}

Outcome determinism() {
  Outcome out;
  set_default_jobs(1);
  const std::string first = full_suite_json();
  set_default_jobs(4);
  const std::string second = full_suite_json();
  set_default_jobs(1);
  out.require(first == second, "reports differ between runs");
  if (out.pass) out.detail = std::to_string(first.size()) + " bytes of JSON identical across runs (1 and 4 jobs)";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "unital collapse", 1.0, unital_collapse},
      {2, "finite classification", 5.0, finite_classification},
      {3, "K(Z) classification at window 8", 60.0, flagship},
      {4, "negative controls", 30.0, negative_controls},
      {5, "antipode vs convolution inverse", 30.0, antipode_agreement},
      {6, "tensor module non-degeneracy", 30.0, tensor_nondegeneracy},
      {7, "extension round trip", 30.0, extension_roundtrip},
      {8, "convolution identities", 30.0, convolution_identities},
      {9, "monoidal instances", 30.0, monoidal_instances},
      {10, "determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && s >= c.limit_s && o.pass) {
      o.pass = false;
      o.detail = "exceeded " + std::to_string(c.limit_s) + " s";
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << s
         << " s";
    if (c.limit_s > 0) line << " < " << c.limit_s << " s";
    line << ") " << o.detail;
    std::puts(line.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
