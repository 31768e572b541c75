#include "mulhopf/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mulhopf/comodule.hpp"

namespace mulhopf {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"check-algebra",     "check-bialgebra",     "check-hopf", "check-comodule",
                                             "synthesize-counit", "synthesize-antipode", "classify"};
  return c;
}

const std::vector<std::pair<std::string, std::string>>& axiom_anchors() {
  static const std::vector<std::pair<std::string, std::string>> a = {
      {"algebra.associativity", "(ab)c = a(bc)"},
      {"algebra.idempotent", "A = A²"},
      {"algebra.nondegenerate", "ab = 0 for all b ⇒ a = 0; ba = 0 for all b ⇒ a = 0"},
      {"delta.extension", "Δ̃: A → M(A⊗A) with A⊗A a non-degenerate idempotent A-bimodule"},
      {"bialgebra.coassociativity", "b_(1,c)(a,1) ⊗ b_(1,c)(a,2) ⊗ b_(2,c) = b_(a,1) ⊗ b_(a,2)(1,c) ⊗ b_(a,2)(2,c)"},
      {"bialgebra.coassociativity_lifted", "lift(Δ⊗A)∘Δ̃ = lift(A⊗Δ)∘Δ̃"},
      {"bialgebra.counit_surjective", "ε̃(g) = 1"},
      {"bialgebra.counit", "(ε⊗A)(Δ̃(a)(1⊗b)) = ab = (A⊗ε)((a⊗1)Δ̃(b))"},
      {"bialgebra.counit_lifted", "lift(ε⊗A)∘Δ̃ = ι_A = lift(A⊗ε)∘Δ̃"},
      {"counit.synthesis", "solve (ε⊗A)(Δ̃(a)(1⊗b)) = ab and (A⊗ε)((a⊗1)Δ̃(b)) = ab for ε"},
      {"hopf.T1", "T1(a⊗b) = Δ̃(a)(1⊗b) is bijective"},
      {"hopf.T2", "T2(a⊗b) = (a⊗1)Δ̃(b) is bijective"},
      {"antipode.synthesis", "solve S(a_(1,b))a_(2,b) = ε̃(a)b and b_(a,1)S(b_(a,2)) = aε̃(b) for S"},
      {"hopf.antipode_left", "S(a_(1,b))a_(2,b) = ε̃(a)b"},
      {"hopf.antipode_right", "b_(a,1)S(b_(a,2)) = aε̃(b)"},
      {"hopf.convolution_inverse", "S ∗^b ι = α_b and ι ∗_a S = α_a"},
      {"convolution.mixed_associativity", "f ∗_a (g ∗^b k) = (f ∗_a g) ∗^b k"},
      {"convolution.unitality", "(α_b ∗^c f)(a) = ι(b)f(ac) and (f ∗_c α_b)(a) = f(ca)ι(b)"},
      {"comodule.coassociativity", "lift(ρ⊗A)(ρ̃(b)(1⊗a)) = lift(B⊗Δ)(ρ̃(b))(1⊗1⊗a)"},
      {"comodule.coassociativity_sliced", "(c⊗1⊗1)lift(ρ⊗A)(ρ̃(b)(1⊗a)) = lift(B⊗Δ)((c⊗1)ρ̃(b))(1⊗1⊗a)"},
      {"comodule.counit", "lift(B⊗ε)(ρ̃(b)(1⊗a)) = ε̃(a)ι_B(b)"},
      {"comodule.counit_sliced", "(B⊗ε)(ρ̃(b)(1⊗a)) = ε̃(a)b"},
      {"module_algebra.counit_action", "μ_B(b⊗b')·a = μ_B((b⊗b')◁Δ̃(a))"},
  };
  return a;
}

namespace {

const std::string& anchor_of(const std::string& axiom) {
  for (const auto& [id, anchor] : axiom_anchors()) {
    if (id == axiom) return anchor;
  }
  throw std::logic_error("no anchor for " + axiom);
}

std::string_view status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::proven: return "proven";
    case EntryStatus::holds_on_window: return "holds_on_window";
    case EntryStatus::failed: return "failed";
    case EntryStatus::window_insufficient: return "window_insufficient";
  }
  return "?";
}

// A slice failure attributed to the basis element whose image was requested.
struct SliceAt : SliceUndefined {
  SliceAt(const std::string& what, std::string at) : SliceUndefined(what), where(std::move(at)) {}
  std::string where;
};

std::string format_witness(const Algebra& a, const Element& e) {
  if (e.is_zero()) return "0";
  const std::size_t w = e.begin()->first.size();
  const std::size_t wa = a.domain().width();
  if (w == 0) return e.begin()->second.to_string();
  if (wa > 0 && w % wa == 0) return format_element(tensor_power(a, w / wa).domain(), e);
  std::string out;
  for (const auto& [id, c] : e) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + "*(";
    for (std::size_t i = 0; i < id.size(); ++i) out += (i ? "," : "") + std::to_string(id[i]);
    out += ")";
  }
  return out;
}

class Runner {
 public:
  Runner(const SpecFile& spec, Report& rep, const RunOptions& opt) : spec_(spec), rep_(rep), opt_(opt) {
    const auto& A = spec.bundle.algebra;
    window_ = opt.window.value_or(spec.window.value_or(4));
    expansion_ = opt.expansion.value_or(spec.expansion.value_or(2));
    rep.window = window_;
    rep.expansion = expansion_;
    rep.seed = opt.seed;
    win_ = A.window(window_);
  }

  const Algebra& algebra() const { return spec_.bundle.algebra; }

  // Runs one check and records it; returns the recorded status.
  template <class F>
  EntryStatus entry(const std::string& axiom, F&& check) {
    ReportEntry e;
    e.axiom = axiom;
    e.anchor = anchor_of(axiom);
    const auto t0 = started_.value_or(std::chrono::steady_clock::now());
    started_.reset();
    try {
      Verdict v = check();
      e.status = v.status == Status::proven            ? EntryStatus::proven
                 : v.status == Status::holds_on_window ? EntryStatus::holds_on_window
                                                       : EntryStatus::failed;
      e.window = v.window;
      for (const auto& w : v.witness) e.witness.push_back(format_witness(algebra(), w));
      e.detail = v.detail;
    } catch (const SliceAt& x) {
      e.status = EntryStatus::failed;
      e.window = win_.label;
      e.witness.push_back(x.where);
      e.detail = std::string("slice undefined: ") + x.what();
    } catch (const SliceUndefined& x) {
      e.status = EntryStatus::failed;
      e.window = win_.label;
      e.detail = std::string("slice undefined: ") + x.what();
    } catch (const WindowInsufficient& x) {
      e.status = EntryStatus::window_insufficient;
      e.window = win_.label;
      e.detail = x.what();
    }
    if (opt_.timing) {
      e.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    rep_.entries.push_back(e);
    return e.status;
  }

  template <class F, class G>
  EntryStatus sliced_or_lifted(const std::string& axiom, F&& sliced, const std::string& lifted_axiom, G&& lifted) {
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<Verdict> v;
    std::exception_ptr err;
    try {
      v = sliced();
    } catch (const SliceUndefined&) {
      return entry(lifted_axiom, lifted);
    } catch (const WindowInsufficient&) {
      err = std::current_exception();
    }
    started_ = t0;
    return entry(axiom, [&] {
      if (err) std::rethrow_exception(err);
      return *v;
    });
  }

  // --- algebra -------------------------------------------------------------

  bool algebra_checks() {
    const Algebra& A = algebra();
    const auto s1 = entry("algebra.associativity", [&] { return check_associativity(A, win_); });
    const auto s2 = entry("algebra.idempotent", [&] { return check_idempotent(A, win_).verdict; });
    const auto s3 = entry("algebra.nondegenerate", [&] { return check_nondegenerate(A, win_); });
    if (A.is_finite() && A.domain().basis().size() <= 8 && s1 != EntryStatus::failed) {
      rep_.multiplier_dimension = MultiplierSpace(A).dimension();
    }
    assoc_ok_ = ok(s1);
    return ok(s1) && ok(s2) && ok(s3);
  }

  // --- bialgebra -----------------------------------------------------------

  MultiplierBialgebra bialgebra(std::optional<Counit> counit) const {
    const auto& b = spec_.bundle;
    if (!b.delta) throw InputError(b.name + " has no coproduct");
    return MultiplierBialgebra(b.name, b.algebra, *b.delta, std::move(counit),
                               BialgebraOptions{window_, expansion_, 0});
  }

  bool delta_checks(const MultiplierBialgebra& h) {
    const auto s1 = entry("delta.extension", [&] {
      return validate_extension(h.delta(), extension_windows(h.algebra(), h.tensor2(), window_, expansion_))
          .combined();
    });
    if (!ok(s1)) return false;
    // The sliced form needs both slices; without them only the lifted form applies.
    const auto s2 = sliced_or_lifted(
        "bialgebra.coassociativity", [&] { return check_coassociative(h, win_); },
        "bialgebra.coassociativity_lifted",
        [&] { return check_coassociative_lifted(h, small(), tensor_power(algebra(), 3).window(1)); });
    return ok(s2);
  }

  bool counit_checks(const MultiplierBialgebra& h) {
    const auto s1 = entry("bialgebra.counit_surjective", [&] {
      if (h.g()) return Verdict::pass(win_.exhaustive, win_.label);
      return Verdict::fail(win_.label, {}, "no g with ε̃(g) = 1 among window basis multiples");
    });
    const auto s2 = sliced_or_lifted(
        "bialgebra.counit", [&] { return check_counit(h, win_); }, "bialgebra.counit_lifted",
        [&] { return check_counit_lifted(h, small(), algebra().window(1)); });
    return ok(s1) && ok(s2);
  }

  std::optional<Counit> synthesize_eps(const MultiplierBialgebra& h) {
    std::optional<Counit> found;
    entry("counit.synthesis", [&] {
      CounitSynthesis syn = synthesize_counit(h, win_);
      if (!syn.counit) return Verdict::fail(win_.label, {}, syn.diagnostic);
      found = syn.counit;
      rep_.counit_table.clear();
      for (const auto& id : win_.ids) {
        rep_.counit_table.emplace_back(algebra().domain().format(id), syn.table.at(id).to_string());
      }
      return Verdict::pass(win_.exhaustive, win_.label);
    });
    return found;
  }

  // --- hopf ----------------------------------------------------------------

  bool tmaps(const MultiplierBialgebra& h) {
    const Algebra& A2 = h.tensor2();
    const Window w2 = A2.window(window_);
    const Window w2e = A2.window(expansion_ * std::max(window_, 1));
    auto wrap = [&](auto t) {
      return [&h, &A2, t](const BasisId& id) {
        try {
          return t(h, A2.basis(id));
        } catch (const SliceUndefined& e) {
          throw SliceAt(e.what(), A2.domain().format(id));
        }
      };
    };
    const auto s1 = entry("hopf.T1", [&] {
      return check_bijective(A2.domain(), A2.field(), wrap([](const auto& hh, const Element& u) { return t1(hh, u); }),
                             w2, w2e);
    });
    const auto s2 = entry("hopf.T2", [&] {
      return check_bijective(A2.domain(), A2.field(), wrap([](const auto& hh, const Element& u) { return t2(hh, u); }),
                             w2, w2e);
    });
    return ok(s1) && ok(s2);
  }

  std::optional<ConvolutionElement> synthesize_s(const MultiplierBialgebra& h) {
    std::optional<ConvolutionElement> found;
    entry("antipode.synthesis", [&] {
      AntipodeSynthesis syn = synthesize_antipode(h, win_);
      if (!syn.s) return Verdict::fail(win_.label, {}, syn.diagnostic);
      found = syn.s;
      rep_.antipode_table.clear();
      for (const auto& id : win_.ids) {
        const auto& form = syn.iota_form.at(id);
        rep_.antipode_table.emplace_back(algebra().domain().format(id),
                                         form ? "ι(" + algebra().format(*form) + ")" : "multiplier outside ι(A)");
      }
      return Verdict::pass(win_.exhaustive, win_.label);
    });
    return found;
  }

  // A synthesized S is only known on the window, and the slice legs of a
  // window pair of an oracle algebra reach twice as far.
  bool antipode_checks(const MultiplierBialgebra& h, const ConvolutionElement& s, bool synthesized) {
    const Window w = synthesized && !algebra().is_finite() ? algebra().window(window_ / 2) : win_;
    std::optional<AntipodeCandidate> cand;
    auto get = [&]() -> const AntipodeCandidate& {
      if (!cand) cand = check_antipode(h, s, w);
      return *cand;
    };
    const auto s1 = entry("hopf.antipode_left", [&] { return get().left; });
    const auto s2 = entry("hopf.antipode_right", [&] { return get().right; });
    const auto s3 = entry("hopf.convolution_inverse", [&] {
      const Window wc = synthesized && !algebra().is_finite() ? algebra().window(std::min(window_ / 2, 2)) : small();
      return check_convolution_inverse(h, s, wc, algebra().window(std::min(window_, 2)));
    });
    return ok(s1) && ok(s2) && ok(s3);
  }

  void convolution_probes(const MultiplierBialgebra& h, const ConvolutionElement& s) {
    const Algebra& A = algebra();
    const Window w = small();
    const Window probes = A.window(std::min(window_, 1));
    std::mt19937_64 rng(opt_.seed);
    const std::vector<ConvolutionElement> maps = {ConvolutionElement::iota_map(A), s};
    auto pick_map = [&] { return maps[rng() % maps.size()]; };
    auto pick = [&] { return A.basis(w.ids[rng() % w.ids.size()]); };
    entry("convolution.mixed_associativity", [&] {
      std::vector<Verdict> parts;
      for (int i = 0; i < opt_.probes; ++i) {
        const auto f = pick_map(), g = pick_map(), k = pick_map();
        const auto a = pick(), b = pick();
        parts.push_back(check_mixed_associativity(h, f, g, k, a, b, w, probes));
        if (!parts.back().ok()) break;
      }
      return combine(parts);
    });
    entry("convolution.unitality", [&] {
      std::vector<Verdict> parts;
      for (int i = 0; i < opt_.probes; ++i) {
        const auto f = pick_map();
        const auto b = pick(), c = pick();
        parts.push_back(check_convolution_unitality(h, f, b, c, w, probes));
        if (!parts.back().ok()) break;
      }
      return combine(parts);
    });
  }

  // --- comodule ------------------------------------------------------------

  void comodule_checks(const MultiplierBialgebra& h) {
    const ComoduleAlgebra c = regular_comodule(h, std::min(window_, 2));
    const Window w = small();
    const Algebra& A = algebra();
    entry("comodule.coassociativity",
          [&] { return check_comodule_coassoc(c, w, w, tensor_power(A, 3).window(std::min(window_, 1))); });
    entry("comodule.coassociativity_sliced", [&] { return check_comodule_coassoc_sliced(c, w, w); });
    entry("comodule.counit", [&] { return check_comodule_counit(c, w, w, A.window(std::min(window_, 2))); });
    entry("comodule.counit_sliced", [&] { return check_comodule_counit_sliced(c, w, w); });
    const Algebra k = Algebra::ground(A.field());
    entry("module_algebra.counit_action", [&] {
      return check_module_algebra(k, unit_module(h, Side::right), h, k.domain().window(0), w);
    });
  }

  // --- commands ------------------------------------------------------------

  void check_algebra() { algebra_checks(); }

  void check_bialgebra() {
    if (!algebra_checks()) return;
    auto h = bialgebra(spec_.bundle.counit);
    if (!delta_checks(h)) return;
    if (!h.counit()) {
      auto eps = synthesize_eps(h);
      if (!eps) return;
      h = h.with_counit(*eps);
    }
    counit_checks(h);
  }

  void check_hopf() {
    if (!algebra_checks()) return;
    auto h = bialgebra(spec_.bundle.counit);
    if (!delta_checks(h)) return;
    tmaps(h);
    if (!h.counit()) {
      auto eps = synthesize_eps(h);
      if (!eps) return;
      h = h.with_counit(*eps);
    }
    if (!counit_checks(h)) return;
    auto s = spec_.bundle.antipode;
    const bool synthesized = !s;
    if (!s) s = synthesize_s(h);
    if (!s) return;
    antipode_checks(h, *s, synthesized);
    convolution_probes(h, *s);
  }

  void check_comodule() {
    if (!algebra_checks()) return;
    auto h = bialgebra(spec_.bundle.counit);
    if (!delta_checks(h)) return;
    if (!h.counit()) {
      auto eps = synthesize_eps(h);
      if (!eps) return;
      h = h.with_counit(*eps);
    }
    comodule_checks(h);
  }

  void synth_counit() { synthesize_eps(bialgebra(std::nullopt)); }

  void synth_antipode() {
    auto h = bialgebra(spec_.bundle.counit);
    if (!h.counit()) {
      auto eps = synthesize_eps(h);
      if (!eps) return;
      h = h.with_counit(*eps);
    }
    synthesize_s(h);
  }

  void classify() {
    std::string structure = "no verified structure";
    const std::size_t first = rep_.entries.size();
    auto finish = [&] {
      bool proven = true;
      bool insufficient = false;
      for (std::size_t i = first; i < rep_.entries.size(); ++i) {
        const auto st = rep_.entries[i].status;
        if (st == EntryStatus::window_insufficient) insufficient = true;
        if (st == EntryStatus::holds_on_window) proven = false;
      }
      std::string suffix = proven && algebra().is_finite() ? "proven; finite"
                                                           : "holds_on_window " + std::to_string(window_);
      if (insufficient) suffix += "; window insufficient";
      rep_.classification = structure + " (" + suffix + ")";
    };
    const bool alg = algebra_checks();
    if (!alg) {
      if (assoc_ok_) structure = "associative algebra";
      return finish();
    }
    structure = "non-degenerate idempotent algebra";
    if (!spec_.bundle.delta) return finish();
    auto h = bialgebra(std::nullopt);
    if (!delta_checks(h)) return finish();
    auto eps = synthesize_eps(h);
    if (!eps) return finish();
    h = h.with_counit(*eps);
    if (!counit_checks(h)) return finish();
    structure = "multiplier bialgebra";
    if (!tmaps(h)) return finish();
    auto s = synthesize_s(h);
    if (!s) return finish();
    if (!antipode_checks(h, *s, true)) return finish();
    structure = "multiplier Hopf algebra";
    finish();
  }

 private:
  static bool ok(EntryStatus s) { return s == EntryStatus::proven || s == EntryStatus::holds_on_window; }
  Window small() const { return algebra().window(std::min(window_, 2)); }

  const SpecFile& spec_;
  Report& rep_;
  RunOptions opt_;
  int window_ = 4;
  int expansion_ = 2;
  Window win_;
  bool assoc_ok_ = false;
  std::optional<std::chrono::steady_clock::time_point> started_;
};

}  // namespace

Report run(const std::string& command, const SpecFile& spec, const std::string& input, std::string_view digest_source,
           const RunOptions& options) {
  Report rep;
  rep.command = command;
  rep.input = input;
  rep.digest = fnv1a64(digest_source);
  Runner r(spec, rep, options);
  if (command == "check-algebra") r.check_algebra();
  else if (command == "check-bialgebra") r.check_bialgebra();
  else if (command == "check-hopf") r.check_hopf();
  else if (command == "check-comodule") r.check_comodule();
  else if (command == "synthesize-counit") r.synth_counit();
  else if (command == "synthesize-antipode") r.synth_antipode();
  else if (command == "classify") r.classify();
  else throw InputError("unknown command '" + command + "'");
  return rep;
}

int exit_code(const Report& r) {
  bool insufficient = false;
  for (const auto& e : r.entries) {
    if (e.status == EntryStatus::failed) return 1;
    if (e.status == EntryStatus::window_insufficient) insufficient = true;
  }
  return insufficient ? 2 : 0;
}

std::string to_json(const Report& r) {
  using json = nlohmann::ordered_json;
  char digest[32];
  std::snprintf(digest, sizeof digest, "fnv1a64:%016llx", static_cast<unsigned long long>(r.digest));
  json j;
  j["tool"] = "mulhopf";
  j["version"] = tool_version;
  j["command"] = r.command;
  j["input"] = r.input;
  j["input_digest"] = digest;
  j["parameters"] = {{"window", r.window}, {"expansion", r.expansion}, {"seed", r.seed}};
  json entries = json::array();
  for (const auto& e : r.entries) {
    json x;
    x["axiom"] = e.axiom;
    x["anchor"] = e.anchor;
    x["status"] = status_name(e.status);
    x["window"] = e.window;
    x["witness"] = e.witness.empty() ? json(nullptr) : json(e.witness);
    x["detail"] = e.detail;
    x["timing_ms"] = e.timing_ms ? json(*e.timing_ms) : json(nullptr);
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  if (r.classification) j["classification"] = *r.classification;
  if (r.multiplier_dimension) j["multiplier_dimension"] = *r.multiplier_dimension;
  auto table = [](const std::vector<std::pair<std::string, std::string>>& t) {
    json o = json::object();
    for (const auto& [k, v] : t) o[k] = v;
    return o;
  };
  if (!r.counit_table.empty()) j["counit"] = table(r.counit_table);
  if (!r.antipode_table.empty()) j["antipode"] = table(r.antipode_table);
  j["exit_code"] = exit_code(r);
  return j.dump(2) + "\n";
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << "mulhopf " << tool_version << "  " << r.command << " " << r.input << "  (window " << r.window
      << ", expansion " << r.expansion << ")\n";
  for (const auto& e : r.entries) {
    out << "  " << e.axiom << ": " << status_name(e.status) << " on " << e.window;
    if (e.timing_ms) out << "  [" << static_cast<long long>(*e.timing_ms) << " ms]";
    out << "\n";
    if (!e.witness.empty()) {
      out << "    witness:";
      for (const auto& w : e.witness) out << " " << w << ";";
      out << "\n";
    }
    if (!e.detail.empty()) out << "    " << e.detail << "\n";
  }
  if (r.multiplier_dimension) out << "  dim M(A) = " << *r.multiplier_dimension << "\n";
  if (!r.counit_table.empty()) {
    out << "  counit:";
    for (const auto& [k, v] : r.counit_table) out << " ε(" << k << ") = " << v << ";";
    out << "\n";
  }
  if (!r.antipode_table.empty()) {
    out << "  antipode:";
    for (const auto& [k, v] : r.antipode_table) out << " S(" << k << ") = " << v << ";";
    out << "\n";
  }
  if (r.classification) out << "  classification: " << *r.classification << "\n";
  return out.str();
}

}  // namespace mulhopf
