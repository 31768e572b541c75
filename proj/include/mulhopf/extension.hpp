#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mulhopf/multiplier.hpp"

namespace mulhopf {

/// Windows used to certify an extension B → M(A).
struct ExtensionWindows {
  Window source;        // B elements acting in span checks
  Window source_pairs;  // pairs (b, b') for multiplicativity
  Window target;        // probes in A
  Window target_pairs;  // pairs in A for the multiplier identities of f̃(b)
};

/// Finite algebras use full bases; oracle algebras use radius r, with the
/// source window for span checks enlarged by `expansion`.
ExtensionWindows extension_windows(const Algebra& source, const Algebra& target, int radius, int expansion = 2);

/// An algebra map f̃: B → M(A), stored on basis elements of B. The induced
/// B-bimodule on A is b·a = f̃(b)▷a, a·b = a◁f̃(b).
class Extension {
 public:
  using Map = std::function<Multiplier(const BasisId&)>;

  /// Unchecked; see extension_from_map for the validated constructor.
  Extension(Algebra source, Algebra target, Map map, std::string name, int expansion = 2);

  const Algebra& source() const;
  const Algebra& target() const;
  const std::string& name() const;
  int expansion() const;

  Multiplier on_basis(const BasisId& b) const;  // memoized
  Multiplier operator()(const Element& b) const;

  Element left_action(const Element& b, const Element& a) const;   // f̃(b)▷a
  Element right_action(const Element& a, const Element& b) const;  // a◁f̃(b)

  /// A as a left B-module: a = Σ f̃(second)▷first.
  const ModuleStructure& left_module() const;
  /// A as a right B-module: a = Σ first◁f̃(second).
  const ModuleStructure& right_module() const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

struct ExtensionReport {
  Verdict multipliers;     // each f̃(b) satisfies the multiplier identities
  Verdict multiplicative;  // f̃(bb') = f̃(b)f̃(b')
  Verdict left_idempotent, right_idempotent;
  Verdict left_nondegenerate, right_nondegenerate;
  bool ok() const;
  Verdict combined() const;
};

ExtensionReport validate_extension(const Extension& f, const ExtensionWindows& w);

class ExtensionRejected : public InputError {
 public:
  explicit ExtensionRejected(Verdict v) : InputError("not an extension: " + v.detail), verdict(std::move(v)) {}
  Verdict verdict;
};

/// Validated construction; throws ExtensionRejected carrying the witness.
Extension extension_from_map(const Algebra& source, const Algebra& target, Extension::Map map,
                             const ExtensionWindows& w, std::string name = "f");

/// b·a and a·b on basis elements.
struct BimoduleRules {
  std::function<Element(const BasisId& b, const BasisId& a)> left;
  std::function<Element(const BasisId& a, const BasisId& b)> right;
};

BimoduleRules bimodule_of(const Extension& f);

/// (a·b)a' = a(b·a') on window triples.
Verdict check_balanced(const Algebra& source, const Algebra& target, const BimoduleRules& rules,
                       const ExtensionWindows& w);

/// f̃(b) = (a ↦ b·a, a ↦ a·b). Throws ExtensionRejected on a balancedness or
/// certificate failure.
Extension extension_from_bimodule(const Algebra& source, const Algebra& target, BimoduleRules rules,
                                  const ExtensionWindows& w, std::string name = "f");

/// f̄: M(B) → M(A) with f̄(x)▷a = Σ f̃(λx(b_i))▷a_i and
/// a◁f̄(x) = Σ a'_j◁f̃(ρx(b'_j)), where a = Σ f̃(b_i)▷a_i = Σ a'_j◁f̃(b'_j).
Multiplier lift_to_multiplier(const Extension& f, const Multiplier& x);

/// Both presentations recover f̃ (map → bimodule → map and back), and the
/// lift satisfies f̄∘ι_B = f̃, f̄(1) = 1 and f̄(ι(b)ι(b')) = f̃(b)f̃(b') on probes.
Verdict check_extension_roundtrip(const Extension& f, const ExtensionWindows& w);

/// ι_A viewed as the extension A → A.
Extension identity_extension(const Algebra& a);

/// (g∘f)~ = ḡ∘f̃.
Extension compose_extensions(const Extension& f, const Extension& g);

/// Ψ(x_1,…,x_n) acting factorwise on a_1⊗…⊗a_n.
Multiplier psi_embed(const std::vector<Multiplier>& parts);

/// (f⊗f')~ = Ψ∘(f̃⊗f̃').
Extension tensor_extensions(const Extension& f, const Extension& g);

/// M as a right B-module via m·b = m◁f̃(b). Throws ExtensionRejected if the
/// result fails idempotency or non-degeneracy on the windows.
ModuleStructure restrict_module(const Extension& f, const ModuleStructure& m, const Window& window_m,
                                const Window& window_b);

}  // namespace mulhopf
