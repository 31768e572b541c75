#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mulhopf/extension.hpp"

namespace mulhopf {

/// ε̃: A → k on basis elements.
class Counit {
 public:
  using Rule = std::function<Scalar(const BasisId&)>;

  Counit(Algebra a, Rule rule, std::string name = "ε");

  const Algebra& algebra() const { return algebra_; }
  const std::string& name() const { return name_; }
  Scalar on_basis(const BasisId& id) const { return rule_(id); }
  Scalar operator()(const Element& a) const;
  /// ε as the extension A → M(k) = k.
  Extension as_extension() const;
  Counit scaled(const Scalar& c) const;

 private:
  Algebra algebra_;
  Rule rule_;
  std::string name_;
};

/// Some g with ε̃(g) = 1 among multiples of window basis elements.
std::optional<Element> counit_witness(const Counit& eps, const Window& window);

/// Preimages under ι_{A⊗A} of Δ̃(a)(1⊗b) (right slices) and (b⊗1)Δ̃(a)
/// (left slices), memoized per basis pair.
class Slicer {
 public:
  /// Probes for the preimage verification are the A⊗A window of `probe_radius`.
  Slicer(Extension delta, int probe_radius, int expansion = 2);

  const Extension& delta() const;
  const Algebra& algebra() const;
  const Algebra& tensor2() const;

  /// a_(1,b)⊗a_(2,b) = Δ̃(a)(1⊗b).
  Element right(const BasisId& a, const BasisId& b) const;
  /// a_(b,1)⊗a_(b,2) = (b⊗1)Δ̃(a).
  Element left(const BasisId& a, const BasisId& b) const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

struct BialgebraOptions {
  int window = 4;     // radius for oracle algebras
  int expansion = 2;  // enlargement factor for span searches
  int probe_radius = 0;  // preimage verification radius (0: same as window)
};

/// A non-degenerate idempotent algebra with Δ: A → M(A⊗A) and optionally ε.
class MultiplierBialgebra {
 public:
  MultiplierBialgebra(std::string name, Algebra a, Extension delta, std::optional<Counit> counit,
                      BialgebraOptions options = {});

  const std::string& name() const;
  const Algebra& algebra() const;
  const Algebra& tensor2() const;
  const Extension& delta() const;
  const std::optional<Counit>& counit() const;
  const Counit& require_counit() const;
  /// ε̃(g) = 1, fixed when the counit is attached.
  const std::optional<Element>& g() const;
  const BialgebraOptions& options() const;
  const Slicer& slicer() const;
  Window window() const;

  /// Same Δ and slices with a different counit; `keep_g` keeps the old witness.
  MultiplierBialgebra with_counit(Counit eps, bool keep_g = false) const;
  /// Same structure checked on a different window.
  MultiplierBialgebra with_options(BialgebraOptions options) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

/// Δ̃(a)(1⊗b) (right) or (b⊗1)Δ̃(a) (left) as an element of A⊗A, extended
/// bilinearly. Throws SliceUndefined if it is not in ι(A⊗A).
Element sweedler_slice(const MultiplierBialgebra& h, const Element& a, const Element& b, Side side);

/// Sliced coassociativity on window triples (a,b,c):
///   Σ_{u⊗v = b_(1,c)} u_(a,1)⊗u_(a,2)⊗v = Σ_{u⊗v = b_(a,1)⊗b_(a,2)} u⊗v_(1,c)⊗v_(2,c).
Verdict check_coassociative(const MultiplierBialgebra& h, const Window& window);
/// lift(Δ⊗A)∘Δ̃ = lift(A⊗Δ)∘Δ̃ compared on probe multipliers over A⊗A⊗A.
Verdict check_coassociative_lifted(const MultiplierBialgebra& h, const Window& window, const Window& probes);

/// (ε⊗A)(Δ̃(a)(1⊗b)) = ab and (A⊗ε)((a⊗1)Δ̃(b)) = ab on window pairs.
Verdict check_counit(const MultiplierBialgebra& h, const Window& window);
/// lift(ε⊗A)∘Δ̃ = ι_A = lift(A⊗ε)∘Δ̃ on probes.
Verdict check_counit_lifted(const MultiplierBialgebra& h, const Window& window, const Window& probes);

struct CounitSynthesis {
  std::optional<Counit> counit;  // none when the system is inconsistent or ε is not multiplicative
  std::map<BasisId, Scalar> table;
  std::string diagnostic;
};

/// Solves both counit conditions for ε(e_i) over window pairs. Throws
/// WindowInsufficient when a window value is left undetermined.
CounitSynthesis synthesize_counit(const MultiplierBialgebra& h, const Window& window);

/// (m⊗n)·a = Σ (m_i⊗n_j)((a_i⊗b_j)◁Δ̃(a)) for right modules and
/// a·(m⊗n) = Σ (Δ̃(a)▷(a_i⊗b_j))(m_i⊗n_j) for left modules.
ModuleStructure tensor_module_action(const MultiplierBialgebra& h, const ModuleStructure& m,
                                     const ModuleStructure& n);

/// k with t·a = ε̃(a)t, decomposing t = t·g.
ModuleStructure unit_module(const MultiplierBialgebra& h, Side side);

struct NamedVerdict {
  std::string name;
  Verdict verdict;
};

struct MonoidalOptions {
  int algebra_radius = 2;
  int carrier_radius = 1;
};

/// Associator and unit constraints are A-linear for the induced actions on
/// the given modules (both sides), and (id⊗id)∘Δ is again an extension.
std::vector<NamedVerdict> check_monoidal_instance(const MultiplierBialgebra& h,
                                                  const std::vector<ModuleStructure>& modules,
                                                  const MonoidalOptions& options);

}  // namespace mulhopf
