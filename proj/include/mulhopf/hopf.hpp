#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "mulhopf/bialgebra.hpp"

namespace mulhopf {

/// A linear map A → M(A), stored on basis elements.
class ConvolutionElement {
 public:
  using Rule = std::function<Multiplier(const BasisId&)>;

  ConvolutionElement(Algebra a, Rule rule, std::string name = {});
  /// ι_A viewed in Hom(A, M(A)).
  static ConvolutionElement iota_map(const Algebra& a);
  static ConvolutionElement zero(const Algebra& a);

  const Algebra& algebra() const;
  const std::string& name() const;
  Multiplier on_basis(const BasisId& a) const;
  Multiplier operator()(const Element& a) const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

/// T1(a⊗b) = a_(1,b)⊗a_(2,b), extended linearly.
Element t1(const MultiplierBialgebra& h, const Element& u);
/// T2(a⊗b) = b_(a,1)⊗b_(a,2), extended linearly.
Element t2(const MultiplierBialgebra& h, const Element& u);

using LinearRule = std::function<Element(const BasisId&)>;

/// Injective on `window` (trivial kernel) and every window basis vector has
/// a preimage in the span of `expanded`.
Verdict check_bijective(const BasisDomain& domain, const Field& field, const LinearRule& t, const Window& window,
                        const Window& expanded);

struct AntipodeCandidate {
  ConvolutionElement s;
  Verdict left;   // S(a_(1,b))▷a_(2,b) = ε̃(a)b
  Verdict right;  // b_(a,1)◁S(b_(a,2)) = aε̃(b)
  bool ok() const { return left.ok() && right.ok(); }
};

AntipodeCandidate check_antipode(const MultiplierBialgebra& h, const ConvolutionElement& s, const Window& window);

struct AntipodeSynthesis {
  std::optional<ConvolutionElement> s;
  // S(e_i) = ι(x) when S(e_i) lies in ι(A).
  std::map<BasisId, std::optional<Element>> iota_form;
  std::string diagnostic;
};

/// Solves both antipode equations for S(e_i) in the span of M(A)
/// coordinates (finite) or of ι(window) (oracle). Throws WindowInsufficient
/// if the solution is not unique.
AntipodeSynthesis synthesize_antipode(const MultiplierBialgebra& h, const Window& window);

/// (f ∗^b g)(a) = Σ f(a_(1,b))g(a_(2,b)).
ConvolutionElement conv_right(const MultiplierBialgebra& h, const ConvolutionElement& f, const ConvolutionElement& g,
                              const Element& b);
/// (f ∗_b g)(a) = Σ f(a_(b,1))g(a_(b,2)).
ConvolutionElement conv_left(const MultiplierBialgebra& h, const ConvolutionElement& f, const ConvolutionElement& g,
                             const Element& b);
/// α_b(a) = ε̃(a)ι(b).
ConvolutionElement conv_alpha(const MultiplierBialgebra& h, const Element& b);
/// (b·f·b')(a) = f(b'ab).
ConvolutionElement conv_dot(const ConvolutionElement& f, const Element& b, const Element& b2);
/// (b⇀f↼b')(a) = ι(b)f(a)ι(b').
ConvolutionElement conv_harpoon(const ConvolutionElement& f, const Element& b, const Element& b2);
/// β¹(f)(b) = b·f and β₂(f)(b) = f·b.
ConvolutionElement conv_beta(const ConvolutionElement& f, const Element& b, Side side);

/// f(a) = g(a) as multipliers for each window a, compared on probes.
Verdict conv_eq(const ConvolutionElement& f, const ConvolutionElement& g, const Window& window, const Window& probes);

/// (S ∗^b ι)(a) = α_b(a) and (ι ∗_a S)(b) = α_a(b) for window pairs.
Verdict check_convolution_inverse(const MultiplierBialgebra& h, const ConvolutionElement& s, const Window& window,
                                  const Window& probes);

/// f ∗_a (g ∗^b h) = (f ∗_a g) ∗^b h.
Verdict check_mixed_associativity(const MultiplierBialgebra& h, const ConvolutionElement& f,
                                  const ConvolutionElement& g, const ConvolutionElement& k, const Element& a,
                                  const Element& b, const Window& window, const Window& probes);

/// (α_b ∗^c f)(a) = ι(b)f(ac) and (f ∗_c α_b)(a) = f(ca)ι(b).
Verdict check_convolution_unitality(const MultiplierBialgebra& h, const ConvolutionElement& f, const Element& b,
                                    const Element& c, const Window& window, const Window& probes);

/// For the elementary maps e_i ↦ ι(e_j) on the window: b·f = 0 for all
/// window b forces f = 0, and likewise for b⇀f.
Verdict check_convolution_nondegenerate(const MultiplierBialgebra& h, const Window& window, const Window& probes);

}  // namespace mulhopf
