#pragma once

#include <memory>
#include <string>

#include "mulhopf/bialgebra.hpp"

namespace mulhopf {

/// A right comodule algebra: B with ρ: B → M(B⊗A) over a multiplier bialgebra on A.
class ComoduleAlgebra {
 public:
  /// Slice preimages are verified on the B⊗A window of `probe_radius`.
  ComoduleAlgebra(MultiplierBialgebra h, Extension rho, int probe_radius = 2);

  const Algebra& algebra() const;  // B
  const MultiplierBialgebra& bialgebra() const;
  const Extension& rho() const;

  /// ρ̃(b)(1⊗a) as an element of B⊗A; throws SliceUndefined.
  Element slice(const BasisId& b, const BasisId& a) const;
  /// (c⊗1)ρ̃(b) as an element of B⊗A; throws SliceUndefined.
  Element framed(const BasisId& c, const BasisId& b) const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

/// lift(ρ⊗A)(ρ̃(b)(1⊗a)) = lift(B⊗Δ)(ρ̃(b))(1⊗1⊗a) on probes of B⊗A⊗A,
/// for b in window_b and a in window_a.
Verdict check_comodule_coassoc(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a,
                               const Window& probes);
/// The (c⊗1⊗1)-framed form evaluated in B⊗A⊗A through slices, for window
/// triples (c, b, a). SliceUndefined propagates.
Verdict check_comodule_coassoc_sliced(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a);

/// lift(B⊗ε)(ρ̃(b)(1⊗a)) = ε̃(a)ι(b) on probes of B.
Verdict check_comodule_counit(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a,
                              const Window& probes);
/// (B⊗ε)(ρ̃(b)(1⊗a)) = ε̃(a)b in B.
Verdict check_comodule_counit_sliced(const ComoduleAlgebra& c, const Window& window_b, const Window& window_a);

/// Δ as a coaction of A on itself.
ComoduleAlgebra regular_comodule(const MultiplierBialgebra& h, int probe_radius = 2);
/// B = k with ρ̃(t) = t·1.
ComoduleAlgebra unit_comodule(const MultiplierBialgebra& h, int probe_radius = 2);

/// μ_B(b⊗b')·a = μ_B((b⊗b')◁Δ̃(a)) for a right A-module structure on the
/// carrier of B, on window triples (b, b', a).
Verdict check_module_algebra(const Algebra& b, const ModuleStructure& action, const MultiplierBialgebra& h,
                             const Window& window_b, const Window& window_a);

}  // namespace mulhopf
