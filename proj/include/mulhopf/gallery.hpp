#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mulhopf/hopf.hpp"

namespace mulhopf {

/// Algebra of finitely supported functions on `points` (orthogonal idempotents
/// d_x). The unit is attached only for finite point sets.
Algebra function_algebra(std::string name, std::vector<std::string> symbols, const Field& f = Field::rationals());

/// K(ℤ) with basis δ_n written "d[n]"; windows are {|n| ≤ r}.
Algebra kfin_z_algebra(const Field& f = Field::rationals());
/// K(ℕ) with basis δ_n, n ≥ 0; windows are {0 ≤ n ≤ r}.
Algebra kfin_n_algebra(const Field& f = Field::rationals());

/// f̃(e_i)▷e_t = [φ(t) = i]e_t = e_t◁f̃(e_i), the pullback of functions
/// along φ from the points of `target` to the points of `source`.
using PointMap = std::function<std::optional<BasisId>(const BasisId&)>;
Extension pullback_extension(const Algebra& source, const Algebra& target, PointMap phi, std::string name);

/// Δ̃(f)(x,y) = f(x∘y) for a binary operation on the points of A.
using PointOp = std::function<std::optional<BasisId>(const BasisId&, const BasisId&)>;
Extension function_coproduct(const Algebra& a, PointOp op, std::string name = "Δ");

/// Evaluation at a point.
Counit evaluation_counit(const Algebra& a, const BasisId& point);

/// S(e_x) = ι(e_{σ(x)}) for a bijection σ of the points.
ConvolutionElement point_antipode(const Algebra& a, std::function<BasisId(const BasisId&)> sigma);

struct GalleryEntry {
  std::string name;
  Algebra algebra;
  std::optional<Extension> delta;
  std::optional<Counit> counit;            // closed form, when known
  std::optional<ConvolutionElement> antipode;  // closed form, when known
  std::string description;
};

/// Names accepted by `gallery`, with parameters shown as "(n)".
const std::vector<std::string>& gallery_names();

/// kfun_cyclic(n), kfin_Z, kfin_N, matfin, rowalg2, zero1, plus the fixtures
/// kfun_cyclic_proj(n), kfin_Z_proj, kfun2_nand. Throws InputError on
/// unknown names.
GalleryEntry gallery(std::string_view spec, const Field& f = Field::rationals());

/// The bialgebra of an entry with a coproduct; the counit is the closed form.
MultiplierBialgebra bialgebra_of(const GalleryEntry& e, BialgebraOptions options = {});

}  // namespace mulhopf
