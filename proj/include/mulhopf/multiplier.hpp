#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mulhopf/algebra.hpp"
#include "mulhopf/errors.hpp"
#include "mulhopf/linalg.hpp"
#include "mulhopf/module.hpp"

namespace mulhopf {

/// An element of M(A): a right A-linear λ and a left A-linear ρ with
/// aλ(b) = ρ(a)b. Both parts are linear rules on elements of A.
class Multiplier {
 public:
  using Rule = std::function<Element(const Element&)>;
  using BasisRule = std::function<Element(const BasisId&)>;

  Multiplier(Algebra a, Rule lambda, Rule rho, std::string name = {});

  static Multiplier identity(const Algebra& a);
  static Multiplier zero(const Algebra& a);
  /// Linear extension of basis rules, memoized per basis element when asked.
  static Multiplier from_basis(const Algebra& a, BasisRule lambda, BasisRule rho, std::string name = {},
                               bool memoize = false);

  const Algebra& algebra() const { return algebra_; }
  const std::string& name() const { return name_; }
  Multiplier named(std::string name) const;

  Element left(const Element& a) const { return lambda_(a); }   // x▷a
  Element right(const Element& a) const { return rho_(a); }     // a◁x
  const Rule& lambda() const { return lambda_; }
  const Rule& rho() const { return rho_; }

 private:
  Algebra algebra_;
  Rule lambda_;
  Rule rho_;
  std::string name_;
};

/// Linear extension of a basis rule; memoized when requested.
Multiplier::Rule linear_rule(const Algebra& a, Multiplier::BasisRule rule, bool memoize = false);

/// ι(a) = (left multiplication by a, right multiplication by a).
Multiplier iota(const Algebra& a, const Element& x);

/// xy = (λx∘λy, ρy∘ρx).
Multiplier operator*(const Multiplier& x, const Multiplier& y);
Multiplier operator+(const Multiplier& x, const Multiplier& y);
Multiplier operator-(const Multiplier& x, const Multiplier& y);
Multiplier operator*(const Scalar& c, const Multiplier& x);
Multiplier linear_combination(const Algebra& a, std::vector<std::pair<Scalar, Multiplier>> terms);

/// The three defining identities on all window pairs.
Verdict validate_multiplier(const Multiplier& x, const Window& window);

class MultiplierRejected : public InputError {
 public:
  explicit MultiplierRejected(Verdict v) : InputError("not a multiplier: " + v.detail), verdict(std::move(v)) {}
  Verdict verdict;
};

/// Validates on the window; throws MultiplierRejected carrying the witness.
Multiplier make_multiplier(const Algebra& a, Multiplier::Rule lambda, Multiplier::Rule rho, const Window& window,
                           std::string name = {});

/// The right part of a multiplier on a finite algebra from its left part,
/// solving ρ(a)b = aλ(b). Throws InputError when no ρ exists.
Multiplier complete_from_left(const Algebra& a, Multiplier::BasisRule lambda, std::string name = {});

/// Left: x▷a = λ(a). Right: a◁x = ρ(a).
Element act_on_algebra(const Multiplier& x, const Element& a, Side side);

/// Right modules: m◁x = Σ m_i(a_i◁x). Left modules: x▷m = Σ (x▷a_i)m_i.
/// Throws WindowInsufficient if m has no decomposition on the searched window.
Element act_on_module(const ModuleStructure& m, const Element& v, const Multiplier& x);

/// x▷a = y▷a and a◁x = a◁y for every probe basis element a.
Verdict multiplier_eq(const Multiplier& x, const Multiplier& y, const Window& probe);
Verdict multiplier_eq(const Multiplier& x, const Multiplier& y, const std::vector<Element>& probe,
                      const std::string& label, bool exhaustive);

/// Recovers p with ι(p) = X, verified on a probe window. Unital algebras use
/// X▷1; algebras with local units compare X▷e_R at growing radii; other
/// finite algebras solve a linear system. Throws SliceUndefined when X is not
/// in the image of ι.
class IotaInverter {
 public:
  IotaInverter(Algebra a, Window probes, int expansion = 2);

  const Algebra& algebra() const;
  const Window& probes() const;
  /// `radius` bounds the supports that determine X (used to pick R).
  /// Side::left probes with X▷e, Side::right with e◁X.
  Element invert(const Multiplier& x, int radius, Side side = Side::left) const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

/// Exact coordinates of M(A) for a finite algebra: the solution space of
/// λ(ab) = λ(a)b, ρ(ab) = aρ(b), aλ(b) = ρ(a)b in the matrix entries of λ, ρ.
class MultiplierSpace {
 public:
  explicit MultiplierSpace(const Algebra& a);

  const Algebra& algebra() const { return algebra_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Multiplier>& basis() const { return basis_; }
  /// Σ c_k basis_k.
  Multiplier element(const Vector& coeffs) const;
  /// Coordinates of x in the basis, or nullopt if x is not a multiplier.
  std::optional<Vector> coordinates(const Multiplier& x) const;
  /// True iff span{ι(e_i)} is the whole space.
  bool spanned_by_iota() const;

 private:
  Vector unknowns_of(const Multiplier& x) const;

  Algebra algebra_;
  std::size_t n_;
  std::vector<Vector> kernel_;
  std::vector<Multiplier> basis_;
  std::shared_ptr<SpanSolver<std::size_t>> span_;
};

}  // namespace mulhopf
