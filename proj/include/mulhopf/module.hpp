#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mulhopf/algebra.hpp"

namespace mulhopf {

enum class Side { left, right };

std::string_view to_string(Side s);

/// A one-sided module over an algebra, given by a basis of the carrier and
/// the action on basis pairs. For right modules act(m, a) = m·a; for left
/// modules act(m, a) = a·m.
class ModuleStructure {
 public:
  using ActRule = std::function<Element(const BasisId& m, const BasisId& a)>;
  // Decomposition of a carrier basis element: m = Σ first·second (right) or
  // Σ second·first (left), with `first` in the carrier and `second` in A.
  using DecomposeRule = std::function<std::vector<FactorPair>(const BasisId& m)>;

  struct Spec {
    std::string name;
    Algebra algebra = Algebra::ground(Field::rationals());
    BasisDomain carrier = BasisDomain::point();
    Side side = Side::right;
    ActRule act;
    DecomposeRule decompose;  // optional
    // Radius of the algebra window searched when decomposing an element
    // of carrier radius r is expansion·max(r, 1).
    int expansion = 2;
  };

  explicit ModuleStructure(Spec spec);
  /// A acting on itself by multiplication.
  static ModuleStructure regular(const Algebra& a, Side side);

  const std::string& name() const;
  const Algebra& algebra() const;
  const BasisDomain& carrier() const;
  const Field& field() const { return algebra().field(); }
  Side side() const;

  Element basis(const BasisId& id) const;
  Window window(int radius) const { return carrier().window(radius); }
  int radius(const Element& m) const;
  void require_member(const Element& m) const;
  std::string format(const Element& m) const { return format_element(carrier(), m); }

  Element act_basis(const BasisId& m, const BasisId& a) const;
  /// m·a for right modules, a·m for left modules, extended bilinearly.
  Element act(const Element& m, const Element& a) const;

  /// Sweedler-type decomposition of m (memoized per basis element). Throws
  /// WindowInsufficient when no decomposition is found in the searched window.
  std::vector<FactorPair> decompose(const Element& m) const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

struct ModuleReport {
  Verdict associative;
  Verdict idempotent;
  Verdict nondegenerate;
  bool ok() const { return associative.ok() && idempotent.ok() && nondegenerate.ok(); }
};

ModuleReport check_module(const ModuleStructure& m, const Window& window_m, const Window& window_a);
Verdict check_module_associative(const ModuleStructure& m, const Window& window_m, const Window& window_a);
/// Every window element of M lies in the span of (window M)·(window A).
Verdict check_module_idempotent(const ModuleStructure& m, const Window& window_m, const Window& window_a);
/// No nonzero m in the window span with m·a = 0 for all window a.
Verdict check_module_nondegenerate(const ModuleStructure& m, const Window& window_m, const Window& window_a);

/// (m⊗n)·(a⊗b) = m·a ⊗ n·b over A⊗B. Throws InputError if the sides differ.
ModuleStructure tensor_module(const ModuleStructure& m, const ModuleStructure& n);

}  // namespace mulhopf
