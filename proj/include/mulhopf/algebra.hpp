#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mulhopf/basis.hpp"
#include "mulhopf/verdict.hpp"

namespace mulhopf {

/// The index set of a basis: either a finite enumerated list or an
/// integer-indexed countable family whose windows are boxes of a given radius.
class BasisDomain {
 public:
  struct OracleSpec {
    std::string name;
    std::size_t width = 1;
    std::function<std::vector<BasisId>(int)> box;
    std::function<int(const BasisId&)> radius;
    std::function<bool(const BasisId&)> contains;
    std::function<std::string(const BasisId&)> format;
    std::function<std::optional<BasisId>(std::string_view)> parse;
  };

  /// Finite basis with named symbols; index i is BasisId{i}.
  static BasisDomain finite(std::string name, std::vector<std::string> symbols);
  static BasisDomain oracle(OracleSpec spec);
  /// One-point basis {()} of the ground field.
  static BasisDomain point();
  /// Product domain. A factor of width 0 is absorbed: point ⊗ D = D.
  static BasisDomain tensor(const BasisDomain& a, const BasisDomain& b);

  const std::string& name() const;
  std::size_t width() const;
  bool is_finite() const;
  /// Full basis; throws std::logic_error for oracle domains.
  const std::vector<BasisId>& basis() const;
  Window window(int radius) const;
  int radius(const BasisId& id) const;
  bool contains(const BasisId& id) const;
  std::string format(const BasisId& id) const;
  /// Inverse of format: a finite symbol, an oracle symbol, or "(x,y)" for products.
  std::optional<BasisId> parse_symbol(std::string_view text) const;
  /// Widths of the tensor factors, or {width} for a simple domain.
  const std::vector<std::size_t>& factor_widths() const;

 private:
  struct Data;
  explicit BasisDomain(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// One factor pair of a Sweedler-type decomposition x = Σ first·second
/// (the meaning of the product depends on context).
struct FactorPair {
  Element first;
  Element second;
};

/// A possibly non-unital associative algebra over an exact field, given by a
/// basis and a rule for products of basis elements.
class Algebra {
 public:
  using MulRule = std::function<Element(const BasisId&, const BasisId&)>;

  struct Spec {
    std::string name;
    Field field;
    BasisDomain domain = BasisDomain::point();
    MulRule mul;
    std::optional<Element> unit;
    // Two-sided local unit for every element of radius <= r.
    std::function<Element(int)> local_unit;
  };

  explicit Algebra(Spec spec);
  /// The ground field k with basis {()} and unit ().
  static Algebra ground(Field field);

  const std::string& name() const;
  const Field& field() const;
  const BasisDomain& domain() const;
  bool is_finite() const { return domain().is_finite(); }
  bool is_ground() const { return domain().width() == 0; }

  Element basis(const BasisId& id) const;
  Element zero() const { return Element(field()); }
  Element scalar(const Scalar& c) const;  // c·1 in the ground field only

  Element mul_basis(const BasisId& a, const BasisId& b) const;
  /// Bilinear extension of the basis rule; throws InputError on foreign indices.
  Element mul(const Element& x, const Element& y) const;

  const std::optional<Element>& unit() const;
  /// The unit if there is one, otherwise a local unit covering radius r.
  std::optional<Element> local_unit(int radius) const;
  bool has_local_units() const;

  Window window(int radius) const { return domain().window(radius); }
  int radius(const Element& x) const;
  void require_member(const Element& x) const;
  std::string format(const Element& x) const;
  /// Inverse of format: "c*sym + c*sym", or "0".
  Element parse(std::string_view text) const;

  /// Tensor factors in order (a simple algebra is its own single factor).
  std::vector<Algebra> factors() const;
  bool same_as(const Algebra& o) const;

 private:
  struct Data;
  explicit Algebra(std::shared_ptr<Data> d) : d_(std::move(d)) {}
  friend Algebra tensor_algebra(const Algebra& a, const Algebra& b);
  std::shared_ptr<Data> d_;
};

/// (a⊗b)(a'⊗b') = aa'⊗bb'. The ground field is absorbed: k⊗A = A⊗k = A.
Algebra tensor_algebra(const Algebra& a, const Algebra& b);
Algebra tensor_power(const Algebra& a, std::size_t n);

/// x⊗y by concatenation of basis indices.
Element tensor(const Element& x, const Element& y);
/// Splits the basis index of a product into its first `width` entries and the rest.
std::pair<BasisId, BasisId> split_id(const BasisId& id, std::size_t width);

std::string format_element(const BasisDomain& domain, const Element& x);
Element parse_element(const BasisDomain& domain, const Field& field, std::string_view text);

Verdict check_associativity(const Algebra& a, const Window& window);

struct IdempotencyReport {
  Verdict verdict;
  // For each window basis element e: e = Σ first·second with factors in the window.
  std::map<BasisId, std::vector<FactorPair>> decompositions;
};
IdempotencyReport check_idempotent(const Algebra& a, const Window& window);

/// Trivial kernels of the stacked multiplication operators on the window.
Verdict check_nondegenerate(const Algebra& a, const Window& window);

/// For each probe p, some e in the span of the window with p·e = p = e·p.
std::optional<std::vector<Element>> local_units_witness(const Algebra& a,
                                                        const std::vector<Element>& probe,
                                                        const Window& window);

}  // namespace mulhopf
