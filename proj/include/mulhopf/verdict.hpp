#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mulhopf/basis.hpp"
#include "mulhopf/sparse.hpp"

namespace mulhopf {

using Element = SparseVector<BasisId>;

/// A finite set of basis indices on which universally quantified statements
/// are checked. `exhaustive` means the set is the whole basis of a finite
/// algebra, so passing checks are proofs.
struct Window {
  std::vector<BasisId> ids;
  std::string label;
  bool exhaustive = false;
};

enum class Status { proven, holds_on_window, failed };

std::string_view to_string(Status s);

struct Verdict {
  Status status = Status::proven;
  std::string window;
  // Offending elements, in the order the statement quantifies over them.
  std::vector<Element> witness;
  std::string detail;

  bool ok() const { return status != Status::failed; }

  static Verdict pass(bool exhaustive, std::string window) {
    return Verdict{exhaustive ? Status::proven : Status::holds_on_window, std::move(window), {}, {}};
  }
  static Verdict fail(std::string window, std::vector<Element> witness, std::string detail) {
    return Verdict{Status::failed, std::move(window), std::move(witness), std::move(detail)};
  }
};

/// Failed wins (the first failure in argument order); otherwise proven only
/// if every part is proven. Windows are joined.
Verdict combine(const std::vector<Verdict>& parts);

}  // namespace mulhopf
