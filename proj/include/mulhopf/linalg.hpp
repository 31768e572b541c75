#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "mulhopf/sparse.hpp"

namespace mulhopf {

using Vector = SparseVector<std::size_t>;

/// Column-stored sparse matrix with explicit row/column counts.
class SparseMatrix {
 public:
  SparseMatrix(Field field, std::size_t rows, std::size_t cols);
  /// Throws InputError if a column is out of range or has a row index >= rows.
  SparseMatrix(Field field, std::size_t rows, std::vector<Vector> columns);

  static SparseMatrix from_rows(Field field, std::size_t cols,
                                const std::vector<std::vector<Scalar>>& dense_rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Vector& column(std::size_t j) const { return columns_.at(j); }
  Scalar at(std::size_t r, std::size_t c) const { return columns_.at(c).coeff(r); }

  void set(std::size_t r, std::size_t c, const Scalar& value);
  Vector apply(const Vector& x) const;

 private:
  Field field_;
  std::size_t rows_;
  std::vector<Vector> columns_;
};

/// Incremental exact echelon form over a set of column vectors. Each stored
/// row remembers which combination of inserted columns produced it, so a
/// target in the span can be written back in terms of the original columns.
/// Pivot choice is the smallest key still present, so results depend only on
/// insertion order.
template <class Key>
class SpanSolver {
 public:
  explicit SpanSolver(Field field) : field_(field) {}

  std::size_t add(const SparseVector<Key>& column) {
    const std::size_t index = columns_++;
    std::map<Key, Scalar> work(column.begin(), column.end());
    Accumulator<std::size_t> combo(field_);
    combo.add(index, Scalar::one(field_));
    reduce(work, combo);
    if (work.empty()) {
      dependencies_.push_back(combo.finish());
      return index;
    }
    const Scalar inv = work.begin()->second.inverse();
    std::vector<typename SparseVector<Key>::Term> terms;
    terms.reserve(work.size());
    for (const auto& [k, c] : work) terms.emplace_back(k, inv * c);
    pivots_.emplace(work.begin()->first, rows_.size());
    rows_.push_back(Row{SparseVector<Key>(field_, std::move(terms)), inv * combo.finish()});
    return index;
  }

  /// Coefficients x over the inserted columns with Σ x_j col_j = target.
  std::optional<Vector> express(const SparseVector<Key>& target) const {
    std::map<Key, Scalar> work(target.begin(), target.end());
    Accumulator<std::size_t> combo(field_);
    reduce(work, combo);
    if (!work.empty()) return std::nullopt;
    return -combo.finish();
  }

  /// Kernel basis: combinations of inserted columns that vanish.
  const std::vector<Vector>& dependencies() const { return dependencies_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t columns() const { return columns_; }

 private:
  struct Row {
    SparseVector<Key> vec;  // leading coefficient 1 at its pivot
    Vector combo;
  };

  // Eliminates every pivot key from `work`; combo accumulates -Σ c_i row_i.combo.
  void reduce(std::map<Key, Scalar>& work, Accumulator<std::size_t>& combo) const {
    auto it = work.begin();
    while (it != work.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const Key key = it->first;
      const Scalar c = it->second;
      const Row& row = rows_[p->second];
      for (const auto& [k, x] : row.vec) {
        auto [w, inserted] = work.try_emplace(k, -(c * x));
        if (!inserted) {
          w->second -= c * x;
          if (w->second.is_zero()) work.erase(w);
        }
      }
      combo.add(row.combo, -c);
      it = work.lower_bound(key);
    }
  }

  Field field_;
  std::size_t columns_ = 0;
  std::map<Key, std::size_t> pivots_;
  std::vector<Row> rows_;
  std::vector<Vector> dependencies_;
};

/// Some x with M·x = b (verified by substitution), or nullopt if inconsistent.
/// Throws InputError if b has an index outside the row range.
std::optional<Vector> solve_linear(const SparseMatrix& m, const Vector& b);

/// A basis of the null space; empty iff M is injective.
std::vector<Vector> kernel_basis(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

}  // namespace mulhopf
