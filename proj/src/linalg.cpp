#include "mulhopf/linalg.hpp"

#include <string>

#include "mulhopf/errors.hpp"

namespace mulhopf {

namespace {

void check_rows(const Vector& v, std::size_t rows, const char* what) {
  if (!v.is_zero() && (v.end() - 1)->first >= rows) {
    throw InputError(std::string(what) + " has index " + std::to_string((v.end() - 1)->first) +
                     " outside " + std::to_string(rows) + " rows");
  }
}

}  // namespace

SparseMatrix::SparseMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), columns_(cols, Vector(field)) {}

SparseMatrix::SparseMatrix(Field field, std::size_t rows, std::vector<Vector> columns)
    : field_(field), rows_(rows), columns_(std::move(columns)) {
  for (const auto& c : columns_) check_rows(c, rows_, "matrix column");
}

SparseMatrix SparseMatrix::from_rows(Field field, std::size_t cols,
                                     const std::vector<std::vector<Scalar>>& dense_rows) {
  SparseMatrix m(field, dense_rows.size(), cols);
  for (std::size_t r = 0; r < dense_rows.size(); ++r) {
    if (dense_rows[r].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dense_rows[r][c]);
  }
  return m;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& value) {
  if (r >= rows_ || c >= columns_.size()) throw InputError("matrix index out of range");
  auto& col = columns_[c];
  col = col - Vector::single(r, col.coeff(r)) + Vector::single(r, value);
}

Vector SparseMatrix::apply(const Vector& x) const {
  if (!x.is_zero() && (x.end() - 1)->first >= columns_.size()) {
    throw InputError("vector length does not match matrix columns");
  }
  Accumulator<std::size_t> acc(field_);
  for (const auto& [j, c] : x) acc.add(columns_[j], c);
  return acc.finish();
}

std::optional<Vector> solve_linear(const SparseMatrix& m, const Vector& b) {
  check_rows(b, m.rows(), "right-hand side");
  SpanSolver<std::size_t> solver(m.field());
  for (std::size_t j = 0; j < m.cols(); ++j) solver.add(m.column(j));
  auto x = solver.express(b);
  if (!x) return std::nullopt;
  if (!(m.apply(*x) == b)) {
    throw std::logic_error("solve_linear: substitution check failed");
  }
  return x;
}

std::vector<Vector> kernel_basis(const SparseMatrix& m) {
  SpanSolver<std::size_t> solver(m.field());
  for (std::size_t j = 0; j < m.cols(); ++j) solver.add(m.column(j));
  return solver.dependencies();
}

std::size_t rank(const SparseMatrix& m) {
  SpanSolver<std::size_t> solver(m.field());
  for (std::size_t j = 0; j < m.cols(); ++j) solver.add(m.column(j));
  return solver.rank();
}

}  // namespace mulhopf
