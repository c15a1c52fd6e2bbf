#pragma once

// Exact sparse linear algebra over the rationals.

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace quillen {

using Rational = mpq_class;

/// Canonical num/den (den != 0).
Rational make_rational(long num, long den = 1);

/// Sorted by index, no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;
using DenseVector = std::vector<Rational>;

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static SparseMatrix from_rows(std::size_t cols, std::vector<SparseVector> rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  /// Absent positions read as 0.
  Rational at(std::size_t r, std::size_t c) const;
  /// Setting 0 erases the entry.
  void set(std::size_t r, std::size_t c, const Rational& value);

  const SparseVector& row(std::size_t r) const { return rows_.at(r); }
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries() const;
  std::vector<std::vector<Rational>> to_dense() const;

  DenseVector multiply(const DenseVector& x) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

/// Incrementally maintained reduced row echelon basis. Every stored row is
/// normalized (leading 1) and has zeros in all other pivot columns.
class EchelonBasis {
 public:
  /// Residual of v after elimination against the stored rows.
  SparseVector reduce(const SparseVector& v) const;
  /// Adds v; returns false when v is already in the span.
  bool insert(const SparseVector& v);
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  std::size_t rank() const noexcept { return rows_.size(); }
  std::vector<std::size_t> pivots() const;
  /// Rows ordered by pivot column.
  std::vector<SparseVector> rows() const;
  const SparseVector* row_for_pivot(std::size_t pivot) const;

 private:
  std::map<std::size_t, SparseVector> rows_;
};

struct RrefResult {
  SparseMatrix reduced;
  std::vector<std::size_t> pivots;
};

struct LinearSolution {
  DenseVector particular;
  std::vector<DenseVector> kernel;
};

/// Pivot = lowest-index nonzero column; rows are consumed in order.
RrefResult rref(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

/// Free variables are 0 in the particular solution; the kernel basis has one
/// vector per free column (that column set to 1), in column order.
std::optional<LinearSolution> solve(const SparseMatrix& m, const DenseVector& b);

std::vector<DenseVector> kernel_basis(const SparseMatrix& m);

// Sparse vector helpers.
SparseVector to_sparse(const DenseVector& v);
/// y += a * x
void axpy(SparseVector& y, const Rational& a, const SparseVector& x);

}  // namespace quillen
