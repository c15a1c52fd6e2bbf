#include "quillen/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace quillen {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    m.rows_[r] = to_sparse(rows[r]);
  }
  return m;
}

SparseMatrix SparseMatrix::from_rows(std::size_t cols, std::vector<SparseVector> rows) {
  SparseMatrix m;
  m.cols_ = cols;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector clean;
    for (auto& [c, v] : row) {
      if (c >= cols) throw std::out_of_range("column index out of range");
      if (!clean.empty() && clean.back().first == c)
        throw std::invalid_argument("duplicate matrix position");
      if (sgn(v) != 0) clean.emplace_back(c, std::move(v));
    }
    m.rows_.push_back(std::move(clean));
  }
  return m;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols_) throw std::out_of_range("matrix index out of range");
  const auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows() || c >= cols_) throw std::out_of_range("matrix index out of range");
  auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  bool present = it != row.end() && it->first == c;
  if (sgn(value) == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = value;
  } else {
    row.insert(it, {c, value});
  }
}

std::vector<std::tuple<std::size_t, std::size_t, Rational>> SparseMatrix::entries() const {
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> out;
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) out.emplace_back(r, c, v);
  return out;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Rational>> out(rows(), std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) out[r][c] = v;
  return out;
}

DenseVector SparseMatrix::multiply(const DenseVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in multiply");
  DenseVector y(rows());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
  return y;
}

SparseVector to_sparse(const DenseVector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (sgn(a) == 0 || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto yi = y.begin();
  auto xi = x.begin();
  while (yi != y.end() || xi != x.end()) {
    if (xi == x.end() || (yi != y.end() && yi->first < xi->first)) {
      out.push_back(std::move(*yi++));
    } else if (yi == y.end() || xi->first < yi->first) {
      out.emplace_back(xi->first, a * xi->second);
      ++xi;
    } else {
      Rational s = yi->second + a * xi->second;
      if (sgn(s) != 0) out.emplace_back(yi->first, std::move(s));
      ++yi;
      ++xi;
    }
  }
  y = std::move(out);
}

SparseVector EchelonBasis::reduce(const SparseVector& v) const {
  SparseVector out = v;
  if (rows_.empty()) return out;
  for (const auto& [col, coeff] : v) {
    auto it = rows_.find(col);
    if (it != rows_.end()) axpy(out, -coeff, it->second);
  }
  return out;
}

bool EchelonBasis::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  Rational inv = 1 / r.front().second;
  for (auto& e : r) e.second *= inv;
  std::size_t pivot = r.front().first;
  for (auto& [p, row] : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), pivot,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == pivot) {
      Rational c = it->second;
      axpy(row, -c, r);
    }
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::vector<SparseVector> EchelonBasis::rows() const {
  std::vector<SparseVector> out;
  for (const auto& [p, row] : rows_) out.push_back(row);
  return out;
}

const SparseVector* EchelonBasis::row_for_pivot(std::size_t pivot) const {
  auto it = rows_.find(pivot);
  return it == rows_.end() ? nullptr : &it->second;
}

RrefResult rref(const SparseMatrix& m) {
  EchelonBasis basis;
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  std::vector<SparseVector> rows = basis.rows();
  rows.resize(m.rows());
  return {SparseMatrix::from_rows(m.cols(), std::move(rows)), basis.pivots()};
}

std::size_t rank(const SparseMatrix& m) {
  EchelonBasis basis;
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return basis.rank();
}

namespace {

std::vector<DenseVector> kernel_from_echelon(const EchelonBasis& basis, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : basis.pivots())
    if (p < cols) is_pivot[p] = true;
  std::vector<DenseVector> kernel;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    DenseVector k(cols);
    k[f] = 1;
    for (std::size_t p : basis.pivots()) {
      if (p >= cols) continue;
      const SparseVector& row = *basis.row_for_pivot(p);
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const auto& e, std::size_t col) { return e.first < col; });
      if (it != row.end() && it->first == f) k[p] = -it->second;
    }
    kernel.push_back(std::move(k));
  }
  return kernel;
}

}  // namespace

std::optional<LinearSolution> solve(const SparseMatrix& m, const DenseVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side has wrong length");
  const std::size_t cols = m.cols();
  EchelonBasis basis;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVector row = m.row(r);
    if (sgn(b[r]) != 0) row.emplace_back(cols, b[r]);
    basis.insert(row);
  }
  if (basis.row_for_pivot(cols) != nullptr) return std::nullopt;

  LinearSolution sol;
  sol.particular.assign(cols, 0);
  for (std::size_t p : basis.pivots()) {
    const SparseVector& row = *basis.row_for_pivot(p);
    if (!row.empty() && row.back().first == cols) sol.particular[p] = row.back().second;
  }
  sol.kernel = kernel_from_echelon(basis, cols);
  return sol;
}

std::vector<DenseVector> kernel_basis(const SparseMatrix& m) {
  EchelonBasis basis;
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return kernel_from_echelon(basis, m.cols());
}

}  // namespace quillen
