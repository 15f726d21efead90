#include "hfl/int_matrix.hpp"

#include <sstream>

namespace hfl::linalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<BigInt>> init) {
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto &row : init) {
    if (row.size() != cols_)
      throw DimensionError("ragged initializer for IntMatrix");
    for (const auto &v : row) entries_.push_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::zero(std::size_t rows, std::size_t cols) {
  return IntMatrix(rows, cols);
}

IntMatrix IntMatrix::diagonal(const std::vector<BigInt> &d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (const auto &v : entries_)
    if (v != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix &rhs) const {
  if (cols_ != rhs.rows_)
    throw DimensionError("matrix product dimension mismatch");
  IntMatrix p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt &a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) p.at(i, j) += a * rhs.at(k, j);
    }
  return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix &rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionError("matrix sum dimension mismatch");
  IntMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    s.entries_[i] = entries_[i] + rhs.entries_[i];
  return s;
}

IntMatrix IntMatrix::direct_sum(const IntMatrix &rhs) const {
  IntMatrix s(rows_ + rhs.rows_, cols_ + rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(i, j);
  for (std::size_t i = 0; i < rhs.rows_; ++i)
    for (std::size_t j = 0; j < rhs.cols_; ++j) s.at(rows_ + i, cols_ + j) = rhs.at(i, j);
  return s;
}

IntMatrix IntMatrix::drop_row_col(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_)
    throw DimensionError("drop_row_col index out of range");
  IntMatrix s(rows_ - 1, cols_ - 1);
  for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
      if (c == j) continue;
      s.at(rr, cc) = at(r, c);
      ++cc;
    }
    ++rr;
  }
  return s;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << at(i, j);
  }
  out << "]";
  return out.str();
}

BigInt determinant(const IntMatrix &m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    // Bareiss step: exact division by the previous pivot keeps entries
    // integral (each entry is a minor of the input).
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

BigInt determinant_cofactor(const IntMatrix &m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  BigInt acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    BigInt term = m.at(0, j) * determinant_cofactor(m.drop_row_col(0, j));
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

std::int64_t mod_reduce(const BigInt &v, std::int64_t q) {
  BigInt r = v % q;
  if (r < 0) r += q;
  return static_cast<std::int64_t>(r);
}

std::int64_t determinant_mod(const IntMatrix &m, std::int64_t q) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  if (q < 2) throw ValidationError("modulus must be >= 2");
  const std::size_t n = m.rows();
  if (n == 0) return 1 % q;

  // Reduce first, then take the exact determinant of the small-entry lift.
  // Elimination directly in Z/q is awkward for composite q; the lift's
  // entries are < q so the Bareiss intermediates stay modest.
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = mod_reduce(m.at(i, j), q);
  return mod_reduce(determinant(a), q);
}

std::vector<std::vector<BigRat>> rational_inverse(const IntMatrix &m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  // Gauss-Jordan on [m | I] over exact rationals.
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = BigRat(m.at(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw SingularMatrixError("matrix is singular over the rationals");
    std::swap(a[k], a[p]);
    BigRat piv = a[k][k];
    for (std::size_t j = 0; j < 2 * n; ++j) a[k][j] /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      BigRat f = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<std::vector<BigRat>> inv(n, std::vector<BigRat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

IntMatrix unimodular_inverse(const IntMatrix &m) {
  BigInt d = determinant(m);
  if (d != 1 && d != -1)
    throw ValidationError("unimodular_inverse requires determinant +-1");
  const std::size_t n = m.rows();
  auto inv = rational_inverse(m);
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.at(i, j) = boost::multiprecision::numerator(inv[i][j]);
  return r;
}

} // namespace hfl::linalg
