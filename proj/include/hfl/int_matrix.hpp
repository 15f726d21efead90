#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hfl/errors.hpp"

namespace hfl {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

} // namespace hfl

namespace hfl::linalg {

// dense integer matrix with arbitrary-precision entries, row-major storage.
// the 0x0 matrix is legal and acts as the identity for direct sums; its
// determinant is 1 (empty product), which the degenerate decompositions rely
// on.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<BigInt>> init);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols);
  static IntMatrix diagonal(const std::vector<BigInt> &d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;

  BigInt &at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const BigInt &at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  const std::vector<BigInt> &entries() const { return entries_; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix &rhs) const;
  IntMatrix operator+(const IntMatrix &rhs) const;
  bool operator==(const IntMatrix &) const = default;

  // block diagonal assembly; either side may be 0x0
  IntMatrix direct_sum(const IntMatrix &rhs) const;

  // copy without row i and column j
  IntMatrix drop_row_col(std::size_t i, std::size_t j) const;

  std::string to_string() const;

private:
  std::size_t rows_, cols_;
  std::vector<BigInt> entries_;
};

// exact determinant by fraction-free (Bareiss) elimination; intermediates are
// minors of the input, so everything stays integral
BigInt determinant(const IntMatrix &m);

// naive cofactor expansion, kept as an independent oracle for small sizes
BigInt determinant_cofactor(const IntMatrix &m);

// determinant in Z/qZ; q need not be prime
std::int64_t determinant_mod(const IntMatrix &m, std::int64_t q);

// canonical residue of v in [0, q)
std::int64_t mod_reduce(const BigInt &v, std::int64_t q);

// exact rational inverse via Gauss-Jordan; throws SingularMatrixError
std::vector<std::vector<BigRat>> rational_inverse(const IntMatrix &m);

// integer inverse of a matrix with determinant +-1
IntMatrix unimodular_inverse(const IntMatrix &m);

} // namespace hfl::linalg
