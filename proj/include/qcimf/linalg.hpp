#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qcimf/scalar.hpp"

namespace qcimf {

// Dense matrix over an exact field.  All elimination is exact; there is no
// pivoting heuristic beyond "first nonzero".
class Mat {
 public:
  Mat() = default;  // 0 x 0 over the rationals
  Mat(FieldSpec f, std::size_t rows, std::size_t cols);  // zero-filled
  static Mat identity(FieldSpec f, std::size_t n);
  static Mat from_rows(FieldSpec f, const std::vector<std::vector<Scalar>>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j);
  const Scalar& at(std::size_t i, std::size_t j) const;

  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  Mat operator-() const;
  Mat scale(const Scalar& s) const;
  Mat transpose() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  Mat submatrix(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& m);
  Mat row(std::size_t i) const;
  Mat col(std::size_t j) const;

  // Gauss-Jordan to reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref_inplace();

  std::size_t rank() const;
  Scalar det() const;        // square only
  Mat inverse() const;       // square; singular -> domain_error
  Mat pow(std::size_t e) const;

  // Basis of {v : A v = 0} as columns.
  Mat right_kernel() const;
  // Basis of {u : u A = 0} as rows.
  Mat left_kernel() const;

  // Solves A X = B exactly (any solution); inconsistent -> domain_error.
  Mat solve(const Mat& B) const;

  std::string str() const;

 private:
  FieldSpec field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;

  void check_same_shape(const Mat& o) const;
  void check_field(const Mat& o) const;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

// Row space in reduced echelon form with its pivot columns; the unique
// canonical basis of the span of the rows.
struct EchelonBasis {
  Mat rows;
  std::vector<std::size_t> pivots;
};
EchelonBasis echelon_row_basis(const Mat& a);

// Coordinates of v (a 1 x n row) with respect to an echelon basis; throws
// domain_error when v lies outside the span.
std::vector<Scalar> coords_in_echelon(const EchelonBasis& basis, const Mat& v);

// Sizes (descending) of the Jordan blocks of M at eigenvalue mu, computed from
// ranks of powers of (M - mu I).  The sum is the algebraic multiplicity.
std::vector<std::size_t> jordan_block_sizes(const Mat& m, const Scalar& mu);

// Upper-triangular Jordan block J_n(lambda): lambda on the diagonal, ones on
// the superdiagonal.
Mat jordan_upper(FieldSpec f, std::size_t n, const Scalar& lambda);

}  // namespace qcimf
