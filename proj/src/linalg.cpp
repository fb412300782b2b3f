#include "qcimf/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace qcimf {

Mat::Mat(FieldSpec f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

Mat Mat::identity(FieldSpec f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Mat Mat::from_rows(FieldSpec f, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw domain_error("ragged rows in matrix literal");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Scalar& Mat::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw domain_error("matrix index out of range");
  return a_[i * cols_ + j];
}

const Scalar& Mat::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw domain_error("matrix index out of range");
  return a_[i * cols_ + j];
}

void Mat::check_same_shape(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix shape mismatch");
}

void Mat::check_field(const Mat& o) const {
  if (field_ != o.field_) throw domain_error("matrix field mismatch");
}

Mat operator+(const Mat& a, const Mat& b) {
  a.check_same_shape(b);
  a.check_field(b);
  Mat r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  a.check_same_shape(b);
  a.check_field(b);
  Mat r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  a.check_field(b);
  if (a.cols_ != b.rows_) throw domain_error("matrix product shape mismatch");
  Mat r(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        r.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& s : r.a_) s = -s;
  return r;
}

Mat Mat::scale(const Scalar& s) const {
  Mat r = *this;
  for (auto& v : r.a_) v = s * v;
  return r;
}

Mat Mat::transpose() const {
  Mat r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  }
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  check_field(o);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] != o.a_[i]) return false;
  }
  return true;
}

bool Mat::is_zero() const {
  for (const auto& s : a_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  }
  return true;
}

Mat Mat::submatrix(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_) throw domain_error("submatrix out of range");
  Mat m(field_, h, w);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  }
  return m;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw domain_error("block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < m.cols_; ++j) at(r0 + i, c0 + j) = m.at(i, j);
  }
}

Mat Mat::row(std::size_t i) const { return submatrix(i, 0, 1, cols_); }
Mat Mat::col(std::size_t j) const { return submatrix(0, j, rows_, 1); }

std::vector<std::size_t> Mat::rref_inplace() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && at(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
    }
    Scalar inv = at(r, c).inv();
    for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c).is_zero()) continue;
      Scalar f = at(i, c);
      for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t Mat::rank() const {
  Mat m = *this;
  return m.rref_inplace().size();
}

Scalar Mat::det() const {
  if (rows_ != cols_) throw domain_error("determinant of a nonsquare matrix");
  Mat m = *this;
  Scalar d = Scalar::one(field_);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t p = c;
    while (p < rows_ && m.at(p, c).is_zero()) ++p;
    if (p == rows_) return Scalar::zero(field_);
    if (p != c) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Scalar inv = m.at(c, c).inv();
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c) * inv;
      for (std::size_t j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw domain_error("inverse of a nonsquare matrix");
  Mat aug = hstack(*this, identity(field_, rows_));
  auto pivots = aug.rref_inplace();
  if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() >= rows_)) {
    throw domain_error("matrix is singular");
  }
  return aug.submatrix(0, rows_, rows_, rows_);
}

Mat Mat::pow(std::size_t e) const {
  if (rows_ != cols_) throw domain_error("power of a nonsquare matrix");
  Mat r = identity(field_, rows_);
  Mat b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Mat Mat::right_kernel() const {
  Mat m = *this;
  auto pivots = m.rref_inplace();
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (pi < pivots.size() && pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  Mat k(field_, cols_, free_cols.size());
  for (std::size_t fj = 0; fj < free_cols.size(); ++fj) {
    std::size_t c = free_cols[fj];
    k.at(c, fj) = Scalar::one(field_);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
      k.at(pivots[pi], fj) = -m.at(pi, c);
    }
  }
  return k;
}

Mat Mat::left_kernel() const { return transpose().right_kernel().transpose(); }

Mat Mat::solve(const Mat& B) const {
  check_field(B);
  if (B.rows_ != rows_) throw domain_error("solve shape mismatch");
  Mat aug = hstack(*this, B);
  auto pivots = aug.rref_inplace();
  // Pivots inside the right block mean an inconsistent system.
  for (auto p : pivots) {
    if (p >= cols_) throw domain_error("inconsistent linear system");
  }
  Mat x(field_, cols_, B.cols_);
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
    for (std::size_t j = 0; j < B.cols_; ++j) {
      x.at(pivots[pi], j) = aug.at(pi, cols_ + j);
    }
  }
  return x;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw domain_error("hstack row mismatch");
  Mat m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw domain_error("vstack column mismatch");
  Mat m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

EchelonBasis echelon_row_basis(const Mat& a) {
  Mat m = a;
  auto pivots = m.rref_inplace();
  EchelonBasis basis;
  basis.rows = m.submatrix(0, 0, pivots.size(), a.cols());
  basis.pivots = std::move(pivots);
  return basis;
}

std::vector<Scalar> coords_in_echelon(const EchelonBasis& basis, const Mat& v) {
  if (v.rows() != 1 || v.cols() != basis.rows.cols()) {
    throw domain_error("coords_in_echelon expects a row vector of matching width");
  }
  std::vector<Scalar> coords;
  coords.reserve(basis.pivots.size());
  for (auto p : basis.pivots) coords.push_back(v.at(0, p));
  // Because the basis is in reduced echelon form, membership in the span is
  // equivalent to exact reconstruction from the pivot coordinates.
  Mat rebuilt(v.field(), 1, v.cols());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < v.cols(); ++j) {
      rebuilt.at(0, j) += coords[i] * basis.rows.at(i, j);
    }
  }
  if (!(rebuilt == v)) throw domain_error("vector outside the spanned subspace");
  return coords;
}

std::vector<std::size_t> jordan_block_sizes(const Mat& m, const Scalar& mu) {
  if (m.rows() != m.cols()) throw domain_error("jordan_block_sizes needs a square matrix");
  std::size_t n = m.rows();
  Mat shifted = m - Mat::identity(m.field(), n).scale(mu);
  std::vector<std::size_t> ranks{n};
  Mat p = Mat::identity(m.field(), n);
  while (true) {
    p = p * shifted;
    std::size_t r = p.rank();
    ranks.push_back(r);
    if (r == ranks[ranks.size() - 2]) break;
  }
  std::vector<std::size_t> sizes;
  // ranks[j-1] - ranks[j] counts blocks of size >= j.
  for (std::size_t j = 1; j + 1 <= ranks.size(); ++j) {
    std::size_t ge_j = ranks[j - 1] - ranks[j];
    std::size_t ge_j1 = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
    for (std::size_t b = 0; b < ge_j - ge_j1; ++b) sizes.push_back(j);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

Mat jordan_upper(FieldSpec f, std::size_t n, const Scalar& lambda) {
  Mat j(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j.at(i, i) = lambda;
    if (i + 1 < n) j.at(i, i + 1) = Scalar::one(f);
  }
  return j;
}

}  // namespace qcimf
