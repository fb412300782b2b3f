#include "qcimf/factorization.hpp"

#include <optional>
#include <sstream>
#include <utility>

namespace qcimf {

BMatrix::BMatrix(AlgebraCtx ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(rows * cols, b_zero(ctx_)) {}

BMatrix BMatrix::identity(const AlgebraCtx& ctx, std::size_t n) {
  BMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = b_one(ctx);
  return m;
}

BMatrix BMatrix::from_entries(const AlgebraCtx& ctx,
                              const std::vector<std::vector<BElt>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.front().size();
  BMatrix m(ctx, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw domain_error("ragged entry grid");
    for (std::size_t j = 0; j < c; ++j) {
      for (const Scalar& s : rows[i][j].c) {
        if (s.field() != ctx.field) throw domain_error("entry field does not match the context");
      }
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

BMatrix BMatrix::from_components(const AlgebraCtx& ctx, const std::array<Mat, 5>& comp) {
  std::size_t r = comp[0].rows(), c = comp[0].cols();
  for (const Mat& m : comp) {
    if (m.rows() != r || m.cols() != c) throw domain_error("component shapes differ");
    if (m.field() != ctx.field) throw domain_error("component field does not match the context");
  }
  BMatrix out(ctx, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t s = 0; s < 5; ++s) out.at(i, j).c[s] = comp[s].at(i, j);
    }
  }
  return out;
}

BMatrix BMatrix::scalar_embed(const AlgebraCtx& ctx, const Mat& m) {
  if (m.field() != ctx.field) throw domain_error("matrix field does not match the context");
  BMatrix out(ctx, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j).c[kOne] = m.at(i, j);
  }
  return out;
}

BElt& BMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw domain_error("entry index out of range");
  return e_[i * cols_ + j];
}

const BElt& BMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw domain_error("entry index out of range");
  return e_[i * cols_ + j];
}

void BMatrix::check_shape(const BMatrix& o) const {
  if (ctx_ != o.ctx_) throw domain_error("context mismatch");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("shape mismatch");
}

BMatrix operator+(const BMatrix& a, const BMatrix& b) {
  a.check_shape(b);
  BMatrix r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
  return r;
}

BMatrix operator-(const BMatrix& a, const BMatrix& b) { return a + (-b); }

BMatrix BMatrix::operator-() const {
  BMatrix r = *this;
  for (auto& v : r.e_) v = -v;
  return r;
}

BMatrix operator*(const BMatrix& a, const BMatrix& b) {
  if (a.ctx_ != b.ctx_) throw domain_error("context mismatch");
  if (a.cols_ != b.rows_) throw domain_error("inner dimensions differ");
  BMatrix r(a.ctx_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t m = 0; m < a.cols_; ++m) {
      if (b_is_zero(a.at(i, m))) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        r.at(i, j) = r.at(i, j) + b_mul(a.at(i, m), b.at(m, j), a.ctx_);
      }
    }
  }
  return r;
}

bool BMatrix::operator==(const BMatrix& o) const {
  if (ctx_ != o.ctx_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] != o.e_[i]) return false;
  }
  return true;
}

bool BMatrix::is_zero() const {
  for (const auto& v : e_) {
    if (!b_is_zero(v)) return false;
  }
  return true;
}

BMatrix BMatrix::nu_map(long long power) const {
  BMatrix r = *this;
  for (auto& v : r.e_) v = nu(v, ctx_, power);
  return r;
}

Mat BMatrix::component(std::size_t slot) const {
  if (slot >= 5) throw domain_error("basis slot out of range");
  Mat m(ctx_.field, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).c[slot];
  }
  return m;
}

std::array<Mat, 5> BMatrix::components() const {
  return {component(0), component(1), component(2), component(3), component(4)};
}

BMatrix BMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_) throw domain_error("submatrix out of range");
  BMatrix m(ctx_, h, w);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < w; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  }
  return m;
}

void BMatrix::set_block(std::size_t r0, std::size_t c0, const BMatrix& m) {
  if (ctx_ != m.ctx_) throw domain_error("context mismatch");
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw domain_error("block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < m.cols_; ++j) at(r0 + i, c0 + j) = m.at(i, j);
  }
}

std::string BMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[ ";
    for (std::size_t j = 0; j < cols_; ++j) {
      os << b_str(at(i, j));
      if (j + 1 < cols_) os << " | ";
    }
    os << " ]\n";
  }
  return os.str();
}

BMatrix bmat_inverse(const BMatrix& m) {
  if (m.rows() != m.cols()) throw domain_error("inverse of a nonsquare matrix");
  const AlgebraCtx& ctx = m.ctx();
  Mat scalar_part = m.component(kOne);
  Mat s_inv = scalar_part.inverse();  // throws domain_error when singular
  BMatrix s_inv_b = BMatrix::scalar_embed(ctx, s_inv);
  BMatrix radical = m - BMatrix::scalar_embed(ctx, scalar_part);
  // m = s (I + n) with n = s^{-1} radical; n has radical entries so n^3 = 0.
  BMatrix n = s_inv_b * radical;
  BMatrix id = BMatrix::identity(ctx, m.rows());
  BMatrix inv = (id - n + n * n) * s_inv_b;
  if (!((m * inv) == id) || !((inv * m) == id)) {
    throw axiom_error("computed inverse failed verification");
  }
  return inv;
}

namespace {

BMatrix w_identity(const AlgebraCtx& ctx, std::size_t n) {
  BMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = w_elt(ctx);
  return m;
}

void check_equals_or_throw(const BMatrix& got, const BMatrix& want, const std::string& identity) {
  for (std::size_t i = 0; i < got.rows(); ++i) {
    for (std::size_t j = 0; j < got.cols(); ++j) {
      if (got.at(i, j) != want.at(i, j)) {
        std::ostringstream os;
        os << "identity " << identity << " fails at entry (" << i << ", " << j
           << "): got " << b_str(got.at(i, j)) << ", want " << b_str(want.at(i, j));
        throw axiom_error(os.str(), identity, i, j);
      }
    }
  }
}

}  // namespace

Factorization::Factorization(const AlgebraCtx& ctx, const BMatrix& C, const BMatrix& D)
    : ctx_(ctx), rank_(C.rows()), c_(C), d_(D) {
  if (C.ctx() != ctx || D.ctx() != ctx) throw domain_error("context mismatch");
  if (C.rows() != C.cols() || D.rows() != D.cols() || C.rows() != D.rows()) {
    throw domain_error("factorization matrices must be square of equal rank");
  }
  BMatrix wi = w_identity(ctx_, rank_);
  check_equals_or_throw(c_.nu_map(1) * d_, wi, "nu(C) D = w I");
  check_equals_or_throw(d_ * c_, wi, "D C = w I");
}

Factorization validate_factorization(const BMatrix& C, const BMatrix& D,
                                     const AlgebraCtx& ctx) {
  return Factorization(ctx, C, D);
}

ComponentDecomposition decompose(const BMatrix& c) {
  return {c.component(kOne), c.component(kX), c.component(kY), c.component(kXY),
          c.component(kYX)};
}

ComponentRanks check_component_invertibility(const Factorization& f) {
  ComponentDecomposition c = decompose(f.C());
  ComponentDecomposition d = decompose(f.D());
  if (!c.c0.is_zero() || !d.c0.is_zero()) {
    throw domain_error("factorization has unit entries; run strip_units first");
  }
  return {c.c1.rank(), c.c2.rank(), d.c1.rank(), d.c2.rank()};
}

Factorization from_invertible_pair(const Mat& c1, const Mat& c2, const AlgebraCtx& ctx) {
  if (c1.rows() != c1.cols() || c2.rows() != c2.cols() || c1.rows() != c2.rows()) {
    throw domain_error("component matrices must be square of equal size");
  }
  if (c1.field() != ctx.field || c2.field() != ctx.field) {
    throw domain_error("component field does not match the context");
  }
  if (c1.det().is_zero() || c2.det().is_zero()) {
    throw domain_error("component matrix is singular");
  }
  std::size_t n = c1.rows();
  Mat zero(ctx.field, n, n);
  BMatrix C = BMatrix::from_components(ctx, {zero, c1, c2, zero, zero});
  BMatrix D = BMatrix::from_components(
      ctx, {zero, c2.inverse(), c1.inverse().scale(-ctx.q), zero, zero});
  return Factorization(ctx, C, D);
}

Factorization canonical_factorization(std::size_t n, const Scalar& lambda,
                                      const AlgebraCtx& ctx) {
  if (n < 1) throw domain_error("rank must be at least 1");
  if (lambda.field() != ctx.field) throw domain_error("eigenvalue field does not match the context");
  if (lambda.is_zero()) {
    throw domain_error("eigenvalue zero makes the Jordan block singular");
  }
  Mat j = jordan_upper(ctx.field, n, lambda);
  return from_invertible_pair(Mat::identity(ctx.field, n), j.scale(ctx.qinv), ctx);
}

Factorization suspension(const Factorization& f) {
  return Factorization(f.ctx(), -f.D().nu_map(-1), -f.C());
}

FactMorphism::FactMorphism(const Factorization& source, const Factorization& target,
                           const BMatrix& P, const BMatrix& Q)
    : source_(source), target_(target), p_(P), q_(Q) {
  if (source_.ctx() != target_.ctx() || p_.ctx() != source_.ctx() || q_.ctx() != source_.ctx()) {
    throw domain_error("context mismatch");
  }
  std::size_t r1 = source_.rank(), r2 = target_.rank();
  if (p_.rows() != r1 || p_.cols() != r2 || q_.rows() != r1 || q_.cols() != r2) {
    throw domain_error("morphism matrices must be source-rank by target-rank");
  }
  check_equals_or_throw(source_.C() * q_, p_ * target_.C(), "C Q = P C'");
  check_equals_or_throw(source_.D() * p_, q_.nu_map(1) * target_.D(), "D P = nu(Q) D'");
}

FactMorphism FactMorphism::identity(const Factorization& f) {
  BMatrix i = BMatrix::identity(f.ctx(), f.rank());
  return FactMorphism(f, f, i, i);
}

FactMorphism FactMorphism::zero(const Factorization& source, const Factorization& target) {
  BMatrix z(source.ctx(), source.rank(), target.rank());
  return FactMorphism(source, target, z, z);
}

FactMorphism operator+(const FactMorphism& a, const FactMorphism& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) {
    throw domain_error("morphism endpoints differ");
  }
  return FactMorphism(a.source_, a.target_, a.p_ + b.p_, a.q_ + b.q_);
}

FactMorphism operator-(const FactMorphism& a, const FactMorphism& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_) {
    throw domain_error("morphism endpoints differ");
  }
  return FactMorphism(a.source_, a.target_, a.p_ - b.p_, a.q_ - b.q_);
}

FactMorphism compose(const FactMorphism& first, const FactMorphism& second) {
  if (first.target() != second.source()) throw domain_error("morphisms do not compose");
  return FactMorphism(first.source(), second.target(), first.P() * second.P(),
                      first.Q() * second.Q());
}

Factorization mapping_cone(const FactMorphism& theta) {
  const AlgebraCtx& ctx = theta.source().ctx();
  std::size_t r1 = theta.source().rank(), r2 = theta.target().rank();
  BMatrix c(ctx, r1 + r2, r1 + r2), d(ctx, r1 + r2, r1 + r2);
  c.set_block(0, 0, -theta.source().D().nu_map(-1));
  c.set_block(0, r1, theta.Q());
  c.set_block(r1, r1, theta.target().C());
  d.set_block(0, 0, -theta.source().C());
  d.set_block(0, r1, theta.P());
  d.set_block(r1, r1, theta.target().D());
  return Factorization(ctx, c, d);
}

StandardTriangle standard_triangle(const FactMorphism& theta) {
  const AlgebraCtx& ctx = theta.source().ctx();
  std::size_t r1 = theta.source().rank(), r2 = theta.target().rank();
  Factorization cone = mapping_cone(theta);
  BMatrix incl(ctx, r2, r1 + r2);
  incl.set_block(0, r1, BMatrix::identity(ctx, r2));
  FactMorphism into_cone(theta.target(), cone, incl, incl);
  BMatrix proj(ctx, r1 + r2, r1);
  proj.set_block(0, 0, BMatrix::identity(ctx, r1));
  FactMorphism onto_suspension(cone, suspension(theta.source()), proj, proj);
  return {cone, into_cone, onto_suspension};
}

namespace {

// Flat index of one scalar unknown or equation: two matrix slots (S/T resp.
// the P/Q equations), an r1 x r2 position, and a basis slot.
std::size_t flat_index(std::size_t grid, std::size_t r2, std::size_t i, std::size_t j,
                       std::size_t slot, std::size_t r1) {
  return ((grid * r1 + i) * r2 + j) * 5 + slot;
}

Scalar nu_basis_factor(const AlgebraCtx& ctx, std::size_t slot) {
  if (slot == kX) return -ctx.qinv;
  if (slot == kY) return -ctx.q;
  return Scalar::one(ctx.field);
}

}  // namespace

bool is_nullhomotopic(const FactMorphism& theta, Homotopy* witness) {
  const AlgebraCtx& ctx = theta.source().ctx();
  const FieldSpec F = ctx.field;
  std::size_t r1 = theta.source().rank(), r2 = theta.target().rank();
  if (r1 * r2 == 0) {
    if (witness) *witness = {BMatrix(ctx, r1, r2), BMatrix(ctx, r1, r2)};
    return true;
  }
  const BMatrix& c_src = theta.source().C();
  const BMatrix& c_tgt = theta.target().C();
  const BMatrix d_src_nu_inv = theta.source().D().nu_map(-1);
  const BMatrix& d_tgt = theta.target().D();

  std::size_t n = 10 * r1 * r2;  // equations and unknowns
  Mat a(F, n, n);
  Mat rhs(F, n, 1);
  auto unk = [&](std::size_t grid, std::size_t i, std::size_t j, std::size_t slot) {
    return flat_index(grid, r2, i, j, slot, r1);
  };
  auto eq = [&](std::size_t grid, std::size_t i, std::size_t j, std::size_t slot) {
    return flat_index(grid, r2, i, j, slot, r1);
  };

  // P equation, C_src S contribution: entry (i,j) sums C_src(i,m) S(m,j).
  for (std::size_t i = 0; i < r1; ++i) {
    for (std::size_t m = 0; m < r1; ++m) {
      for (std::size_t b = 0; b < 5; ++b) {
        BElt prod = b_mul(c_src.at(i, m), b_basis(ctx, b), ctx);
        if (b_is_zero(prod)) continue;
        for (std::size_t j = 0; j < r2; ++j) {
          for (std::size_t e = 0; e < 5; ++e) {
            if (!prod.c[e].is_zero()) a.at(eq(0, i, j, e), unk(0, m, j, b)) += prod.c[e];
          }
        }
      }
    }
  }
  // P equation, nu(T) D_tgt contribution: entry (i,j) sums nu(T(i,m)) D_tgt(m,j).
  for (std::size_t m = 0; m < r2; ++m) {
    for (std::size_t j = 0; j < r2; ++j) {
      for (std::size_t b = 0; b < 5; ++b) {
        BElt prod = b_scale(nu_basis_factor(ctx, b), b_mul(b_basis(ctx, b), d_tgt.at(m, j), ctx));
        if (b_is_zero(prod)) continue;
        for (std::size_t i = 0; i < r1; ++i) {
          for (std::size_t e = 0; e < 5; ++e) {
            if (!prod.c[e].is_zero()) a.at(eq(0, i, j, e), unk(1, i, m, b)) += prod.c[e];
          }
        }
      }
    }
  }
  // Q equation, nu^{-1}(D_src) T contribution: entry (i,j) sums nu^{-1}(D_src(i,m)) T(m,j).
  for (std::size_t i = 0; i < r1; ++i) {
    for (std::size_t m = 0; m < r1; ++m) {
      for (std::size_t b = 0; b < 5; ++b) {
        BElt prod = b_mul(d_src_nu_inv.at(i, m), b_basis(ctx, b), ctx);
        if (b_is_zero(prod)) continue;
        for (std::size_t j = 0; j < r2; ++j) {
          for (std::size_t e = 0; e < 5; ++e) {
            if (!prod.c[e].is_zero()) a.at(eq(1, i, j, e), unk(1, m, j, b)) += prod.c[e];
          }
        }
      }
    }
  }
  // Q equation, S C_tgt contribution: entry (i,j) sums S(i,m) C_tgt(m,j).
  for (std::size_t m = 0; m < r2; ++m) {
    for (std::size_t j = 0; j < r2; ++j) {
      for (std::size_t b = 0; b < 5; ++b) {
        BElt prod = b_mul(b_basis(ctx, b), c_tgt.at(m, j), ctx);
        if (b_is_zero(prod)) continue;
        for (std::size_t i = 0; i < r1; ++i) {
          for (std::size_t e = 0; e < 5; ++e) {
            if (!prod.c[e].is_zero()) a.at(eq(1, i, j, e), unk(0, i, m, b)) += prod.c[e];
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < r1; ++i) {
    for (std::size_t j = 0; j < r2; ++j) {
      for (std::size_t e = 0; e < 5; ++e) {
        rhs.at(eq(0, i, j, e), 0) = theta.P().at(i, j).c[e];
        rhs.at(eq(1, i, j, e), 0) = theta.Q().at(i, j).c[e];
      }
    }
  }

  Mat x(F, 0, 0);
  try {
    x = a.solve(rhs);
  } catch (const domain_error&) {
    return false;
  }
  BMatrix s(ctx, r1, r2), t(ctx, r1, r2);
  for (std::size_t i = 0; i < r1; ++i) {
    for (std::size_t j = 0; j < r2; ++j) {
      for (std::size_t b = 0; b < 5; ++b) {
        s.at(i, j).c[b] = x.at(unk(0, i, j, b), 0);
        t.at(i, j).c[b] = x.at(unk(1, i, j, b), 0);
      }
    }
  }
  check_equals_or_throw(c_src * s + t.nu_map(1) * d_tgt, theta.P(), "P = C S + nu(T) D'");
  check_equals_or_throw(d_src_nu_inv * t + s * c_tgt, theta.Q(), "Q = nu^{-1}(D) T + S C'");
  if (witness) *witness = {s, t};
  return true;
}

bool is_contractible(const Factorization& f) {
  return is_nullhomotopic(FactMorphism::identity(f));
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> find_unit(const BMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m.at(i, j).c[kOne].is_zero()) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

BElt b_inv(const BElt& u, const AlgebraCtx& ctx) {
  BMatrix m(ctx, 1, 1);
  m.at(0, 0) = u;
  return bmat_inverse(m).at(0, 0);
}

// Left and right elimination factors isolating the unit entry of m at (0,0):
// left * m * right has that unit alone in its first row and column.
struct Elimination {
  BMatrix left, right;
};

Elimination isolate_unit(const BMatrix& m, std::size_t a, std::size_t b,
                         const AlgebraCtx& ctx) {
  std::size_t r = m.rows();
  BElt uinv = b_inv(m.at(a, b), ctx);
  BMatrix left = BMatrix::identity(ctx, r);
  BMatrix right = BMatrix::identity(ctx, r);
  BMatrix work = m;
  for (std::size_t i = 0; i < r; ++i) {
    if (i == a || b_is_zero(work.at(i, b))) continue;
    BMatrix e = BMatrix::identity(ctx, r);
    e.at(i, a) = -b_mul(work.at(i, b), uinv, ctx);
    work = e * work;
    left = e * left;
  }
  for (std::size_t j = 0; j < r; ++j) {
    if (j == b || b_is_zero(work.at(a, j))) continue;
    BMatrix e = BMatrix::identity(ctx, r);
    e.at(b, j) = -b_mul(uinv, work.at(a, j), ctx);
    work = work * e;
    right = right * e;
  }
  if (a != 0) {
    BMatrix p = BMatrix::identity(ctx, r);
    p.at(a, a) = b_zero(ctx);
    p.at(0, 0) = b_zero(ctx);
    p.at(0, a) = b_one(ctx);
    p.at(a, 0) = b_one(ctx);
    left = p * left;
  }
  if (b != 0) {
    BMatrix p = BMatrix::identity(ctx, r);
    p.at(b, b) = b_zero(ctx);
    p.at(0, 0) = b_zero(ctx);
    p.at(0, b) = b_one(ctx);
    p.at(b, 0) = b_one(ctx);
    right = right * p;
  }
  return {left, right};
}

void check_block_split(const BMatrix& m) {
  for (std::size_t i = 1; i < m.rows(); ++i) {
    if (!b_is_zero(m.at(i, 0))) throw axiom_error("split summand is not block diagonal");
  }
  for (std::size_t j = 1; j < m.cols(); ++j) {
    if (!b_is_zero(m.at(0, j))) throw axiom_error("split summand is not block diagonal");
  }
}

}  // namespace

StripResult strip_units(const Factorization& f) {
  const AlgebraCtx& ctx = f.ctx();
  Factorization current = f;
  FactMorphism embed = FactMorphism::identity(f);    // current -> original
  FactMorphism project = FactMorphism::identity(f);  // original -> current
  while (true) {
    std::size_t r = current.rank();
    auto in_c = find_unit(current.C());
    std::optional<std::pair<std::size_t, std::size_t>> in_d;
    if (!in_c) in_d = find_unit(current.D());
    if (!in_c && !in_d) break;
    // Isomorphism (C, D) -> (Pm^{-1} C Qm, nu(Qm^{-1}) D Pm) isolating the
    // unit at position (0,0) of whichever matrix holds it.
    BMatrix pm(ctx, 0, 0), qm(ctx, 0, 0);
    if (in_c) {
      Elimination el = isolate_unit(current.C(), in_c->first, in_c->second, ctx);
      pm = bmat_inverse(el.left);
      qm = el.right;
    } else {
      Elimination el = isolate_unit(current.D(), in_d->first, in_d->second, ctx);
      pm = el.right;
      qm = bmat_inverse(el.left.nu_map(-1));
    }
    BMatrix pm_inv = bmat_inverse(pm);
    BMatrix qm_inv = bmat_inverse(qm);
    BMatrix c_iso = pm_inv * current.C() * qm;
    BMatrix d_iso = qm_inv.nu_map(1) * current.D() * pm;
    check_block_split(c_iso);
    check_block_split(d_iso);
    Factorization full(ctx, c_iso, d_iso);
    FactMorphism iso_fwd(current, full, pm, qm);
    FactMorphism iso_bwd(full, current, pm_inv, qm_inv);
    Factorization summand(ctx, c_iso.submatrix(1, 1, r - 1, r - 1),
                          d_iso.submatrix(1, 1, r - 1, r - 1));
    BMatrix incl(ctx, r - 1, r);
    incl.set_block(0, 1, BMatrix::identity(ctx, r - 1));
    BMatrix proj(ctx, r, r - 1);
    proj.set_block(1, 0, BMatrix::identity(ctx, r - 1));
    FactMorphism include_summand(summand, full, incl, incl);
    FactMorphism project_summand(full, summand, proj, proj);
    embed = compose(compose(include_summand, iso_bwd), embed);
    project = compose(project, compose(iso_fwd, project_summand));
    current = summand;
  }
  return {current, embed, project};
}

RankOneScan rank_one_scan(const Scalar& alpha, const AlgebraCtx& ctx) {
  if (alpha.field() != ctx.field) throw domain_error("scalar field does not match the context");
  if (alpha.is_zero()) throw domain_error("the scaling parameter must be nonzero");
  Scalar one = Scalar::one(ctx.field);
  Scalar zero = Scalar::zero(ctx.field);
  if (alpha != -ctx.qinv) return {false, zero, zero, zero, zero};
  // (beta1, beta2, gamma1, gamma2) = (1, 1, 1, -q) satisfies all four
  // equations: alpha beta1 gamma2 = 1, alpha^{-1} beta2 gamma1 = -q,
  // gamma1 beta2 = 1, gamma2 beta1 = -q.
  return {true, one, one, one, -ctx.q};
}

Factorization direct_sum(const Factorization& a, const Factorization& b) {
  if (a.ctx() != b.ctx()) throw domain_error("context mismatch");
  const AlgebraCtx& ctx = a.ctx();
  std::size_t n = a.rank() + b.rank();
  BMatrix c(ctx, n, n), d(ctx, n, n);
  c.set_block(0, 0, a.C());
  c.set_block(a.rank(), a.rank(), b.C());
  d.set_block(0, 0, a.D());
  d.set_block(a.rank(), a.rank(), b.D());
  return Factorization(ctx, c, d);
}

}  // namespace qcimf
