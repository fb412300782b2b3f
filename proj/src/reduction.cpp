#include "qcimf/reduction.hpp"

#include <sstream>
#include <utility>

namespace qcimf {

AMatrix::AMatrix(const AlgebraCtx& ctx, std::size_t rows, std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), e_(rows * cols, a_zero(ctx)) {}

AMatrix AMatrix::identity(const AlgebraCtx& ctx, std::size_t n) {
  AMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = a_one(ctx);
  return m;
}

AElt& AMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw domain_error("matrix index out of range");
  return e_[i * cols_ + j];
}

const AElt& AMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw domain_error("matrix index out of range");
  return e_[i * cols_ + j];
}

AMatrix AMatrix::operator+(const AMatrix& o) const {
  if (ctx_ != o.ctx_ || rows_ != o.rows_ || cols_ != o.cols_) {
    throw domain_error("matrix shape or context mismatch");
  }
  AMatrix r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

AMatrix AMatrix::operator-(const AMatrix& o) const { return *this + (-o); }

AMatrix AMatrix::operator-() const {
  AMatrix r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
  return r;
}

AMatrix AMatrix::operator*(const AMatrix& o) const {
  if (ctx_ != o.ctx_) throw domain_error("context mismatch");
  if (cols_ != o.rows_) throw domain_error("matrix shape mismatch");
  AMatrix r(ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < o.cols_; ++j) {
      AElt acc = a_zero(ctx_);
      for (std::size_t k = 0; k < cols_; ++k) {
        acc = acc + a_mul(at(i, k), o.at(k, j), ctx_);
      }
      r.at(i, j) = acc;
    }
  }
  return r;
}

bool AMatrix::operator==(const AMatrix& o) const {
  if (ctx_ != o.ctx_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] != o.e_[i]) return false;
  }
  return true;
}

bool AMatrix::is_zero() const {
  for (const AElt& a : e_) {
    if (!a_is_zero(a)) return false;
  }
  return true;
}

AMatrix AMatrix::nu_map(long long power) const {
  AMatrix r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = nu_a(e_[i], ctx_, power);
  return r;
}

std::string AMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << a_str(at(i, j));
    }
  }
  os << "]";
  return os.str();
}

namespace {

AMatrix reduce_bmatrix(const BMatrix& m) {
  AMatrix r(m.ctx(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = reduce_to_A(m.at(i, j), m.ctx());
  }
  return r;
}

void check_zero_or_throw(const AMatrix& got, const std::string& identity) {
  for (std::size_t i = 0; i < got.rows(); ++i) {
    for (std::size_t j = 0; j < got.cols(); ++j) {
      if (!a_is_zero(got.at(i, j))) {
        std::ostringstream os;
        os << "identity " << identity << " fails at entry (" << i << ", " << j
           << "): got " << a_str(got.at(i, j));
        throw axiom_error(os.str(), identity, i, j);
      }
    }
  }
}

}  // namespace

ReducedPair reduce_factorization(const Factorization& f) {
  ReducedPair r{reduce_bmatrix(f.C()), reduce_bmatrix(f.D())};
  check_zero_or_throw(r.cbar.nu_map(1) * r.dbar, "nu(Cbar) Dbar = 0");
  check_zero_or_throw(r.dbar * r.cbar, "Dbar Cbar = 0");
  return r;
}

ReducedChainMap reduce_morphism(const FactMorphism& theta) {
  return {reduce_bmatrix(theta.P()), reduce_bmatrix(theta.Q())};
}

ReducedHomotopy reduce_homotopy(const Homotopy& h) {
  return {reduce_bmatrix(h.S), reduce_bmatrix(h.T)};
}

bool reduced_homotopy_certifies(const FactMorphism& theta, const Homotopy& h) {
  ReducedPair src = reduce_factorization(theta.source());
  ReducedPair tgt = reduce_factorization(theta.target());
  ReducedChainMap map = reduce_morphism(theta);
  ReducedHomotopy wit = reduce_homotopy(h);
  AMatrix p_want = src.cbar * wit.s + wit.t.nu_map(1) * tgt.dbar;
  AMatrix q_want = src.dbar.nu_map(-1) * wit.t + wit.s * tgt.cbar;
  return map.p == p_want && map.q == q_want;
}

namespace {

// Column 4 i + s of the matrix of u -> action(u) picks up the image of the
// row vector with the s-th basis element in component i.
Mat right_multiplication_map(const AMatrix& m, bool pre_twist) {
  const AlgebraCtx& ctx = m.ctx();
  std::size_t r = m.rows();
  Mat out(ctx.field, 4 * m.cols(), 4 * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t s = 0; s < 4; ++s) {
      AElt u = a_basis(ctx, s);
      if (pre_twist) u = nu_a(u, ctx, 1);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        AElt v = a_mul(u, m.at(i, j), ctx);
        for (std::size_t t = 0; t < 4; ++t) out.at(4 * j + t, 4 * i + s) = v.c[t];
      }
    }
  }
  return out;
}

}  // namespace

ReducedComplexMaps reduced_complex_maps(const Factorization& f) {
  ReducedPair r = reduce_factorization(f);
  return {right_multiplication_map(r.cbar, false), right_multiplication_map(r.dbar, true)};
}

ReducedComplexWindow reduced_window(const Factorization& f, std::size_t half_width) {
  ReducedPair r = reduce_factorization(f);
  ReducedComplexWindow w{f.ctx(), f.rank(), {}, {}};
  long long n = static_cast<long long>(half_width);
  for (long long pos = -n; pos <= n; ++pos) {
    w.positions.push_back(pos);
    bool even = ((pos % 2) + 2) % 2 == 0;
    w.maps.push_back(even ? TwistedMap{r.cbar, 0} : TwistedMap{r.dbar, 1});
  }
  for (std::size_t i = 0; i + 1 < w.maps.size(); ++i) {
    // Composite of u -> nu^{a}(u) M1 followed by u -> nu^{b}(u) M2 is
    // u -> nu^{a+b}(u) nu^{b}(M1) M2.
    AMatrix comp = w.maps[i].mat.nu_map(w.maps[i + 1].pre_twist) * w.maps[i + 1].mat;
    check_zero_or_throw(comp, "consecutive reduced maps compose to zero");
  }
  return w;
}

bool check_acyclic(const Factorization& f) {
  ReducedComplexMaps maps = reduced_complex_maps(f);
  if (!(maps.phi_d * maps.phi_c).is_zero()) return false;
  if (!(maps.phi_c * maps.phi_d).is_zero()) return false;
  return maps.phi_c.rank() + maps.phi_d.rank() == 4 * f.rank();
}

namespace {

// Block-diagonal copies of one 4 x 4 left-multiplication map, one per
// component of A^r.
Mat blockwise(const Mat& block, std::size_t r) {
  Mat big(block.field(), 4 * r, 4 * r);
  for (std::size_t i = 0; i < r; ++i) big.set_block(4 * i, 4 * i, block);
  return big;
}

}  // namespace

AModule image_module(const Factorization& f) {
  const AlgebraCtx& ctx = f.ctx();
  ReducedComplexMaps maps = reduced_complex_maps(f);
  EchelonBasis basis = echelon_row_basis(maps.phi_c.transpose());
  std::size_t d = basis.rows.rows();
  AModule reg = regular_module(ctx);
  Mat big_x = blockwise(reg.X(), f.rank());
  Mat big_y = blockwise(reg.Y(), f.rank());
  Mat x(ctx.field, d, d), y(ctx.field, d, d);
  for (std::size_t k = 0; k < d; ++k) {
    Mat row = basis.rows.submatrix(k, 0, 1, basis.rows.cols());
    for (const auto& [op, out] : {std::make_pair(&big_x, &x), std::make_pair(&big_y, &y)}) {
      Mat image = (*op * row.transpose()).transpose();
      std::vector<Scalar> coords;
      try {
        coords = coords_in_echelon(basis, image);
      } catch (const domain_error&) {
        throw axiom_error("image of the reduced map is not closed under the actions");
      }
      for (std::size_t i = 0; i < d; ++i) out->at(i, k) = coords[i];
    }
  }
  return AModule(ctx, x, y);
}

AModule image_module_block_form(const Factorization& f) {
  const AlgebraCtx& ctx = f.ctx();
  StripResult strip = strip_units(f);
  std::size_t r = strip.stripped.rank();
  if (r == 0) return AModule(ctx, Mat(ctx.field, 0, 0), Mat(ctx.field, 0, 0));
  ComponentDecomposition comp = decompose(strip.stripped.C());
  if (comp.c1.det().is_zero()) {
    throw axiom_error("x-component singular after unit stripping");
  }
  Mat xblk = (comp.c1.inverse() * comp.c2).scale(ctx.q);
  Mat x(ctx.field, 2 * r, 2 * r), y(ctx.field, 2 * r, 2 * r);
  x.set_block(0, r, xblk);
  y.set_block(0, r, Mat::identity(ctx.field, r));
  return AModule(ctx, x, y);
}

namespace {

// Right multiplication by g on A as a 4 x 4 k-matrix.
Mat rho(const AlgebraCtx& ctx, const AElt& g) {
  Mat m(ctx.field, 4, 4);
  for (std::size_t s = 0; s < 4; ++s) {
    AElt v = a_mul(a_basis(ctx, s), g, ctx);
    for (std::size_t t = 0; t < 4; ++t) m.at(t, s) = v.c[t];
  }
  return m;
}

Mat col_space_of(const Mat& m) { return echelon_row_basis(m.transpose()).rows.transpose(); }

// A modulo the image of rho, as a left module.
AModule cokernel_module(const AlgebraCtx& ctx, const Mat& image_map) {
  FieldSpec f = ctx.field;
  Mat im = col_space_of(image_map);
  Mat aug = hstack(im, Mat::identity(f, 4));
  std::vector<std::size_t> pivots = aug.rref_inplace();
  Mat full = im;
  for (std::size_t p : pivots) {
    if (p >= im.cols()) {
      Mat e(f, 4, 1);
      e.at(p - im.cols(), 0) = Scalar::one(f);
      full = hstack(full, e);
    }
  }
  Mat inv = full.inverse();
  AModule reg = regular_module(ctx);
  std::size_t c = im.cols();
  std::size_t d = 4 - c;
  Mat x(f, d, d), y(f, d, d);
  for (const auto& [act, out] : {std::make_pair(&reg.X(), &x), std::make_pair(&reg.Y(), &y)}) {
    Mat conj = inv * *act * full;
    // The image is a submodule, so the quotient block is self-contained.
    if (!conj.submatrix(c, 0, d, c).is_zero()) {
      throw axiom_error("image of the complex map is not a submodule");
    }
    *out = conj.submatrix(c, c, d, d);
  }
  return AModule(ctx, x, y);
}

}  // namespace

SchulzReport schulz_complex_check(const AlgebraCtx& ctx, std::size_t window) {
  SchulzReport report;
  report.all_exact = true;
  long long n0 = static_cast<long long>(window);
  auto map_at = [&](long long n) {
    AElt g = a_basis(ctx, kX) + a_scale((-ctx.q).pow(n + 1), a_basis(ctx, kY));
    return rho(ctx, g);
  };
  for (long long n = -n0; n <= n0; ++n) {
    Mat here = map_at(n);
    Mat next = map_at(n + 1);
    SchulzPosition pos;
    pos.n = n;
    pos.composite_zero = (here * next).is_zero();
    pos.exact = pos.composite_zero &&
                here.rank() + next.rank() == 4;
    pos.cokernel = classify(cokernel_module(ctx, here));
    report.positions.push_back(pos);
    if (!pos.exact) report.all_exact = false;
  }
  return report;
}

}  // namespace qcimf
