#include "qcimf/amodule.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

#include "qcimf/poly.hpp"

namespace qcimf {

namespace {

void check_relation(const Mat& got, const Mat& want, const std::string& identity) {
  for (std::size_t i = 0; i < got.rows(); ++i) {
    for (std::size_t j = 0; j < got.cols(); ++j) {
      if (got.at(i, j) != want.at(i, j)) {
        std::ostringstream os;
        os << "module relation " << identity << " fails at entry (" << i << ", " << j << ")";
        throw axiom_error(os.str(), identity, i, j);
      }
    }
  }
}

}  // namespace

AModule::AModule(const AlgebraCtx& ctx, const Mat& X, const Mat& Y)
    : ctx_(ctx), x_(X), y_(Y) {
  if (X.rows() != X.cols() || Y.rows() != Y.cols() || X.rows() != Y.rows()) {
    throw domain_error("action matrices must be square of equal size");
  }
  if (X.field() != ctx.field || Y.field() != ctx.field) {
    throw domain_error("action field does not match the context");
  }
  Mat zero(ctx.field, X.rows(), X.rows());
  check_relation(x_ * x_, zero, "x^2 = 0");
  check_relation(y_ * y_, zero, "y^2 = 0");
  check_relation(x_ * y_, (y_ * x_).scale(ctx.q), "x y = q y x");
}

AModule make_cn(std::size_t n, const ExtScalar& lambda, const AlgebraCtx& ctx) {
  if (n < 1) throw domain_error("block size must be at least 1");
  if (lambda.field() != ctx.field) throw domain_error("eigenvalue field does not match the context");
  FieldSpec f = ctx.field;
  Mat x(f, 2 * n, 2 * n), y(f, 2 * n, 2 * n);
  Mat xblk = lambda.is_infinity() ? Mat::identity(f, n)
                                  : jordan_upper(f, n, lambda.value());
  Mat yblk = lambda.is_infinity() ? jordan_upper(f, n, Scalar::zero(f))
                                  : Mat::identity(f, n);
  x.set_block(0, n, xblk);
  y.set_block(0, n, yblk);
  return AModule(ctx, x, y);
}

AModule regular_module(const AlgebraCtx& ctx) {
  FieldSpec f = ctx.field;
  Mat x(f, 4, 4), y(f, 4, 4);
  // Basis (1, x, y, xy): left multiplication by x sends 1 -> x, y -> xy;
  // left multiplication by y sends 1 -> y, x -> q^{-1} xy.
  x.at(1, 0) = Scalar::one(f);
  x.at(3, 2) = Scalar::one(f);
  y.at(2, 0) = Scalar::one(f);
  y.at(3, 1) = ctx.qinv;
  return AModule(ctx, x, y);
}

AModule simple_module(const AlgebraCtx& ctx) {
  return AModule(ctx, Mat(ctx.field, 1, 1), Mat(ctx.field, 1, 1));
}

AModule module_direct_sum(const AModule& a, const AModule& b) {
  if (a.ctx() != b.ctx()) throw domain_error("context mismatch");
  FieldSpec f = a.ctx().field;
  std::size_t n = a.dim() + b.dim();
  Mat x(f, n, n), y(f, n, n);
  x.set_block(0, 0, a.X());
  x.set_block(a.dim(), a.dim(), b.X());
  y.set_block(0, 0, a.Y());
  y.set_block(a.dim(), a.dim(), b.Y());
  return AModule(a.ctx(), x, y);
}

AModule twist_module(const AModule& m, long long power) {
  Scalar fx = (-m.ctx().qinv).pow(power);
  Scalar fy = (-m.ctx().q).pow(power);
  return AModule(m.ctx(), m.X().scale(fx), m.Y().scale(fy));
}

namespace {

// Canonical basis of the column space: echelon row basis of the transpose,
// transposed back.  Deterministic in the input.
Mat col_space(const Mat& m) { return echelon_row_basis(m.transpose()).rows.transpose(); }

// Indices of standard basis vectors completing the columns of w (assumed of
// full column rank) to a basis of the ambient space.
std::vector<std::size_t> complete_basis(const Mat& w) {
  std::size_t d = w.rows();
  Mat aug = hstack(w, Mat::identity(w.field(), d));
  std::vector<std::size_t> pivots = aug.rref_inplace();
  std::vector<std::size_t> picked;
  for (std::size_t p : pivots) {
    if (p >= w.cols()) picked.push_back(p - w.cols());
  }
  if (picked.size() + w.cols() != d) throw axiom_error("basis completion lost rank");
  return picked;
}

Mat standard_column(FieldSpec f, std::size_t d, std::size_t i) {
  Mat e(f, d, 1);
  e.at(i, 0) = Scalar::one(f);
  return e;
}

// One free summand split off at the cyclic generator with (xy) m != 0: a
// module retraction onto the copy of the regular module, then its kernel.
struct PeelResult {
  Mat x, y;  // actions on the kernel of the retraction
};

PeelResult peel_free_summand(const AlgebraCtx& ctx, const Mat& x, const Mat& y,
                             std::size_t gen) {
  FieldSpec f = x.field();
  std::size_t d = x.rows();
  Mat m0 = standard_column(f, d, gen);
  Mat span = hstack(hstack(m0, x * m0), hstack(y * m0, x * (y * m0)));
  if (span.rank() != 4) throw axiom_error("cyclic free submodule is not 4-dimensional");
  AModule reg = regular_module(ctx);
  // Retraction phi: M -> A with phi restricted to the summand the identity and
  // phi intertwining both actions; unknowns are the 4 d entries of phi.
  std::size_t nuk = 4 * d;
  Mat sys(f, 8 * d + 16, nuk);
  Mat rhs(f, 8 * d + 16, 1);
  auto uidx = [&](std::size_t a, std::size_t b) { return a * d + b; };
  std::size_t row = 0;
  for (const auto& [act, reg_act] : {std::make_pair(&x, &reg.X()), std::make_pair(&y, &reg.Y())}) {
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t b = 0; b < d; ++b) sys.at(row, uidx(a, b)) += act->at(b, c);
        for (std::size_t b = 0; b < 4; ++b) sys.at(row, uidx(b, c)) -= reg_act->at(a, b);
        ++row;
      }
    }
  }
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t b = 0; b < d; ++b) sys.at(row, uidx(a, b)) += span.at(b, i);
      rhs.at(row, 0) = a == i ? Scalar::one(f) : Scalar::zero(f);
      ++row;
    }
  }
  Mat sol = sys.solve(rhs);  // self-injectivity guarantees consistency
  Mat phi(f, 4, d);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < d; ++b) phi.at(a, b) = sol.at(uidx(a, b), 0);
  }
  Mat k = phi.right_kernel();
  if (k.cols() != d - 4) throw axiom_error("free summand retraction has the wrong corank");
  return {k.solve(x * k), k.solve(y * k)};
}

// Dimensions of the Weierstrass kernel chain of the pencil (p, q) at one
// eigenvalue: s_1 = ker p, s_{j+1} = preimage under p of q s_j.
std::vector<std::size_t> chain_dims(const Mat& p, const Mat& q) {
  std::vector<std::size_t> dims;
  Mat basis = p.right_kernel();
  while (true) {
    dims.push_back(basis.cols());
    if (dims.size() > 1 && dims[dims.size() - 1] == dims[dims.size() - 2]) {
      dims.pop_back();
      break;
    }
    Mat image = q * basis;
    Mat ker = hstack(p, image).right_kernel();
    Mat vpart = ker.submatrix(0, 0, p.cols(), ker.cols());
    basis = col_space(vpart);
  }
  return dims;
}

void append_blocks(std::vector<ClassificationSummand>& out,
                   const std::vector<std::size_t>& dims, const ExtScalar& lambda,
                   std::size_t expected_total) {
  std::size_t total = 0;
  for (std::size_t j = 1; j <= dims.size(); ++j) {
    std::size_t ge_j = dims[j - 1] - (j >= 2 ? dims[j - 2] : 0);
    std::size_t ge_j1 = j < dims.size() ? dims[j] - dims[j - 1] : 0;
    for (std::size_t b = 0; b < ge_j - ge_j1; ++b) {
      out.push_back({j, lambda});
      total += j;
    }
  }
  if (total != expected_total) throw axiom_error("pencil block sizes do not add up");
}

// det(xbar - t ybar) by fraction-free elimination over the polynomial ring;
// exact over any field, no evaluation points needed.
Poly pencil_det(const Mat& xbar, const Mat& ybar) {
  FieldSpec f = xbar.field();
  std::size_t m = xbar.rows();
  if (m == 0) return Poly::constant(f, Scalar::one(f));
  std::vector<std::vector<Poly>> a(m, std::vector<Poly>(m, Poly(f)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      a[i][j] = Poly::from_coeffs(f, {xbar.at(i, j), -ybar.at(i, j)});
    }
  }
  Poly prev = Poly::constant(f, Scalar::one(f));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    std::size_t piv = k;
    while (piv < m && a[piv][k].is_zero()) ++piv;
    if (piv == m) return Poly(f);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        auto [quot, rem] = Poly::divrem(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
        if (!rem.is_zero()) throw axiom_error("fraction-free elimination left a remainder");
        a[i][j] = quot;
      }
    }
    prev = a[k][k];
  }
  return negate ? -a[m - 1][m - 1] : a[m - 1][m - 1];
}

}  // namespace

ClassificationReport classify(const AModule& m) {
  const AlgebraCtx& ctx = m.ctx();
  FieldSpec f = ctx.field;
  ClassificationReport report;
  Mat x = m.X(), y = m.Y();

  // Free summands are exactly what xy acts nonzero on.
  while (true) {
    Mat xy = x * y;
    if (xy.is_zero()) break;
    std::size_t gen = 0;
    while (xy.col(gen).is_zero()) ++gen;
    PeelResult peeled = peel_free_summand(ctx, x, y, gen);
    x = peeled.x;
    y = peeled.y;
    ++report.free_rank;
  }

  std::size_t d = x.rows();
  if (d == 0) {
    report.classified = true;
    return report;
  }

  // Radical and cosocle of the remaining square-zero part.
  Mat w = col_space(hstack(x, y));
  std::size_t wd = w.cols();
  if (d - wd != wd) {
    report.reason = "radical and cosocle dimensions differ";
    return report;
  }
  std::vector<std::size_t> gens = complete_basis(w);
  Mat xbar(f, wd, wd), ybar(f, wd, wd);
  for (std::size_t j = 0; j < wd; ++j) {
    Mat xc = w.solve(x.col(gens[j]));
    Mat yc = w.solve(y.col(gens[j]));
    for (std::size_t i = 0; i < wd; ++i) {
      xbar.at(i, j) = xc.at(i, 0);
      ybar.at(i, j) = yc.at(i, 0);
    }
  }

  Poly det = pencil_det(xbar, ybar);
  if (det.is_zero()) {
    report.reason = "singular pencil";
    return report;
  }
  RootData roots = field_roots(det);
  if (roots.remaining.degree() > 0) {
    report.reason = "irreducible eigenvalue polynomial";
    return report;
  }
  for (const auto& [lambda, mult] : roots.roots) {
    Mat shifted = xbar - ybar.scale(lambda);
    append_blocks(report.summands, chain_dims(shifted, ybar), ExtScalar::finite(lambda),
                  static_cast<std::size_t>(mult));
  }
  std::size_t inf_mult = wd - static_cast<std::size_t>(det.degree());
  if (inf_mult > 0) {
    append_blocks(report.summands, chain_dims(ybar, xbar), ExtScalar::infinity(f), inf_mult);
  }
  std::sort(report.summands.begin(), report.summands.end(),
            [](const ClassificationSummand& a, const ClassificationSummand& b) {
              if (a.n != b.n) return a.n < b.n;
              return a.lambda.cmp(b.lambda) < 0;
            });
  report.classified = true;
  return report;
}

bool is_isomorphic(const AModule& a, const AModule& b, std::uint64_t seed) {
  if (a.ctx() != b.ctx()) throw domain_error("context mismatch");
  if (a.dim() != b.dim()) return false;
  std::size_t d = a.dim();
  if (d == 0) return true;
  if (a.X().rank() != b.X().rank() || a.Y().rank() != b.Y().rank()) return false;
  if ((a.X() * a.Y()).rank() != (b.X() * b.Y()).rank()) return false;
  if (hstack(a.X(), a.Y()).rank() != hstack(b.X(), b.Y()).rank()) return false;

  ClassificationReport ca = classify(a);
  ClassificationReport cb = classify(b);
  if (ca.classified && cb.classified) return ca == cb;
  if (ca.classified != cb.classified) return false;

  // Intertwiner space: phi X_a = X_b phi and phi Y_a = Y_b phi.
  FieldSpec f = a.ctx().field;
  std::size_t nuk = d * d;
  Mat sys(f, 2 * nuk, nuk);
  auto uidx = [&](std::size_t r, std::size_t c) { return r * d + c; };
  std::size_t row = 0;
  for (const auto& [ma, mb] : {std::make_pair(&a.X(), &b.X()), std::make_pair(&a.Y(), &b.Y())}) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t k = 0; k < d; ++k) {
          sys.at(row, uidx(r, k)) += ma->at(k, c);
          sys.at(row, uidx(k, c)) -= mb->at(r, k);
        }
        ++row;
      }
    }
  }
  Mat basis = sys.right_kernel();
  std::size_t s = basis.cols();
  if (s == 0) return false;

  auto assemble = [&](const std::vector<Scalar>& coeff) {
    Mat phi(f, d, d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        Scalar acc = Scalar::zero(f);
        for (std::size_t k = 0; k < s; ++k) acc += coeff[k] * basis.at(uidx(r, c), k);
        phi.at(r, c) = acc;
      }
    }
    return phi;
  };

  // Exhaustive over a small finite coefficient space, randomized otherwise;
  // a hit is certified by the exact determinant.
  if (f.kind == FieldKind::prime_field) {
    double combos = 1;
    for (std::size_t k = 0; k < s && combos < 65536.0; ++k) combos *= static_cast<double>(f.p);
    if (combos <= 65536.0) {
      std::vector<std::uint64_t> odo(s, 0);
      while (true) {
        std::size_t pos = 0;
        while (pos < s) {
          if (++odo[pos] < f.p) break;
          odo[pos] = 0;
          ++pos;
        }
        if (pos == s) break;
        std::vector<Scalar> coeff;
        for (std::uint64_t v : odo) coeff.push_back(Scalar::from_residue(f, v));
        if (!assemble(coeff).det().is_zero()) return true;
      }
      return false;
    }
  }
  std::mt19937_64 rng(seed);
  std::size_t tries = 2 * d + 40;
  for (std::size_t t = 0; t < tries; ++t) {
    std::vector<Scalar> coeff;
    if (f.kind == FieldKind::prime_field) {
      std::uniform_int_distribution<std::uint64_t> dist(0, f.p - 1);
      for (std::size_t k = 0; k < s; ++k) coeff.push_back(Scalar::from_residue(f, dist(rng)));
    } else {
      std::uniform_int_distribution<long long> dist(-static_cast<long long>(5 + t),
                                                    static_cast<long long>(5 + t));
      for (std::size_t k = 0; k < s; ++k) coeff.push_back(Scalar::from_int(f, dist(rng)));
    }
    if (!assemble(coeff).det().is_zero()) return true;
  }
  return false;
}

namespace {

std::size_t generator_count(const AModule& m) {
  return m.dim() - hstack(m.X(), m.Y()).rank();
}

}  // namespace

AModule syzygy(const AModule& m) {
  const AlgebraCtx& ctx = m.ctx();
  FieldSpec f = ctx.field;
  std::size_t d = m.dim();
  Mat rad = col_space(hstack(m.X(), m.Y()));
  std::vector<std::size_t> gens = complete_basis(rad);
  std::size_t g = gens.size();
  if (g == 0) return AModule(ctx, Mat(f, 0, 0), Mat(f, 0, 0));

  // Cover A^g -> M in the basis (1, x, y, xy) per copy.
  Mat cover(f, d, 4 * g);
  for (std::size_t i = 0; i < g; ++i) {
    Mat e = standard_column(f, d, gens[i]);
    Mat cols[4] = {e, m.X() * e, m.Y() * e, m.X() * (m.Y() * e)};
    for (std::size_t s = 0; s < 4; ++s) {
      for (std::size_t r = 0; r < d; ++r) cover.at(r, 4 * i + s) = cols[s].at(r, 0);
    }
  }
  if (cover.rank() != d) throw axiom_error("projective cover is not surjective");

  AModule reg = regular_module(ctx);
  Mat xg(f, 4 * g, 4 * g), yg(f, 4 * g, 4 * g);
  for (std::size_t i = 0; i < g; ++i) {
    xg.set_block(4 * i, 4 * i, reg.X());
    yg.set_block(4 * i, 4 * i, reg.Y());
  }
  Mat k = cover.right_kernel();
  // Minimality: the kernel avoids the generator slots.
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t c = 0; c < k.cols(); ++c) {
      if (!k.at(4 * i, c).is_zero()) throw axiom_error("projective cover is not minimal");
    }
  }
  if (k.cols() == 0) return AModule(ctx, Mat(f, 0, 0), Mat(f, 0, 0));
  return AModule(ctx, k.solve(xg * k), k.solve(yg * k));
}

BettiSequence betti_sequence(const AModule& m, std::size_t steps) {
  if (steps < 1) throw domain_error("at least one resolution step is required");
  BettiSequence seq;
  AModule cur = m;
  seq.counts.push_back(generator_count(cur));
  for (std::size_t i = 0; i < steps; ++i) {
    cur = syzygy(cur);
    seq.counts.push_back(generator_count(cur));
  }
  if (seq.counts.back() == 0) {
    seq.cx = 0;
    return seq;
  }
  std::size_t window = std::max<std::size_t>(2, seq.counts.size() / 2);
  bool flat = true;
  for (std::size_t i = seq.counts.size() - window; i + 1 < seq.counts.size(); ++i) {
    if (seq.counts[i + 1] != seq.counts[i]) flat = false;
  }
  seq.cx = flat ? 1 : 2;
  return seq;
}

std::optional<std::size_t> periodicity_probe(const AModule& m, std::size_t max_period) {
  if (betti_sequence(m, 8).cx != 1) {
    throw domain_error("periodicity probe requires a complexity-one module");
  }
  AModule cur = m;
  for (std::size_t p = 1; p <= max_period; ++p) {
    cur = syzygy(cur);
    if (is_isomorphic(cur, m)) return p;
  }
  return std::nullopt;
}

}  // namespace qcimf
