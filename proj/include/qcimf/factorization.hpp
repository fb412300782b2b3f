#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qcimf/algebra.hpp"
#include "qcimf/linalg.hpp"

namespace qcimf {

// Dense matrix with entries in the 5-dimensional algebra B.  Maps are realized
// on row vectors, u -> u M, so composition reads left to right.
class BMatrix {
 public:
  BMatrix(AlgebraCtx ctx, std::size_t rows, std::size_t cols);  // zero-filled
  static BMatrix identity(const AlgebraCtx& ctx, std::size_t n);
  static BMatrix from_entries(const AlgebraCtx& ctx,
                              const std::vector<std::vector<BElt>>& rows);
  // Assembles sum_i basis_i * components[i]; components[0] is the scalar part.
  static BMatrix from_components(const AlgebraCtx& ctx, const std::array<Mat, 5>& comp);
  static BMatrix scalar_embed(const AlgebraCtx& ctx, const Mat& m);

  const AlgebraCtx& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BElt& at(std::size_t i, std::size_t j);
  const BElt& at(std::size_t i, std::size_t j) const;

  friend BMatrix operator+(const BMatrix& a, const BMatrix& b);
  friend BMatrix operator-(const BMatrix& a, const BMatrix& b);
  friend BMatrix operator*(const BMatrix& a, const BMatrix& b);
  BMatrix operator-() const;
  bool operator==(const BMatrix& o) const;
  bool operator!=(const BMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  // Entrywise automorphism nu to the given power.
  BMatrix nu_map(long long power = 1) const;

  // Scalar coefficient matrix of one basis slot; component(0) is the constant
  // part, components() the full decomposition M = sum_i basis_i component(i).
  Mat component(std::size_t slot) const;
  std::array<Mat, 5> components() const;

  BMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
  void set_block(std::size_t r0, std::size_t c0, const BMatrix& m);

  std::string str() const;

 private:
  AlgebraCtx ctx_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BElt> e_;

  void check_shape(const BMatrix& o) const;
};

// Inverse of a matrix whose constant part is invertible over the field; the
// radical part N satisfies N^3 = 0, so the geometric series terminates.
// Singular constant part -> domain_error.
BMatrix bmat_inverse(const BMatrix& m);

// A pair (C, D) with nu(C) D = w I = D C, the two composites of the maps
// u -> u C and u -> nu(u) D.  Validated on construction.
class Factorization {
 public:
  Factorization(const AlgebraCtx& ctx, const BMatrix& C, const BMatrix& D);

  const AlgebraCtx& ctx() const { return ctx_; }
  std::size_t rank() const { return rank_; }
  const BMatrix& C() const { return c_; }
  const BMatrix& D() const { return d_; }

  bool operator==(const Factorization& o) const { return c_ == o.c_ && d_ == o.d_; }
  bool operator!=(const Factorization& o) const { return !(*this == o); }

 private:
  AlgebraCtx ctx_;
  std::size_t rank_;
  BMatrix c_, d_;
};

Factorization validate_factorization(const BMatrix& C, const BMatrix& D,
                                     const AlgebraCtx& ctx);

// C = C0 + x C1 + y C2 + xy C3 + yx C4, the unique expansion of a B-matrix
// into scalar coefficient matrices.
struct ComponentDecomposition {
  Mat c0, c1, c2, c3, c4;
};
ComponentDecomposition decompose(const BMatrix& c);

// Ranks of the four linear-part components of a unit-free factorization; all
// must equal the rank for the pair to be exact.  Unit entries present ->
// domain_error telling the caller to strip them first.
struct ComponentRanks {
  std::size_t c1, c2, d1, d2;
};
ComponentRanks check_component_invertibility(const Factorization& f);

// (C, D) = (x C1 + y C2, x C2^{-1} - q y C1^{-1}); valid for any invertible
// scalar matrices C1, C2.
Factorization from_invertible_pair(const Mat& c1, const Mat& c2, const AlgebraCtx& ctx);

// from_invertible_pair(I_n, q^{-1} J_n(lambda)); lambda = 0 -> domain_error
// because the Jordan block must be invertible.
Factorization canonical_factorization(std::size_t n, const Scalar& lambda,
                                      const AlgebraCtx& ctx);

// Suspension in the normalized representation: (C, D) -> (-nu^{-1}(D), -C).
// Applying it twice gives entrywise nu^{-1} on both matrices.
Factorization suspension(const Factorization& f);

// Morphism (P, Q): source -> target, acting as u -> u P on the first stage;
// the commuting squares are C_src Q = P C_tgt and D_src P = nu(Q) D_tgt,
// validated on construction.
class FactMorphism {
 public:
  FactMorphism(const Factorization& source, const Factorization& target,
               const BMatrix& P, const BMatrix& Q);
  static FactMorphism identity(const Factorization& f);
  static FactMorphism zero(const Factorization& source, const Factorization& target);

  const Factorization& source() const { return source_; }
  const Factorization& target() const { return target_; }
  const BMatrix& P() const { return p_; }
  const BMatrix& Q() const { return q_; }

  friend FactMorphism operator+(const FactMorphism& a, const FactMorphism& b);
  friend FactMorphism operator-(const FactMorphism& a, const FactMorphism& b);

 private:
  Factorization source_, target_;
  BMatrix p_, q_;
};

// first then second; shapes and endpoints must match.
FactMorphism compose(const FactMorphism& first, const FactMorphism& second);

// Rank r1 + r2 factorization [[-nu^{-1}(D_src), Q], [0, C_tgt]],
// [[-C_src, P], [0, D_tgt]]; validity follows from the morphism conditions and
// is re-checked on construction.
Factorization mapping_cone(const FactMorphism& theta);

// The cone together with the inclusion of the target and the projection onto
// the suspension of the source; onto_suspension after into_cone is zero.
struct StandardTriangle {
  Factorization cone;
  FactMorphism into_cone;
  FactMorphism onto_suspension;
};
StandardTriangle standard_triangle(const FactMorphism& theta);

// Witness (S, T) for a nullhomotopy: P = C_src S + nu(T) D_tgt and
// Q = nu^{-1}(D_src) T + S C_tgt.
struct Homotopy {
  BMatrix S, T;
};

// Decides solvability of the homotopy equations as an exact linear system in
// the 10 r1 r2 scalar unknowns; fills *witness on success when given.
bool is_nullhomotopic(const FactMorphism& theta, Homotopy* witness = nullptr);

// True iff the identity morphism is nullhomotopic.
bool is_contractible(const Factorization& f);

// Homotopy-equivalent unit-free form: rank-1 summands with a unit entry are
// split off one at a time by row and column elimination.  embed and project
// connect the stripped object to the original; project after embed is the
// identity on the nose.
struct StripResult {
  Factorization stripped;
  FactMorphism embed;    // stripped -> original
  FactMorphism project;  // original -> stripped
};
StripResult strip_units(const Factorization& f);

// Existence of a rank-one unit-free factorization compatible with the scaling
// x -> alpha x, y -> alpha^{-1} y: the four scalar equations force
// alpha = -q^{-1}, and the witness is (beta1, beta2, gamma1, gamma2).
struct RankOneScan {
  bool solvable;
  Scalar beta1, beta2, gamma1, gamma2;
};
RankOneScan rank_one_scan(const Scalar& alpha, const AlgebraCtx& ctx);

// Block-diagonal sum; contexts must match.
Factorization direct_sum(const Factorization& a, const Factorization& b);

}  // namespace qcimf
