#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qcimf/amodule.hpp"
#include "qcimf/factorization.hpp"

namespace qcimf {

// Matrix over the 4-dimensional quotient algebra A.
class AMatrix {
 public:
  AMatrix(const AlgebraCtx& ctx, std::size_t rows, std::size_t cols);
  static AMatrix identity(const AlgebraCtx& ctx, std::size_t n);

  const AlgebraCtx& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  AElt& at(std::size_t i, std::size_t j);
  const AElt& at(std::size_t i, std::size_t j) const;

  AMatrix operator+(const AMatrix& o) const;
  AMatrix operator-(const AMatrix& o) const;
  AMatrix operator-() const;
  AMatrix operator*(const AMatrix& o) const;
  bool operator==(const AMatrix& o) const;
  bool operator!=(const AMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  // Entrywise application of the algebra automorphism to the given power.
  AMatrix nu_map(long long power) const;

  std::string str() const;

 private:
  AlgebraCtx ctx_;
  std::size_t rows_, cols_;
  std::vector<AElt> e_;
};

// Entrywise reduction of both components of a factorization.  The defining
// identities descend to nu(Cbar) Dbar = 0 and Dbar Cbar = 0, re-checked here.
struct ReducedPair {
  AMatrix cbar;
  AMatrix dbar;
};
ReducedPair reduce_factorization(const Factorization& f);

// Entrywise reduction of a morphism's two components.
struct ReducedChainMap {
  AMatrix p;
  AMatrix q;
};
ReducedChainMap reduce_morphism(const FactMorphism& theta);

// Entrywise reduction of a homotopy witness.
struct ReducedHomotopy {
  AMatrix s;
  AMatrix t;
};
ReducedHomotopy reduce_homotopy(const Homotopy& h);

// True when the reduced witness certifies the reduced chain map as
// chain-nullhomotopic: pbar = Cbar sbar + nu(tbar) Dbar' and
// qbar = nu^{-1}(Dbar) tbar + sbar Cbar'.  Reducing a witness that works
// upstream always certifies, since reduction is an algebra map commuting
// with the automorphism.
bool reduced_homotopy_certifies(const FactMorphism& theta, const Homotopy& h);

// The two k-linear maps of the reduced complex on A^r, as 4r x 4r matrices in
// the component-major coordinate order (component i, basis slot s at 4 i + s):
// phi_c is u -> u Cbar and phi_d is u -> nu(u) Dbar on row vectors u.
struct ReducedComplexMaps {
  Mat phi_c;
  Mat phi_d;
};
ReducedComplexMaps reduced_complex_maps(const Factorization& f);

// One map of the doubly infinite reduced complex: u -> nu^{pre_twist}(u) M.
struct TwistedMap {
  AMatrix mat;
  long long pre_twist;
};

// A finite window of the reduced complex.  As k-linear maps the complex is
// two-periodic: the maps out of even and odd positions are u -> u Cbar and
// u -> nu(u) Dbar, so the window alternates (Cbar, 0) and (Dbar, 1).  The
// constructor re-checks that consecutive composites vanish.
struct ReducedComplexWindow {
  AlgebraCtx ctx;
  std::size_t rank;
  std::vector<long long> positions;  // source position of each map, zero at the start
  std::vector<TwistedMap> maps;
};
ReducedComplexWindow reduced_window(const Factorization& f, std::size_t half_width);

// Exactness of the doubly infinite reduced complex.  Both composites are
// checked to vanish and rank phi_c + rank phi_d must equal 4r; because the
// complex repeats the same two k-linear maps at every other position, this
// two-position certificate covers every position.
bool check_acyclic(const Factorization& f);

// The image of phi_c, carried as a left module: the echelon basis of the image
// in the coordinate order above makes the output deterministic.  The image of
// a rank r factorization with unit-free components is 2r-dimensional with both
// action matrices of rank r.
AModule image_module(const Factorization& f);

// The same module in the proof's block shape, built from the unit-stripped
// factorization: X = [[0, q C1^{-1} C2], [0, 0]], Y = [[0, I], [0, 0]] of size
// 2r'.  Isomorphic to image_module for unit-free input; in general the free
// summands contributed by units are dropped (the stable representative).
AModule image_module_block_form(const Factorization& f);

// One position of the doubly infinite complex of right multiplications
// A -> A by x + (-q)^{n+1} y.
struct SchulzPosition {
  long long n;
  bool composite_zero;  // this map composed with the following one vanishes
  bool exact;           // kernel of this map equals image of the following one
  ClassificationReport cokernel;  // class of A modulo the image of this map
};
struct SchulzReport {
  std::vector<SchulzPosition> positions;  // n from -window to window
  bool all_exact = false;
};
SchulzReport schulz_complex_check(const AlgebraCtx& ctx, std::size_t window);

}  // namespace qcimf
