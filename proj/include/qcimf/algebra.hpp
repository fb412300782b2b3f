#pragma once

#include <array>
#include <string>

#include "qcimf/scalar.hpp"

namespace qcimf {

// Working context: coefficient field plus the invertible parameter q.
struct AlgebraCtx {
  FieldSpec field;
  Scalar q;
  Scalar qinv;

  AlgebraCtx(FieldSpec f, Scalar q_value);

  bool operator==(const AlgebraCtx& o) const { return field == o.field && q == o.q; }
  bool operator!=(const AlgebraCtx& o) const { return !(*this == o); }
};

// Basis positions shared by BElt (all five) and AElt (first four).
enum : std::size_t { kOne = 0, kX = 1, kY = 2, kXY = 3, kYX = 4 };

// Element of the 5-dimensional algebra B in the ordered basis (1, x, y, xy, yx).
// The defining relations kill x^2, y^2 and every word of length >= 3, so this
// coefficient vector is the unique normal form.
struct BElt {
  std::array<Scalar, 5> c;
};

// Element of the 4-dimensional algebra A in the ordered basis (1, x, y, xy);
// yx is rewritten as q^{-1} xy, which the reduction map makes canonical.
struct AElt {
  std::array<Scalar, 4> c;
};

BElt b_zero(const AlgebraCtx& ctx);
BElt b_one(const AlgebraCtx& ctx);
BElt b_basis(const AlgebraCtx& ctx, std::size_t i);
BElt b_scalar(const AlgebraCtx& ctx, const Scalar& s);

BElt operator+(const BElt& a, const BElt& b);
BElt operator-(const BElt& a, const BElt& b);
BElt operator-(const BElt& a);
BElt b_scale(const Scalar& s, const BElt& a);
bool operator==(const BElt& a, const BElt& b);
inline bool operator!=(const BElt& a, const BElt& b) { return !(a == b); }
bool b_is_zero(const BElt& a);
std::string b_str(const BElt& a);

// Product in B.  Beyond the unit, the only surviving products of basis
// monomials are x*y = xy and y*x = yx.
BElt b_mul(const BElt& a, const BElt& b, const AlgebraCtx& ctx);

// The algebra automorphism determined by x -> -q^{-1} x, y -> -q y, taken to
// the given integer power (negative powers give the inverse automorphism).
// xy and yx are fixed.
BElt nu(const BElt& a, const AlgebraCtx& ctx, long long power = 1);

// w = xy - q yx.  Central in B, and b*w = 0 for every b in the radical.
BElt w_elt(const AlgebraCtx& ctx);

AElt a_zero(const AlgebraCtx& ctx);
AElt a_one(const AlgebraCtx& ctx);
AElt a_basis(const AlgebraCtx& ctx, std::size_t i);

AElt operator+(const AElt& a, const AElt& b);
AElt operator-(const AElt& a, const AElt& b);
AElt operator-(const AElt& a);
AElt a_scale(const Scalar& s, const AElt& a);
bool operator==(const AElt& a, const AElt& b);
inline bool operator!=(const AElt& a, const AElt& b) { return !(a == b); }
bool a_is_zero(const AElt& a);
std::string a_str(const AElt& a);

// Product in A = B/(w), where y*x = q^{-1} xy and xy annihilates the radical.
AElt a_mul(const AElt& a, const AElt& b, const AlgebraCtx& ctx);

// The automorphism of A induced by nu (well defined because nu fixes w).
AElt nu_a(const AElt& a, const AlgebraCtx& ctx, long long power = 1);

// Quotient map B -> A: (c0, c1, c2, c3, c4) -> (c0, c1, c2, c3 + q^{-1} c4).
// A surjective algebra map whose kernel is the ideal generated by w.
AElt reduce_to_A(const BElt& a, const AlgebraCtx& ctx);

}  // namespace qcimf
