#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcimf/linalg.hpp"
#include "qcimf/scalar.hpp"

namespace qcimf {

// Dense univariate polynomial over an exact field, coefficients ascending,
// normalized with no trailing zeros.
class Poly {
 public:
  explicit Poly(FieldSpec f) : field_(f) {}
  static Poly from_coeffs(FieldSpec f, std::vector<Scalar> coeffs);
  static Poly monomial(FieldSpec f, std::size_t deg, const Scalar& coeff);
  static Poly constant(FieldSpec f, const Scalar& c);

  const FieldSpec& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(std::size_t i) const;
  Scalar leading() const;  // zero polynomial -> domain_error

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scale(const Scalar& s) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Euclidean division; b must be nonzero.
  static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
  Poly monic() const;
  static Poly gcd(Poly a, Poly b);  // monic normalization

  Scalar eval(const Scalar& x) const;

  // t^e modulo m, for the Frobenius map in root finding.
  static Poly pow_mod_x(std::uint64_t e, const Poly& m);
  static Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& m);

  std::string str() const;

 private:
  FieldSpec field_;
  std::vector<Scalar> c_;
  void trim();
};

// Characteristic polynomial det(t I - A), monic, via exact Hessenberg
// reduction (valid over any field, including small characteristic).
Poly charpoly(const Mat& a);

// Roots of f in its own field with multiplicities, plus the monic cofactor
// with no roots in the field.  Deterministic for a fixed seed.
struct RootData {
  std::vector<std::pair<Scalar, int>> roots;  // sorted by Scalar order
  Poly remaining;
};
RootData field_roots(const Poly& f, std::uint64_t seed = 0x5eed);

}  // namespace qcimf
