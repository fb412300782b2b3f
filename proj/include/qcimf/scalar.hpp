#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "qcimf/errors.hpp"

namespace qcimf {

enum class FieldKind { rationals, prime_field };

// Coefficient field: the rationals, or F_p for a machine-word prime p.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals();
  static FieldSpec prime_field(std::uint64_t p);  // rejects nonprime moduli

  bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }
  std::string str() const;
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Exact field element.  Rationals are kept reduced with positive denominator;
// prime-field residues are kept in [0, p).
class Scalar {
 public:
  Scalar() = default;  // rational zero

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(const FieldSpec& f, long long v);
  static Scalar from_fraction(const FieldSpec& f, long long num, long long den);
  static Scalar from_mpq(const mpq_class& v);
  static Scalar from_residue(const FieldSpec& f, std::uint64_t r);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inv() const;             // division by zero -> domain_error
  Scalar pow(long long e) const;  // negative exponents via inv

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  bool operator==(const Scalar& b) const;  // mismatched fields -> domain_error
  bool operator!=(const Scalar& b) const { return !(*this == b); }

  // Total order used for canonical sorting in reports; not a field structure.
  int cmp(const Scalar& b) const;

  std::string str() const;

  const mpq_class& rat() const;   // rationals only
  std::uint64_t residue() const;  // prime field only

 private:
  FieldSpec field_;
  mpq_class rat_ = 0;
  std::uint64_t res_ = 0;

  void check_same_field(const Scalar& o) const;
};

// Accepts "int" and "int/int" with optional sign over either field; residues
// are reduced into [0, p) and fractions over F_p are resolved by field division.
Scalar parse_scalar(const std::string& text, const FieldSpec& field);

// Scalar extended by a single point at infinity (classification parameter).
class ExtScalar {
 public:
  ExtScalar() = default;  // finite rational zero

  static ExtScalar infinity(const FieldSpec& f);
  static ExtScalar finite(Scalar v);

  bool is_infinity() const { return inf_; }
  const Scalar& value() const;  // infinite point -> domain_error
  const FieldSpec& field() const { return field_; }

  bool operator==(const ExtScalar& o) const;
  bool operator!=(const ExtScalar& o) const { return !(*this == o); }
  int cmp(const ExtScalar& o) const;  // finite values first, infinity last
  std::string str() const;            // infinite point renders as "inf"

 private:
  bool inf_ = false;
  FieldSpec field_;
  Scalar val_;
};

ExtScalar parse_ext_scalar(const std::string& text, const FieldSpec& field);

}  // namespace qcimf
