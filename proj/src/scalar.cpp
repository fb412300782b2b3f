#include "qcimf/scalar.hpp"

#include <cctype>

namespace qcimf {

namespace {

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  a %= p;
  b %= p;
  std::uint64_t s = a + b;
  if (s < a || s >= p) s -= p;
  return s;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set decides primality for every 64-bit integer.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FieldSpec FieldSpec::rationals() { return FieldSpec{FieldKind::rationals, 0}; }

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (!is_prime_u64(p)) {
    throw domain_error("prime_field modulus " + std::to_string(p) + " is not prime");
  }
  return FieldSpec{FieldKind::prime_field, p};
}

std::string FieldSpec::str() const {
  return kind == FieldKind::rationals ? "Q" : "F_" + std::to_string(p);
}

Scalar Scalar::zero(const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  if (f.kind == FieldKind::rationals) {
    s.rat_ = 1;
  } else {
    s.res_ = 1 % f.p;
  }
  return s;
}

Scalar Scalar::from_int(const FieldSpec& f, long long v) {
  Scalar s;
  s.field_ = f;
  if (f.kind == FieldKind::rationals) {
    s.rat_ = mpq_class(static_cast<long>(v));
  } else {
    long long r = v % static_cast<long long>(f.p);
    if (r < 0) r += static_cast<long long>(f.p);
    s.res_ = static_cast<std::uint64_t>(r);
  }
  return s;
}

Scalar Scalar::from_fraction(const FieldSpec& f, long long num, long long den) {
  if (den == 0) throw domain_error("fraction with zero denominator");
  return from_int(f, num) / from_int(f, den);
}

Scalar Scalar::from_mpq(const mpq_class& v) {
  Scalar s;
  s.field_ = FieldSpec::rationals();
  s.rat_ = v;
  s.rat_.canonicalize();
  return s;
}

Scalar Scalar::from_residue(const FieldSpec& f, std::uint64_t r) {
  if (f.kind != FieldKind::prime_field) throw domain_error("from_residue requires a prime field");
  Scalar s;
  s.field_ = f;
  s.res_ = r % f.p;
  return s;
}

bool Scalar::is_zero() const {
  return field_.kind == FieldKind::rationals ? rat_ == 0 : res_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind == FieldKind::rationals ? rat_ == 1 : res_ == 1 % field_.p;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_) {
    throw domain_error("mismatched field contexts: " + field_.str() + " vs " + o.field_.str());
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.kind == FieldKind::rationals) {
    s.rat_ = -rat_;
  } else if (res_ != 0) {
    s.res_ = field_.p - res_;
  }
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw domain_error("division by zero in " + field_.str());
  Scalar s = *this;
  if (field_.kind == FieldKind::rationals) {
    s.rat_ = 1 / rat_;
  } else {
    s.res_ = pow_mod(res_, field_.p - 2, field_.p);
  }
  return s;
}

Scalar Scalar::pow(long long e) const {
  Scalar base = e < 0 ? inv() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                               : static_cast<unsigned long long>(e);
  Scalar r = one(field_);
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  Scalar s = a;
  if (a.field_.kind == FieldKind::rationals) {
    s.rat_ = a.rat_ + b.rat_;
  } else {
    s.res_ = add_mod(a.res_, b.res_, a.field_.p);
  }
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  Scalar s = a;
  if (a.field_.kind == FieldKind::rationals) {
    s.rat_ = a.rat_ * b.rat_;
  } else {
    s.res_ = mul_mod(a.res_, b.res_, a.field_.p);
  }
  return s;
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

bool Scalar::operator==(const Scalar& b) const {
  check_same_field(b);
  return field_.kind == FieldKind::rationals ? rat_ == b.rat_ : res_ == b.res_;
}

int Scalar::cmp(const Scalar& b) const {
  check_same_field(b);
  if (field_.kind == FieldKind::rationals) {
    int c = ::cmp(rat_, b.rat_);
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  return res_ < b.res_ ? -1 : res_ > b.res_ ? 1 : 0;
}

std::string Scalar::str() const {
  return field_.kind == FieldKind::rationals ? rat_.get_str() : std::to_string(res_);
}

const mpq_class& Scalar::rat() const {
  if (field_.kind != FieldKind::rationals) throw domain_error("rat() on a prime-field scalar");
  return rat_;
}

std::uint64_t Scalar::residue() const {
  if (field_.kind != FieldKind::prime_field) throw domain_error("residue() on a rational scalar");
  return res_;
}

namespace {

// Splits "[sign]digits" into a validated digit string; returns false on junk.
bool scan_integer(const std::string& s, std::size_t& pos, bool& neg, std::string& digits) {
  neg = false;
  digits.clear();
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    digits.push_back(s[pos]);
    ++pos;
  }
  return pos > start;
}

std::uint64_t digits_mod(const std::string& digits, std::uint64_t p) {
  mpz_class z(digits, 10);
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

}  // namespace

Scalar parse_scalar(const std::string& text, const FieldSpec& field) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string::npos) throw parse_error("empty scalar text");
  std::string s = text.substr(b, e - b + 1);

  std::size_t pos = 0;
  bool num_neg = false, den_neg = false;
  std::string num_digits, den_digits;
  if (!scan_integer(s, pos, num_neg, num_digits)) {
    throw parse_error("malformed scalar text '" + text + "'");
  }
  bool has_den = false;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    has_den = true;
    if (!scan_integer(s, pos, den_neg, den_digits)) {
      throw parse_error("malformed scalar text '" + text + "'");
    }
  }
  if (pos != s.size()) throw parse_error("malformed scalar text '" + text + "'");

  if (field.kind == FieldKind::rationals) {
    mpz_class num(num_digits, 10);
    if (num_neg) num = -num;
    mpz_class den = 1;
    if (has_den) {
      den = mpz_class(den_digits, 10);
      if (den_neg) den = -den;
      if (den == 0) throw domain_error("division by zero in scalar text '" + text + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar::from_mpq(q);
  }

  std::uint64_t r = digits_mod(num_digits, field.p);
  if (num_neg && r != 0) r = field.p - r;
  Scalar v = Scalar::from_residue(field, r);
  if (has_den) {
    std::uint64_t d = digits_mod(den_digits, field.p);
    if (den_neg && d != 0) d = field.p - d;
    if (d == 0) throw domain_error("division by zero in scalar text '" + text + "'");
    v = v / Scalar::from_residue(field, d);
  }
  return v;
}

ExtScalar ExtScalar::infinity(const FieldSpec& f) {
  ExtScalar s;
  s.inf_ = true;
  s.field_ = f;
  s.val_ = Scalar::zero(f);
  return s;
}

ExtScalar ExtScalar::finite(Scalar v) {
  ExtScalar s;
  s.inf_ = false;
  s.field_ = v.field();
  s.val_ = std::move(v);
  return s;
}

const Scalar& ExtScalar::value() const {
  if (inf_) throw domain_error("value() on the infinite point");
  return val_;
}

bool ExtScalar::operator==(const ExtScalar& o) const {
  if (field_ != o.field_) throw domain_error("mismatched field contexts in ExtScalar comparison");
  if (inf_ != o.inf_) return false;
  return inf_ || val_ == o.val_;
}

int ExtScalar::cmp(const ExtScalar& o) const {
  if (inf_ && o.inf_) return 0;
  if (inf_) return 1;
  if (o.inf_) return -1;
  return val_.cmp(o.val_);
}

std::string ExtScalar::str() const { return inf_ ? "inf" : val_.str(); }

ExtScalar parse_ext_scalar(const std::string& text, const FieldSpec& field) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  std::string s = b == std::string::npos ? "" : text.substr(b, e - b + 1);
  if (s == "inf") return ExtScalar::infinity(field);
  return ExtScalar::finite(parse_scalar(text, field));
}

}  // namespace qcimf
