#include "qcimf/poly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace qcimf {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::from_coeffs(FieldSpec f, std::vector<Scalar> coeffs) {
  Poly p(f);
  for (const auto& s : coeffs) {
    if (s.field() != f) throw domain_error("polynomial coefficient field mismatch");
  }
  p.c_ = std::move(coeffs);
  p.trim();
  return p;
}

Poly Poly::monomial(FieldSpec f, std::size_t deg, const Scalar& coeff) {
  Poly p(f);
  if (!coeff.is_zero()) {
    p.c_.assign(deg + 1, Scalar::zero(f));
    p.c_[deg] = coeff;
  }
  return p;
}

Poly Poly::constant(FieldSpec f, const Scalar& c) { return monomial(f, 0, c); }

Scalar Poly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : Scalar::zero(field_);
}

Scalar Poly::leading() const {
  if (c_.empty()) throw domain_error("leading coefficient of the zero polynomial");
  return c_.back();
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_) throw domain_error("polynomial field mismatch");
  Poly r(a.field_);
  r.c_.assign(std::max(a.c_.size(), b.c_.size()), Scalar::zero(a.field_));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& s : r.c_) s = -s;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_) throw domain_error("polynomial field mismatch");
  Poly r(a.field_);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly Poly::scale(const Scalar& s) const {
  Poly r = *this;
  for (auto& v : r.c_) v = s * v;
  r.trim();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (field_ != o.field_) throw domain_error("polynomial field mismatch");
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return false;
  }
  return true;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
  if (a.field_ != b.field_) throw domain_error("polynomial field mismatch");
  if (b.is_zero()) throw domain_error("polynomial division by zero");
  Poly q(a.field_), r = a;
  if (a.degree() < b.degree()) return {q, r};
  q.c_.assign(a.degree() - b.degree() + 1, Scalar::zero(a.field_));
  Scalar lead_inv = b.leading().inv();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
    Scalar f = r.leading() * lead_inv;
    q.c_[shift] = f;
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
      r.c_[shift + i] -= f * b.c_[i];
    }
    r.trim();
  }
  q.trim();
  return {q, r};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(leading().inv());
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar r = Scalar::zero(field_);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Poly Poly::pow_mod(const Poly& base, std::uint64_t e, const Poly& m) {
  Poly r = constant(m.field_, Scalar::one(m.field_));
  Poly b = divrem(base, m).second;
  while (e) {
    if (e & 1) r = divrem(r * b, m).second;
    b = divrem(b * b, m).second;
    e >>= 1;
  }
  return r;
}

Poly Poly::pow_mod_x(std::uint64_t e, const Poly& m) {
  return pow_mod(monomial(m.field_, 1, Scalar::one(m.field_)), e, m);
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || !c_[i].is_one()) os << "(" << c_[i].str() << ")";
    if (i > 0) os << "t";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

Poly charpoly(const Mat& a) {
  if (a.rows() != a.cols()) throw domain_error("charpoly of a nonsquare matrix");
  const FieldSpec f = a.field();
  const std::size_t n = a.rows();
  Mat h = a;
  // Similarity reduction to upper Hessenberg form with exact pivoting: a row
  // swap is always paired with the matching column swap, and a row operation
  // with the inverse column operation.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h.at(piv, j).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
    }
    Scalar inv = h.at(j + 1, j).inv();
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h.at(i, j).is_zero()) continue;
      Scalar factor = h.at(i, j) * inv;
      for (std::size_t c = 0; c < n; ++c) h.at(i, c) -= factor * h.at(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h.at(r, j + 1) += factor * h.at(r, i);
    }
  }
  // Leading-minor recurrence for the characteristic polynomial of a
  // Hessenberg matrix.
  std::vector<Poly> p;
  p.push_back(Poly::constant(f, Scalar::one(f)));
  Poly t = Poly::monomial(f, 1, Scalar::one(f));
  for (std::size_t k = 1; k <= n; ++k) {
    Poly pk = (t - Poly::constant(f, h.at(k - 1, k - 1))) * p[k - 1];
    Scalar sub = Scalar::one(f);
    for (std::size_t m = 1; m < k; ++m) {
      sub *= h.at(k - m, k - m - 1);
      if (sub.is_zero()) break;
      Scalar term = h.at(k - m - 1, k - 1) * sub;
      if (!term.is_zero()) {
        pk = pk - p[k - m - 1].scale(term);
      }
    }
    p.push_back(pk);
  }
  return p[n];
}

namespace {

// Integer factorization for the rational root search: trial division then
// Pollard-Brent on what remains.
void factor_mpz(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (mpz_class d = 2; d <= 1000000 && d * d <= n; d == 2 ? d = 3 : d += 2) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    ++out[n];
    return;
  }
  // Pollard-Brent rho.
  mpz_class c = 1;
  while (true) {
    mpz_class x = 2, y = 2, d = 1;
    auto step = [&](mpz_class v) { return (v * v + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      mpz_class diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) {
      factor_mpz(d, out);
      factor_mpz(n / d, out);
      return;
    }
    ++c;
  }
}

std::vector<mpz_class> divisors_from_factors(const std::map<mpz_class, unsigned>& factors) {
  std::vector<mpz_class> divs{1};
  for (const auto& [prime, exp] : factors) {
    std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
    if (divs.size() > 2000000) throw domain_error("rational root search exceeds the desk-scale divisor bound");
  }
  return divs;
}

int deflate_all(Poly& f, const Scalar& root) {
  Poly lin = Poly::from_coeffs(f.field(), {-root, Scalar::one(f.field())});
  int mult = 0;
  while (!f.is_zero() && f.degree() >= 1) {
    auto [q, r] = Poly::divrem(f, lin);
    if (!r.is_zero()) break;
    f = q;
    ++mult;
  }
  return mult;
}

void roots_rationals(Poly f, RootData& out) {
  // Denominator-clearing to a primitive integer polynomial.
  mpz_class lcm = 1;
  for (int i = 0; i <= f.degree(); ++i) {
    mpz_class den = f.coeff(static_cast<std::size_t>(i)).rat().get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<mpz_class> n(static_cast<std::size_t>(f.degree()) + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    mpq_class v = f.coeff(static_cast<std::size_t>(i)).rat() * lcm;
    n[static_cast<std::size_t>(i)] = v.get_num();
  }
  mpz_class content = 0;
  for (const auto& c : n) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  for (auto& c : n) c /= content;
  std::map<mpz_class, unsigned> f0, fd;
  factor_mpz(n.front(), f0);
  factor_mpz(n.back(), fd);
  std::vector<mpz_class> nums = divisors_from_factors(f0);
  std::vector<mpz_class> dens = divisors_from_factors(fd);
  if (nums.size() * dens.size() > 2000000) {
    throw domain_error("rational root search exceeds the desk-scale divisor bound");
  }
  std::vector<mpq_class> candidates;
  candidates.reserve(nums.size() * dens.size() * 2);
  for (const auto& p : nums) {
    for (const auto& s : dens) {
      mpq_class c(p, s);
      c.canonicalize();
      candidates.push_back(c);
      candidates.push_back(-c);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& c : candidates) {
    if (f.degree() < 1) break;
    Scalar r = Scalar::from_mpq(c);
    if (!f.eval(r).is_zero()) continue;
    int mult = deflate_all(f, r);
    out.roots.emplace_back(r, mult);
  }
  out.remaining = f.monic();
}

void cz_linear_roots(const Poly& g, std::mt19937_64& rng, std::vector<Scalar>& out) {
  // g is a product of distinct monic linear factors.
  if (g.degree() < 1) return;
  const FieldSpec F = g.field();
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const std::uint64_t p = F.p;
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  while (true) {
    Scalar a = Scalar::from_residue(F, dist(rng));
    Poly shifted = Poly::from_coeffs(F, {a, Scalar::one(F)});
    Poly h = Poly::pow_mod(shifted, (p - 1) / 2, g);
    h = h - Poly::constant(F, Scalar::one(F));
    Poly d = Poly::gcd(h, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      cz_linear_roots(d, rng, out);
      cz_linear_roots(Poly::divrem(g, d).first, rng, out);
      return;
    }
  }
}

void roots_prime_field(Poly f, RootData& out, std::uint64_t seed) {
  const FieldSpec F = f.field();
  const std::uint64_t p = F.p;
  if (p <= 65536) {
    for (std::uint64_t a = 0; a < p && f.degree() >= 1; ++a) {
      Scalar r = Scalar::from_residue(F, a);
      if (!f.eval(r).is_zero()) continue;
      int mult = deflate_all(f, r);
      out.roots.emplace_back(r, mult);
    }
    out.remaining = f.monic();
    return;
  }
  // Distinct linear part via the Frobenius fixed-point polynomial t^p - t.
  Poly frob = Poly::pow_mod_x(p, f) - Poly::monomial(F, 1, Scalar::one(F));
  Poly g = Poly::gcd(frob, f);
  std::mt19937_64 rng(seed);
  std::vector<Scalar> roots;
  cz_linear_roots(g, rng, roots);
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return a.cmp(b) < 0; });
  for (const auto& r : roots) {
    int mult = deflate_all(f, r);
    if (mult > 0) out.roots.emplace_back(r, mult);
  }
  out.remaining = f.monic();
}

}  // namespace

RootData field_roots(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw domain_error("roots of the zero polynomial");
  RootData out{{}, Poly(f.field())};
  Poly g = f;
  // Split off the root at zero first so the constant coefficient is nonzero.
  int zero_mult = 0;
  while (g.degree() >= 1 && g.coeff(0).is_zero()) {
    std::vector<Scalar> shifted;
    for (int i = 1; i <= g.degree(); ++i) shifted.push_back(g.coeff(static_cast<std::size_t>(i)));
    g = Poly::from_coeffs(f.field(), shifted);
    ++zero_mult;
  }
  if (zero_mult > 0) out.roots.emplace_back(Scalar::zero(f.field()), zero_mult);
  if (g.degree() < 1) {
    out.remaining = g.monic();
    return out;
  }
  if (f.field().kind == FieldKind::rationals) {
    roots_rationals(g, out);
  } else {
    roots_prime_field(g, out, seed);
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
  return out;
}

}  // namespace qcimf
