#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcimf/linalg.hpp"
#include "qcimf/poly.hpp"

using namespace qcimf;

namespace {

Mat mat_of(FieldSpec f, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Scalar>> parsed;
  for (const auto& r : rows) {
    std::vector<Scalar> pr;
    for (const auto& s : r) pr.push_back(parse_scalar(s, f));
    parsed.push_back(pr);
  }
  return Mat::from_rows(f, parsed);
}

Scalar sc(FieldSpec f, const std::string& s) { return parse_scalar(s, f); }

Mat random_mat(FieldSpec f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Mat m(f, r, c);
  std::uniform_int_distribution<int> d(-6, 6);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar::from_int(f, d(rng));
  }
  return m;
}

Mat random_invertible(FieldSpec f, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    Mat m = random_mat(f, n, n, rng);
    if (!m.det().is_zero()) return m;
  }
}

Poly poly_of(FieldSpec f, const std::vector<std::string>& ascending) {
  std::vector<Scalar> cs;
  for (const auto& s : ascending) cs.push_back(parse_scalar(s, f));
  return Poly::from_coeffs(f, cs);
}

// Independent determinant oracle: cofactor expansion along the first row.
Scalar det_cofactor(const Mat& a) {
  std::size_t n = a.rows();
  if (n == 0) return Scalar::one(a.field());
  if (n == 1) return a.at(0, 0);
  Scalar acc = Scalar::zero(a.field());
  for (std::size_t j = 0; j < n; ++j) {
    if (a.at(0, j).is_zero()) continue;
    Mat minor(a.field(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = a.at(r, c);
      }
    }
    Scalar term = a.at(0, j) * det_cofactor(minor);
    if (j % 2 == 1) term = -term;
    acc += term;
  }
  return acc;
}

}  // namespace

static const FieldSpec Q = FieldSpec::rationals();
static const FieldSpec F7 = FieldSpec::prime_field(7);

TEST_CASE("pinned rank, det, inverse over the rationals") {
  Mat a = mat_of(Q, {{"1", "2"}, {"3", "4"}});
  CHECK(a.rank() == 2);
  CHECK(a.det().str() == "-2");
  Mat ai = a.inverse();
  CHECK(ai == mat_of(Q, {{"-2", "1"}, {"3/2", "-1/2"}}));
  CHECK((a * ai).is_identity());

  Mat b = mat_of(Q, {{"1", "2"}, {"2", "4"}});
  CHECK(b.rank() == 1);
  CHECK(b.det().is_zero());
  CHECK_THROWS_AS(b.inverse(), domain_error);

  Mat c = mat_of(Q, {{"0", "1", "2"}, {"1", "0", "3"}, {"4", "-3", "8"}});
  CHECK(c.det().str() == "-2");  // forces a row swap in elimination
}

TEST_CASE("pinned arithmetic over a small prime field") {
  Mat a = mat_of(F7, {{"3", "5"}, {"1", "2"}});
  CHECK(a.det().str() == "1");
  CHECK(a.inverse() == mat_of(F7, {{"2", "2"}, {"6", "3"}}));
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.rank() == 2);
}

TEST_CASE("randomized inverse and determinant laws") {
  std::mt19937_64 rng(11);
  for (FieldSpec f : {Q, F7}) {
    for (int trial = 0; trial < 20; ++trial) {
      Mat a = random_invertible(f, 4, rng);
      CHECK((a * a.inverse()).is_identity());
      CHECK((a.inverse() * a).is_identity());
      Mat b = random_mat(f, 4, 4, rng);
      CHECK((a * b).det() == a.det() * b.det());
      CHECK(a.det() == det_cofactor(a));
      CHECK(b.det() == det_cofactor(b));
      CHECK(a.transpose().det() == a.det());
    }
  }
}

TEST_CASE("solve returns an exact solution and rejects inconsistency") {
  Mat a = mat_of(Q, {{"1", "2", "1"}, {"2", "4", "3"}});
  Mat b = mat_of(Q, {{"1"}, {"3"}});
  Mat x = a.solve(b);
  CHECK(a * x == b);

  Mat bad_a = mat_of(Q, {{"1", "1"}, {"2", "2"}});
  Mat bad_b = mat_of(Q, {{"1"}, {"3"}});
  CHECK_THROWS_AS(bad_a.solve(bad_b), domain_error);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Mat m = random_mat(F7, 3, 5, rng);
    Mat x0 = random_mat(F7, 5, 2, rng);
    Mat rhs = m * x0;
    Mat got = m.solve(rhs);
    CHECK(m * got == rhs);
  }
}

TEST_CASE("kernels annihilate and have complementary dimension") {
  Mat a = mat_of(Q, {{"1", "2", "3"}, {"2", "4", "6"}});
  Mat rk = a.right_kernel();
  CHECK(rk.cols() == 2);
  CHECK((a * rk).is_zero());
  Mat lk = a.left_kernel();
  CHECK(lk.rows() == 1);
  CHECK((lk * a).is_zero());

  std::mt19937_64 rng(7);
  for (FieldSpec f : {Q, F7}) {
    for (int trial = 0; trial < 10; ++trial) {
      Mat m = random_mat(f, 4, 6, rng);
      Mat k = m.right_kernel();
      CHECK((m * k).is_zero());
      CHECK(m.rank() + k.cols() == 6);
      Mat l = m.left_kernel();
      CHECK((l * m).is_zero());
      CHECK(m.rank() + l.rows() == 4);
    }
  }
}

TEST_CASE("row echelon basis is invariant under row operations") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = random_mat(Q, 3, 5, rng);
    Mat p = random_invertible(Q, 3, rng);
    EchelonBasis ea = echelon_row_basis(a);
    EchelonBasis epa = echelon_row_basis(p * a);
    CHECK(ea.rows == epa.rows);
    CHECK(ea.pivots == epa.pivots);
  }
}

TEST_CASE("coordinates in an echelon basis reconstruct the vector") {
  Mat a = mat_of(Q, {{"1", "0", "2", "1"}, {"0", "1", "-1", "3"}, {"1", "1", "1", "4"}});
  EchelonBasis eb = echelon_row_basis(a);
  CHECK(eb.rows.rows() == 2);

  Mat v = mat_of(Q, {{"3", "-1", "7", "0"}});
  std::vector<Scalar> coords = coords_in_echelon(eb, v);
  Mat rebuilt(Q, 1, 4);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = 0; j < 4; ++j) rebuilt.at(0, j) += coords[i] * eb.rows.at(i, j);
  }
  CHECK(rebuilt == v);

  Mat outside = mat_of(Q, {{"0", "0", "0", "1"}});
  CHECK_THROWS_AS(coords_in_echelon(eb, outside), domain_error);
}

TEST_CASE("pinned block structure from rank filtration") {
  // One 3-block and one 1-block at eigenvalue 2.
  Mat m = mat_of(Q, {{"2", "1", "0", "0"},
                     {"0", "2", "1", "0"},
                     {"0", "0", "2", "0"},
                     {"0", "0", "0", "2"}});
  std::vector<std::size_t> sizes = jordan_block_sizes(m, sc(Q, "2"));
  CHECK(sizes == std::vector<std::size_t>{3, 1});
  CHECK(jordan_block_sizes(m, sc(Q, "0")).empty());

  Mat n = mat_of(Q, {{"0", "1", "0", "0"},
                     {"0", "0", "0", "0"},
                     {"0", "0", "0", "1"},
                     {"0", "0", "0", "0"}});
  CHECK(jordan_block_sizes(n, sc(Q, "0")) == std::vector<std::size_t>{2, 2});
}

TEST_CASE("stacking and powers") {
  Mat a = mat_of(Q, {{"1", "2"}, {"3", "4"}});
  Mat b = mat_of(Q, {{"5"}, {"6"}});
  Mat h = hstack(a, b);
  CHECK(h.cols() == 3);
  CHECK(h.at(0, 2).str() == "5");
  Mat v = vstack(a, a);
  CHECK(v.rows() == 4);
  CHECK(a.pow(0).is_identity());
  CHECK(a.pow(3) == a * a * a);
}

TEST_CASE("matrix operations reject mixed fields") {
  Mat a = mat_of(Q, {{"1"}});
  Mat b = mat_of(F7, {{"1"}});
  CHECK_THROWS_AS(a + b, domain_error);
  CHECK_THROWS_AS(a * b, domain_error);
}

TEST_CASE("polynomial ring basics") {
  Poly p = poly_of(Q, {"-1", "0", "1"});  // t^2 - 1
  Poly f1 = poly_of(Q, {"1", "1"});
  Poly f2 = poly_of(Q, {"-1", "1"});
  CHECK(p == f1 * f2);
  CHECK(p.degree() == 2);
  CHECK((p + poly_of(Q, {"1", "0", "-1"})).is_zero());
  CHECK(p.eval(sc(Q, "3")).str() == "8");
  CHECK(p.eval(sc(Q, "-1")).is_zero());

  auto [q, r] = Poly::divrem(poly_of(Q, {"1", "2", "0", "1"}), poly_of(Q, {"1", "0", "1"}));
  CHECK(q == poly_of(Q, {"0", "1"}));
  CHECK(r == poly_of(Q, {"1", "1"}));
  CHECK_THROWS_AS(Poly::divrem(p, Poly(Q)), domain_error);

  Poly g = Poly::gcd(f1 * f2, f2 * poly_of(Q, {"-3", "1"}));
  CHECK(g == f2);

  Poly scaled = poly_of(Q, {"2", "4"}).monic();
  CHECK(scaled == poly_of(Q, {"1/2", "1"}));
}

TEST_CASE("modular polynomial powers") {
  Poly m = poly_of(F7, {"1", "0", "1"});  // t^2 + 1
  Poly t7 = Poly::pow_mod_x(7, m);
  // t^2 = -1 mod m, so t^7 = t * (t^2)^3 = -t.
  CHECK(t7 == poly_of(F7, {"0", "-1"}));
  Poly base = poly_of(F7, {"3", "1"});
  Poly direct = base;
  for (int i = 1; i < 5; ++i) direct = Poly::divrem(direct * base, m).second;
  CHECK(Poly::pow_mod(base, 5, m) == direct);
}

TEST_CASE("characteristic polynomial matches the determinant oracle") {
  std::mt19937_64 rng(17);
  for (FieldSpec f : {Q, F7}) {
    for (std::size_t n : {1, 2, 3, 5}) {
      for (int trial = 0; trial < 6; ++trial) {
        Mat a = random_mat(f, n, n, rng);
        Poly chi = charpoly(a);
        CHECK(chi.degree() == static_cast<int>(n));
        CHECK(chi.leading().is_one());
        for (int s : {0, 1, -1, 2, 5}) {
          Scalar sv = Scalar::from_int(f, s);
          Mat shifted = Mat::identity(f, n).scale(sv) - a;
          CHECK(chi.eval(sv) == shifted.det());
        }
      }
    }
  }
}

TEST_CASE("pinned characteristic polynomials") {
  // Companion matrix of t^3 - 2t^2 + 3t + 5.
  Mat comp = mat_of(Q, {{"0", "0", "-5"}, {"1", "0", "-3"}, {"0", "1", "2"}});
  CHECK(charpoly(comp) == poly_of(Q, {"5", "3", "-2", "1"}));

  Mat jb = mat_of(Q, {{"2", "1", "0"}, {"0", "2", "1"}, {"0", "0", "2"}});
  Poly lin = poly_of(Q, {"-2", "1"});
  CHECK(charpoly(jb) == lin * lin * lin);

  CHECK(charpoly(Mat(Q, 0, 0)) == Poly::constant(Q, sc(Q, "1")));
}

TEST_CASE("rational roots with multiplicity and unresolved cofactor") {
  // (t - 2)(t + 1/3)^2 (t^2 + 1)
  Poly f = poly_of(Q, {"-2", "1"}) * poly_of(Q, {"1/3", "1"}) * poly_of(Q, {"1/3", "1"}) *
           poly_of(Q, {"1", "0", "1"});
  RootData rd = field_roots(f);
  REQUIRE(rd.roots.size() == 2);
  CHECK(rd.roots[0].first.str() == "-1/3");
  CHECK(rd.roots[0].second == 2);
  CHECK(rd.roots[1].first.str() == "2");
  CHECK(rd.roots[1].second == 1);
  CHECK(rd.remaining == poly_of(Q, {"1", "0", "1"}));

  // Leading coefficient forces fractional candidates: (2t + 1)(3t - 2).
  RootData rd2 = field_roots(poly_of(Q, {"-2", "-1", "6"}));
  REQUIRE(rd2.roots.size() == 2);
  CHECK(rd2.roots[0].first.str() == "-1/2");
  CHECK(rd2.roots[1].first.str() == "2/3");
  CHECK(rd2.remaining.degree() == 0);

  // Root at zero is split off first.
  RootData rd3 = field_roots(poly_of(Q, {"0", "0", "0", "1"}));
  REQUIRE(rd3.roots.size() == 1);
  CHECK(rd3.roots[0].first.is_zero());
  CHECK(rd3.roots[0].second == 3);
  CHECK(rd3.remaining == Poly::constant(Q, sc(Q, "1")));

  CHECK_THROWS_AS(field_roots(Poly(Q)), domain_error);
}

TEST_CASE("prime field roots by residue scan") {
  Poly no_roots = poly_of(F7, {"1", "0", "1"});  // -1 is not a square mod 7
  RootData rd = field_roots(no_roots);
  CHECK(rd.roots.empty());
  CHECK(rd.remaining == no_roots);

  RootData rd2 = field_roots(poly_of(F7, {"-2", "0", "1"}));  // 3^2 = 4^2 = 2
  REQUIRE(rd2.roots.size() == 2);
  CHECK(rd2.roots[0].first.str() == "3");
  CHECK(rd2.roots[1].first.str() == "4");
}

TEST_CASE("prime field roots by Frobenius splitting at large characteristic") {
  FieldSpec F = FieldSpec::prime_field(1000003);
  // 2 is not a square mod 1000003 (the modulus is 3 mod 8).
  Poly f = poly_of(F, {"-5", "1"}) * poly_of(F, {"-7", "1"}) * poly_of(F, {"-2", "0", "1"});
  RootData rd = field_roots(f, 99);
  REQUIRE(rd.roots.size() == 2);
  CHECK(rd.roots[0].first.str() == "5");
  CHECK(rd.roots[0].second == 1);
  CHECK(rd.roots[1].first.str() == "7");
  CHECK(rd.remaining == poly_of(F, {"-2", "0", "1"}));

  // Multiplicity is recovered even though the splitting sees each root once.
  Poly g = poly_of(F, {"-7", "1"}) * poly_of(F, {"-7", "1"}) * poly_of(F, {"-5", "1"});
  RootData rg = field_roots(g, 99);
  REQUIRE(rg.roots.size() == 2);
  CHECK(rg.roots[0].second == 1);
  CHECK(rg.roots[1].second == 2);
  CHECK(rg.remaining.degree() == 0);

  // Seeds pick different splitting elements but the sorted answer is stable.
  CHECK(field_roots(f, 1).roots.size() == rd.roots.size());
}
