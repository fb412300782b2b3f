#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcimf/factorization.hpp"

using namespace qcimf;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F7 = FieldSpec::prime_field(7);

AlgebraCtx ctx_q(const std::string& q) { return AlgebraCtx(Q, parse_scalar(q, Q)); }
AlgebraCtx ctx_f7(const std::string& q) { return AlgebraCtx(F7, parse_scalar(q, F7)); }

// Rank-1 matrix whose single entry is a linear combination of basis monomials.
BMatrix belt1(const AlgebraCtx& ctx, const std::string& c1, const std::string& cx,
              const std::string& cy, const std::string& cxy, const std::string& cyx) {
  BElt e = b_zero(ctx);
  e.c[kOne] = parse_scalar(c1, ctx.field);
  e.c[kX] = parse_scalar(cx, ctx.field);
  e.c[kY] = parse_scalar(cy, ctx.field);
  e.c[kXY] = parse_scalar(cxy, ctx.field);
  e.c[kYX] = parse_scalar(cyx, ctx.field);
  return BMatrix::from_entries(ctx, {{e}});
}

// x + y and x - q y, the basic rank-1 pair.
Factorization basic_pair(const AlgebraCtx& ctx) {
  BMatrix c = belt1(ctx, "0", "1", "1", "0", "0");
  BElt d = b_zero(ctx);
  d.c[kX] = Scalar::one(ctx.field);
  d.c[kY] = -ctx.q;
  return Factorization(ctx, c, BMatrix::from_entries(ctx, {{d}}));
}

// 1 and w: contractible rank-1 factorization with a unit entry.
Factorization unit_pair(const AlgebraCtx& ctx) {
  BMatrix c(ctx, 1, 1);
  c.at(0, 0) = b_one(ctx);
  BMatrix d(ctx, 1, 1);
  d.at(0, 0) = w_elt(ctx);
  return Factorization(ctx, c, d);
}

Mat random_mat(FieldSpec f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Mat m(f, r, c);
  std::uniform_int_distribution<int> d(-4, 4);
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

// Fully general unit-free valid factorization: the linear components are an
// invertible pair, the xy and yx components are free.
Factorization random_fact(const AlgebraCtx& ctx, std::size_t r, std::mt19937_64& rng) {
  FieldSpec f = ctx.field;
  Mat c1 = random_invertible(f, r, rng);
  Mat c2 = random_invertible(f, r, rng);
  Mat zero(f, r, r);
  BMatrix c = BMatrix::from_components(
      ctx, {zero, c1, c2, random_mat(f, r, r, rng), random_mat(f, r, r, rng)});
  BMatrix d = BMatrix::from_components(
      ctx, {zero, c2.inverse(), c1.inverse().scale(-ctx.q), random_mat(f, r, r, rng),
            random_mat(f, r, r, rng)});
  return Factorization(ctx, c, d);
}

BMatrix random_bmat(const AlgebraCtx& ctx, std::size_t r, std::size_t c,
                    std::mt19937_64& rng) {
  std::array<Mat, 5> comp{random_mat(ctx.field, r, c, rng), random_mat(ctx.field, r, c, rng),
                          random_mat(ctx.field, r, c, rng), random_mat(ctx.field, r, c, rng),
                          random_mat(ctx.field, r, c, rng)};
  return BMatrix::from_components(ctx, comp);
}

// Coboundary of a random (S, T): always a valid morphism, nullhomotopic by
// construction.
FactMorphism random_coboundary(const Factorization& src, const Factorization& tgt,
                               std::mt19937_64& rng) {
  BMatrix s = random_bmat(src.ctx(), src.rank(), tgt.rank(), rng);
  BMatrix t = random_bmat(src.ctx(), src.rank(), tgt.rank(), rng);
  BMatrix p = src.C() * s + t.nu_map(1) * tgt.D();
  BMatrix q = src.D().nu_map(-1) * t + s * tgt.C();
  return FactMorphism(src, tgt, p, q);
}

}  // namespace

TEST_CASE("validation accepts the basic pair and the unit pair") {
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_q("-1"), ctx_f7("3")}) {
    Factorization f = basic_pair(ctx);
    CHECK(f.rank() == 1);
    Factorization u = unit_pair(ctx);
    CHECK(u.rank() == 1);
  }
}

TEST_CASE("validation rejects a non-factorization with the named identity") {
  AlgebraCtx ctx = ctx_q("2");
  BMatrix c = belt1(ctx, "0", "1", "0", "0", "0");  // x
  BMatrix d = belt1(ctx, "0", "0", "1", "0", "0");  // y
  try {
    Factorization f(ctx, c, d);
    FAIL("expected axiom_error");
  } catch (const axiom_error& e) {
    CHECK(e.identity == "nu(C) D = w I");
    CHECK(e.has_entry);
    CHECK(e.row == 0);
    CHECK(e.col == 0);
  }
}

TEST_CASE("component decomposition reads off coefficients and reassembles") {
  AlgebraCtx ctx = ctx_q("2");
  ComponentDecomposition lin = decompose(belt1(ctx, "0", "1", "1/2", "0", "0"));
  CHECK(lin.c1.at(0, 0).str() == "1");
  CHECK(lin.c2.at(0, 0).str() == "1/2");
  CHECK(lin.c0.is_zero());
  CHECK(lin.c3.is_zero());
  CHECK(lin.c4.is_zero());

  BMatrix w(ctx, 1, 1);
  w.at(0, 0) = w_elt(ctx);
  ComponentDecomposition dw = decompose(w);
  CHECK(dw.c3.at(0, 0).str() == "1");
  CHECK(dw.c4.at(0, 0).str() == "-2");

  std::mt19937_64 rng(3);
  BMatrix m = random_bmat(ctx, 3, 2, rng);
  std::array<Mat, 5> comp = m.components();
  CHECK(BMatrix::from_components(ctx, comp) == m);
}

TEST_CASE("component rank report requires a unit-free input") {
  AlgebraCtx ctx = ctx_q("2");
  ComponentRanks r1 = check_component_invertibility(basic_pair(ctx));
  CHECK(r1.c1 == 1);
  CHECK(r1.c2 == 1);
  CHECK(r1.d1 == 1);
  CHECK(r1.d2 == 1);

  Scalar one = Scalar::one(Q);
  ComponentRanks r2 = check_component_invertibility(canonical_factorization(2, one, ctx));
  CHECK(r2.c1 == 2);
  CHECK(r2.c2 == 2);
  CHECK(r2.d1 == 2);
  CHECK(r2.d2 == 2);

  ComponentRanks r3 =
      check_component_invertibility(direct_sum(basic_pair(ctx), canonical_factorization(2, one, ctx)));
  CHECK(r3.c1 == 3);
  CHECK(r3.d2 == 3);

  CHECK_THROWS_AS(check_component_invertibility(unit_pair(ctx)), domain_error);
}

TEST_CASE("the invertible-pair construction is valid and pins the rank-1 case") {
  AlgebraCtx ctx = ctx_q("2");
  Mat i1 = Mat::identity(Q, 1);
  Mat half(Q, 1, 1);
  half.at(0, 0) = parse_scalar("1/2", Q);
  Factorization f = from_invertible_pair(i1, half, ctx);
  CHECK(f.C().at(0, 0).c[kX].str() == "1");
  CHECK(f.C().at(0, 0).c[kY].str() == "1/2");
  CHECK(f.D().at(0, 0).c[kX].str() == "2");
  CHECK(f.D().at(0, 0).c[kY].str() == "-2");

  AlgebraCtx c3 = ctx_q("3");
  Mat swap = Mat(Q, 2, 2);
  swap.at(0, 1) = Scalar::one(Q);
  swap.at(1, 0) = Scalar::one(Q);
  Factorization g = from_invertible_pair(Mat::identity(Q, 2), swap, c3);
  CHECK(g.rank() == 2);

  Factorization h = from_invertible_pair(Mat::identity(Q, 3), Mat::identity(Q, 3), ctx);
  CHECK(h.C().component(kX).is_identity());
  CHECK(h.C().component(kY).is_identity());
  CHECK(h.D().component(kY) == Mat::identity(Q, 3).scale(parse_scalar("-2", Q)));

  Mat sing(Q, 2, 2);
  sing.at(0, 0) = Scalar::one(Q);
  CHECK_THROWS_AS(from_invertible_pair(sing, Mat::identity(Q, 2), ctx), domain_error);
}

TEST_CASE("canonical factorizations exist exactly for nonzero eigenvalues") {
  AlgebraCtx ctx = ctx_q("2");
  Factorization f = canonical_factorization(1, Scalar::one(Q), ctx);
  CHECK(f.C().at(0, 0).c[kX].str() == "1");
  CHECK(f.C().at(0, 0).c[kY].str() == "1/2");
  CHECK(f.D().at(0, 0).c[kX].str() == "2");
  CHECK(f.D().at(0, 0).c[kY].str() == "-2");

  Factorization g = canonical_factorization(2, parse_scalar("3", Q), ctx);
  CHECK(g.rank() == 2);
  CHECK(g.C().component(kY).at(0, 1).str() == "1/2");  // q^{-1} off-diagonal

  CHECK_THROWS_AS(canonical_factorization(1, Scalar::zero(Q), ctx), domain_error);
}

TEST_CASE("suspension of the basic pair is pinned and squares to the twist") {
  AlgebraCtx ctx = ctx_q("2");
  Factorization s = suspension(basic_pair(ctx));
  // (-nu^{-1}(x - 2y), -(x + y)) = (2x - y, -x - y).
  CHECK(s.C().at(0, 0).c[kX].str() == "2");
  CHECK(s.C().at(0, 0).c[kY].str() == "-1");
  CHECK(s.D().at(0, 0).c[kX].str() == "-1");
  CHECK(s.D().at(0, 0).c[kY].str() == "-1");

  std::mt19937_64 rng(21);
  for (const AlgebraCtx& c : {ctx_q("2"), ctx_f7("3")}) {
    for (int trial = 0; trial < 8; ++trial) {
      Factorization f = random_fact(c, 1 + trial % 3, rng);
      Factorization s2 = suspension(suspension(f));
      CHECK(s2.C() == f.C().nu_map(-1));
      CHECK(s2.D() == f.D().nu_map(-1));
    }
  }
}

TEST_CASE("inverses over the algebra terminate on the radical filtration") {
  std::mt19937_64 rng(31);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    for (int trial = 0; trial < 6; ++trial) {
      BMatrix m = random_bmat(ctx, 3, 3, rng);
      Mat unit = random_invertible(ctx.field, 3, rng);
      BMatrix shifted = m - BMatrix::scalar_embed(ctx, m.component(kOne)) +
                        BMatrix::scalar_embed(ctx, unit);
      BMatrix inv = bmat_inverse(shifted);
      CHECK((shifted * inv) == BMatrix::identity(ctx, 3));
    }
  }
  AlgebraCtx ctx = ctx_q("2");
  BMatrix nilpotent(ctx, 1, 1);
  nilpotent.at(0, 0) = b_basis(ctx, kX);
  CHECK_THROWS_AS(bmat_inverse(nilpotent), domain_error);
}

TEST_CASE("morphism validation enforces the commuting squares") {
  AlgebraCtx ctx = ctx_q("2");
  Factorization f = basic_pair(ctx);
  FactMorphism id = FactMorphism::identity(f);
  CHECK(id.P() == BMatrix::identity(ctx, 1));

  // P = 0, Q = w is a morphism (w kills the radical), and a famous one.
  BMatrix zero(ctx, 1, 1);
  BMatrix w(ctx, 1, 1);
  w.at(0, 0) = w_elt(ctx);
  FactMorphism theta(f, f, zero, w);
  CHECK(theta.Q().at(0, 0).c[kXY].str() == "1");

  // Q = w, P = 0 fails the second square on the unit pair against itself
  // swapped: use an arbitrary wrong pair instead.
  BMatrix bad = BMatrix::identity(ctx, 1);
  try {
    FactMorphism m(f, f, bad, zero);
    FAIL("expected axiom_error");
  } catch (const axiom_error& e) {
    CHECK(e.identity == "C Q = P C'");
  }
}

TEST_CASE("coboundaries are valid morphisms and compose") {
  std::mt19937_64 rng(41);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    Factorization f = random_fact(ctx, 2, rng);
    Factorization g = random_fact(ctx, 1, rng);
    Factorization h = random_fact(ctx, 2, rng);
    FactMorphism a = random_coboundary(f, g, rng);
    FactMorphism b = random_coboundary(g, h, rng);
    FactMorphism ab = compose(a, b);
    CHECK(ab.P() == a.P() * b.P());
    FactMorphism z = FactMorphism::zero(f, g);
    CHECK((a - a).P() == z.P());
    CHECK((a + z).P() == a.P());
  }
}

TEST_CASE("mapping cone of zero splits as suspension plus target") {
  std::mt19937_64 rng(43);
  AlgebraCtx ctx = ctx_q("2");
  Factorization f = random_fact(ctx, 2, rng);
  Factorization g = random_fact(ctx, 1, rng);
  Factorization cone = mapping_cone(FactMorphism::zero(f, g));
  Factorization split = direct_sum(suspension(f), g);
  CHECK(cone.C() == split.C());
  CHECK(cone.D() == split.D());
}

TEST_CASE("cones of random morphisms validate and triangles commute") {
  std::mt19937_64 rng(47);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    for (int trial = 0; trial < 4; ++trial) {
      Factorization f = random_fact(ctx, 2, rng);
      Factorization g = random_fact(ctx, 1 + trial % 2, rng);
      FactMorphism theta = random_coboundary(f, g, rng);
      StandardTriangle tri = standard_triangle(theta);
      CHECK(tri.cone.rank() == f.rank() + g.rank());
      FactMorphism around = compose(tri.into_cone, tri.onto_suspension);
      CHECK(around.P().is_zero());
      CHECK(around.Q().is_zero());
      // theta then the inclusion lands in the second block of the cone.
      FactMorphism in = compose(theta, tri.into_cone);
      CHECK(in.P().submatrix(0, 0, f.rank(), f.rank()).is_zero());
    }
  }
}

TEST_CASE("homotopy decision: basic verdicts") {
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_q("-1"), ctx_f7("3")}) {
    Factorization f = basic_pair(ctx);
    Homotopy h{BMatrix(ctx, 0, 0), BMatrix(ctx, 0, 0)};
    CHECK(is_nullhomotopic(FactMorphism::zero(f, f), &h));
    CHECK(h.S.is_zero());
    CHECK(h.T.is_zero());

    // P = 0, Q = w is not nullhomotopic: the witness system is inconsistent.
    BMatrix zero(ctx, 1, 1);
    BMatrix w(ctx, 1, 1);
    w.at(0, 0) = w_elt(ctx);
    CHECK_FALSE(is_nullhomotopic(FactMorphism(f, f, zero, w)));

    // The factorization (1, w) is zero in the homotopy category.
    CHECK(is_contractible(unit_pair(ctx)));
    CHECK_FALSE(is_contractible(f));
  }
}

TEST_CASE("homotopy decision: witnesses and congruence") {
  std::mt19937_64 rng(53);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    Factorization f = random_fact(ctx, 2, rng);
    Factorization g = random_fact(ctx, 2, rng);
    FactMorphism cob = random_coboundary(f, g, rng);
    Homotopy h{BMatrix(ctx, 0, 0), BMatrix(ctx, 0, 0)};
    CHECK(is_nullhomotopic(cob, &h));
    CHECK(f.C() * h.S + h.T.nu_map(1) * g.D() == cob.P());

    // Composing a nullhomotopic morphism on either side stays nullhomotopic.
    FactMorphism other = random_coboundary(g, f, rng);
    CHECK(is_nullhomotopic(compose(cob, other)));
    CHECK(is_nullhomotopic(compose(other, cob)));
    CHECK(is_nullhomotopic(compose(cob, FactMorphism::identity(g))));
  }
}

TEST_CASE("the cone of an identity is contractible") {
  std::mt19937_64 rng(59);
  AlgebraCtx cq = ctx_q("2");
  Factorization fq = random_fact(cq, 1, rng);
  CHECK(is_contractible(mapping_cone(FactMorphism::identity(fq))));
  AlgebraCtx cf = ctx_f7("3");
  for (std::size_t r : {1, 2}) {
    Factorization ff = random_fact(cf, r, rng);
    CHECK(is_contractible(mapping_cone(FactMorphism::identity(ff))));
  }
}

TEST_CASE("unit stripping removes split contractible summands") {
  std::mt19937_64 rng(61);
  AlgebraCtx ctx = ctx_q("2");

  // Unit summand in front: the complement comes back verbatim.
  Factorization f = random_fact(ctx, 2, rng);
  StripResult s1 = strip_units(direct_sum(unit_pair(ctx), f));
  CHECK(s1.stripped.C() == f.C());
  CHECK(s1.stripped.D() == f.D());

  // Unit summand behind a rank-1 block.
  Factorization f1 = basic_pair(ctx);
  StripResult s2 = strip_units(direct_sum(f1, unit_pair(ctx)));
  CHECK(s2.stripped.C() == f1.C());

  // Unit-free input is untouched.
  StripResult s3 = strip_units(f);
  CHECK(s3.stripped.C() == f.C());
  CHECK(s3.embed.P() == BMatrix::identity(ctx, 2));

  // A lone unit pair strips to the zero object.
  StripResult s4 = strip_units(unit_pair(ctx));
  CHECK(s4.stripped.rank() == 0);
  CHECK(is_contractible(s4.stripped));
}

TEST_CASE("unit stripping yields a homotopy equivalence") {
  std::mt19937_64 rng(67);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    Factorization f = random_fact(ctx, 2, rng);
    Factorization padded = direct_sum(unit_pair(ctx), f);
    StripResult s = strip_units(padded);
    CHECK(s.stripped.rank() == 2);

    FactMorphism round = compose(s.embed, s.project);  // stripped -> stripped
    CHECK(round.P() == BMatrix::identity(ctx, 2));
    CHECK(round.Q() == BMatrix::identity(ctx, 2));

    FactMorphism other_way = compose(s.project, s.embed);  // padded -> padded
    CHECK(is_nullhomotopic(other_way - FactMorphism::identity(padded)));
  }
}

TEST_CASE("stripping preserves homotopy verdicts under the connecting maps") {
  std::mt19937_64 rng(71);
  AlgebraCtx ctx = ctx_f7("3");
  Factorization f = random_fact(ctx, 2, rng);
  Factorization padded = direct_sum(unit_pair(ctx), f);
  StripResult s = strip_units(padded);

  FactMorphism id_s = FactMorphism::identity(s.stripped);
  FactMorphism conj_id = compose(s.project, compose(id_s, s.embed));
  CHECK(is_nullhomotopic(conj_id) == is_nullhomotopic(id_s));

  FactMorphism cob = random_coboundary(s.stripped, s.stripped, rng);
  FactMorphism conj_cob = compose(s.project, compose(cob, s.embed));
  CHECK(is_nullhomotopic(conj_cob));
}

TEST_CASE("rank-one scaling scan singles out -1/q") {
  AlgebraCtx ctx = ctx_q("2");
  RankOneScan hit = rank_one_scan(parse_scalar("-1/2", Q), ctx);
  CHECK(hit.solvable);
  CHECK(hit.beta1.str() == "1");
  CHECK(hit.beta2.str() == "1");
  CHECK(hit.gamma1.str() == "1");
  CHECK(hit.gamma2.str() == "-2");
  // All four defining equations hold for the witness.
  Scalar alpha = parse_scalar("-1/2", Q);
  CHECK(alpha * hit.beta1 * hit.gamma2 == Scalar::one(Q));
  CHECK(alpha.inv() * hit.beta2 * hit.gamma1 == -ctx.q);
  CHECK(hit.gamma1 * hit.beta2 == Scalar::one(Q));
  CHECK(hit.gamma2 * hit.beta1 == -ctx.q);

  CHECK_FALSE(rank_one_scan(Scalar::one(Q), ctx).solvable);
  CHECK_THROWS_AS(rank_one_scan(Scalar::zero(Q), ctx), domain_error);

  // Exhaustive over the nonzero residues: only -q^{-1} = 3 works for q = 2.
  AlgebraCtx cf = AlgebraCtx(F7, parse_scalar("2", F7));
  for (int a = 1; a < 7; ++a) {
    bool got = rank_one_scan(Scalar::from_int(F7, a), cf).solvable;
    CHECK(got == (a == 3));
  }
}

TEST_CASE("direct sums block and reject mixed contexts") {
  AlgebraCtx ctx = ctx_q("2");
  Factorization s = direct_sum(basic_pair(ctx), unit_pair(ctx));
  CHECK(s.rank() == 2);
  CHECK(s.C().at(0, 1).c[kX].is_zero());
  CHECK_THROWS_AS(direct_sum(basic_pair(ctx), basic_pair(ctx_q("3"))), domain_error);
}
