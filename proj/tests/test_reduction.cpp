#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcimf/reduction.hpp"

using namespace qcimf;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F7 = FieldSpec::prime_field(7);

AlgebraCtx ctx_q(const std::string& q) { return AlgebraCtx(Q, parse_scalar(q, Q)); }
AlgebraCtx ctx_f7(const std::string& q) { return AlgebraCtx(F7, parse_scalar(q, F7)); }

Scalar sc(const FieldSpec& f, const std::string& s) { return parse_scalar(s, f); }

ExtScalar fin(const FieldSpec& f, const std::string& s) {
  return ExtScalar::finite(parse_scalar(s, f));
}

AElt aelt(const AlgebraCtx& ctx, const std::string& c1, const std::string& cx,
          const std::string& cy, const std::string& cxy) {
  AElt e = a_zero(ctx);
  e.c[kOne] = parse_scalar(c1, ctx.field);
  e.c[kX] = parse_scalar(cx, ctx.field);
  e.c[kY] = parse_scalar(cy, ctx.field);
  e.c[kXY] = parse_scalar(cxy, ctx.field);
  return e;
}

// x + y and x - q y, the basic rank-1 pair.
Factorization basic_pair(const AlgebraCtx& ctx) {
  BElt c = b_zero(ctx);
  c.c[kX] = Scalar::one(ctx.field);
  c.c[kY] = Scalar::one(ctx.field);
  BElt d = b_zero(ctx);
  d.c[kX] = Scalar::one(ctx.field);
  d.c[kY] = -ctx.q;
  return Factorization(ctx, BMatrix::from_entries(ctx, {{c}}),
                       BMatrix::from_entries(ctx, {{d}}));
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

// Fully general unit-free valid factorization.
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

// Coboundary of a random (S, T): nullhomotopic by construction.
FactMorphism random_coboundary(const Factorization& src, const Factorization& tgt,
                               std::mt19937_64& rng) {
  BMatrix s = random_bmat(src.ctx(), src.rank(), tgt.rank(), rng);
  BMatrix t = random_bmat(src.ctx(), src.rank(), tgt.rank(), rng);
  BMatrix p = src.C() * s + t.nu_map(1) * tgt.D();
  BMatrix q = src.D().nu_map(-1) * t + s * tgt.C();
  return FactMorphism(src, tgt, p, q);
}

// The multiplication-by-w morphism (0, w I) on a factorization.
FactMorphism w_morphism(const Factorization& f) {
  const AlgebraCtx& ctx = f.ctx();
  BMatrix p(ctx, f.rank(), f.rank());
  BMatrix q(ctx, f.rank(), f.rank());
  for (std::size_t i = 0; i < f.rank(); ++i) q.at(i, i) = w_elt(ctx);
  return FactMorphism(f, f, p, q);
}

}  // namespace

TEST_CASE("reduction sends the defining pairs to their quotient images") {
  AlgebraCtx ctx = ctx_q("2");
  ReducedPair basic = reduce_factorization(basic_pair(ctx));
  CHECK(basic.cbar.at(0, 0) == aelt(ctx, "0", "1", "1", "0"));
  CHECK(basic.dbar.at(0, 0) == aelt(ctx, "0", "1", "-2", "0"));
  CHECK(a_is_zero(a_mul(nu_a(basic.cbar.at(0, 0), ctx), basic.dbar.at(0, 0), ctx)));

  ReducedPair unit = reduce_factorization(unit_pair(ctx));
  CHECK(unit.cbar.at(0, 0) == a_one(ctx));
  CHECK(a_is_zero(unit.dbar.at(0, 0)));

  ReducedPair canon = reduce_factorization(canonical_factorization(1, sc(Q, "1"), ctx));
  CHECK(canon.cbar.at(0, 0) == aelt(ctx, "0", "1", "1/2", "0"));
  CHECK(canon.dbar.at(0, 0) == aelt(ctx, "0", "2", "-2", "0"));
}

TEST_CASE("matrices over the quotient algebra multiply and twist consistently") {
  AlgebraCtx ctx = ctx_f7("3");
  std::mt19937_64 rng(5);
  Factorization f = random_fact(ctx, 2, rng);
  ReducedPair r = reduce_factorization(f);
  AMatrix id = AMatrix::identity(ctx, 2);
  CHECK(id * r.cbar == r.cbar);
  CHECK(r.cbar * id == r.cbar);
  CHECK(r.cbar.nu_map(1).nu_map(-1) == r.cbar);
  CHECK((r.cbar - r.cbar).is_zero());
}

TEST_CASE("every valid factorization reduces to an exact complex") {
  std::mt19937_64 rng(17);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_q("-1"), ctx_f7("3")}) {
    CHECK(check_acyclic(unit_pair(ctx)));
    CHECK(check_acyclic(basic_pair(ctx)));
    for (std::size_t r : {1, 2, 3}) {
      CHECK(check_acyclic(random_fact(ctx, r, rng)));
    }
  }
}

TEST_CASE("the reduced complex window alternates the two maps") {
  AlgebraCtx ctx = ctx_q("2");
  Factorization f = basic_pair(ctx);
  ReducedComplexWindow w = reduced_window(f, 3);
  REQUIRE(w.maps.size() == 7);
  CHECK(w.positions.front() == -3);
  CHECK(w.positions.back() == 3);
  ReducedPair r = reduce_factorization(f);
  for (std::size_t i = 0; i < w.maps.size(); ++i) {
    bool even = w.positions[i] % 2 == 0;
    CHECK(w.maps[i].pre_twist == (even ? 0 : 1));
    CHECK(w.maps[i].mat == (even ? r.cbar : r.dbar));
  }
}

TEST_CASE("image modules of family factorizations recover the family") {
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    const FieldSpec& f = ctx.field;
    for (std::size_t n : {1, 2, 3}) {
      for (const std::string& lam : {"1", "-1", "2", "1/2"}) {
        Factorization fact = canonical_factorization(n, sc(f, lam), ctx);
        AModule img = image_module(fact);
        CHECK(img.dim() == 2 * n);
        ClassificationReport r = classify(img);
        CHECK(r.classified);
        CHECK(r.free_rank == 0);
        REQUIRE(r.summands.size() == 1);
        CHECK(r.summands[0].n == n);
        CHECK(r.summands[0].lambda == fin(f, lam));
        // The block shape reproduces the family module literally.
        CHECK(image_module_block_form(fact) == make_cn(n, fin(f, lam), ctx));
      }
    }
  }
}

TEST_CASE("the image of the contractible pair is free") {
  AlgebraCtx ctx = ctx_q("2");
  AModule img = image_module(unit_pair(ctx));
  CHECK(img.dim() == 4);
  ClassificationReport r = classify(img);
  CHECK(r.classified);
  CHECK(r.free_rank == 1);
  CHECK(r.summands.empty());
  // The stable representative is zero.
  CHECK(image_module_block_form(unit_pair(ctx)).dim() == 0);
}

TEST_CASE("pinned rank-one image over q = 2") {
  AlgebraCtx ctx = ctx_q("2");
  Factorization f = canonical_factorization(1, sc(Q, "1"), ctx);
  AModule block = image_module_block_form(f);
  Mat expected(Q, 2, 2);
  expected.at(0, 1) = Scalar::one(Q);
  CHECK(block.X() == expected);
  CHECK(block.Y() == expected);
  CHECK(is_isomorphic(image_module(f), block));
}

TEST_CASE("block form agrees with the image module") {
  std::mt19937_64 rng(23);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    for (std::size_t r : {1, 2, 3}) {
      for (int rep = 0; rep < (ctx.field == Q ? 3 : 8); ++rep) {
        Factorization f = random_fact(ctx, r, rng);
        AModule img = image_module(f);
        AModule blk = image_module_block_form(f);
        CHECK(img.dim() == 2 * r);
        CHECK(blk.dim() == 2 * r);
        CHECK(img.X().rank() == r);
        CHECK(img.Y().rank() == r);
        CHECK(blk.X().rank() == r);
        CHECK(blk.Y().rank() == r);
        CHECK(is_isomorphic(img, blk));
      }
    }
  }
}

TEST_CASE("image modules avoid the two excluded family members") {
  std::mt19937_64 rng(31);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    const FieldSpec& f = ctx.field;
    for (std::size_t r : {1, 2, 3}) {
      AModule img = image_module(random_fact(ctx, r, rng));
      AModule zero_mod = make_cn(r, fin(f, "0"), ctx);
      AModule inf_mod = make_cn(r, ExtScalar::infinity(f), ctx);
      // Action ranks r versus r - 1 at the excluded parameters.
      CHECK(zero_mod.X().rank() == r - 1);
      CHECK(inf_mod.Y().rank() == r - 1);
      CHECK(!is_isomorphic(img, zero_mod));
      CHECK(!is_isomorphic(img, inf_mod));
    }
  }
}

TEST_CASE("the image of a direct sum is the direct sum of the images") {
  std::mt19937_64 rng(41);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    Factorization a = random_fact(ctx, 1, rng);
    Factorization b = random_fact(ctx, 2, rng);
    AModule whole = image_module(direct_sum(a, b));
    AModule parts = module_direct_sum(image_module(a), image_module(b));
    CHECK(is_isomorphic(whole, parts));
  }
}

TEST_CASE("multiplication by the central element is killed by reduction but not upstream") {
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_q("-1"), ctx_f7("3")}) {
    FactMorphism theta = w_morphism(basic_pair(ctx));
    CHECK(!is_nullhomotopic(theta));
    ReducedChainMap reduced = reduce_morphism(theta);
    CHECK(reduced.p.is_zero());
    CHECK(reduced.q.is_zero());
  }
  // Control: with the w entry replaced by zero the morphism is the zero
  // morphism, which of course is nullhomotopic.
  AlgebraCtx ctx = ctx_q("2");
  Factorization f = basic_pair(ctx);
  FactMorphism zero = FactMorphism::zero(f, f);
  CHECK(is_nullhomotopic(zero));
}

TEST_CASE("homotopy witnesses transport through reduction") {
  std::mt19937_64 rng(53);
  for (const AlgebraCtx& ctx : {ctx_q("2"), ctx_f7("3")}) {
    for (int rep = 0; rep < 4; ++rep) {
      Factorization src = random_fact(ctx, 2, rng);
      Factorization tgt = random_fact(ctx, rep % 2 ? 1 : 2, rng);
      FactMorphism theta = random_coboundary(src, tgt, rng);
      Homotopy wit{BMatrix(ctx, 0, 0), BMatrix(ctx, 0, 0)};
      REQUIRE(is_nullhomotopic(theta, &wit));
      CHECK(reduced_homotopy_certifies(theta, wit));
    }
  }
}

TEST_CASE("the alternating-sign complex is exact with drifting cokernels") {
  AlgebraCtx ctx = ctx_q("2");
  SchulzReport report = schulz_complex_check(ctx, 7);
  CHECK(report.all_exact);
  REQUIRE(report.positions.size() == 15);
  std::vector<ExtScalar> seen;
  for (const SchulzPosition& pos : report.positions) {
    CHECK(pos.composite_zero);
    CHECK(pos.exact);
    REQUIRE(pos.cokernel.classified);
    REQUIRE(pos.cokernel.summands.size() == 1);
    CHECK(pos.cokernel.summands[0].n == 1);
    Scalar mu = -((-ctx.q).pow(pos.n + 1));
    CHECK(pos.cokernel.summands[0].lambda == ExtScalar::finite(mu));
    seen.push_back(pos.cokernel.summands[0].lambda);
  }
  // q = 2 is not a root of unity over the rationals: all classes distinct.
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (std::size_t j = i + 1; j < seen.size(); ++j) CHECK(!(seen[i] == seen[j]));
  }
}

TEST_CASE("the alternating-sign complex at q = 1 has period-two cokernels") {
  AlgebraCtx ctx = ctx_q("1");
  SchulzReport report = schulz_complex_check(ctx, 4);
  CHECK(report.all_exact);
  for (const SchulzPosition& pos : report.positions) {
    Scalar expected = pos.n % 2 == 0 ? Scalar::one(Q) : -Scalar::one(Q);
    REQUIRE(pos.cokernel.summands.size() == 1);
    CHECK(pos.cokernel.summands[0].lambda == ExtScalar::finite(expected));
  }
}

TEST_CASE("the alternating-sign complex over a finite field") {
  AlgebraCtx ctx = ctx_f7("3");
  SchulzReport report = schulz_complex_check(ctx, 5);
  CHECK(report.all_exact);
  for (const SchulzPosition& pos : report.positions) {
    Scalar mu = -((-ctx.q).pow(pos.n + 1));
    REQUIRE(pos.cokernel.summands.size() == 1);
    CHECK(pos.cokernel.summands[0].lambda == ExtScalar::finite(mu));
  }
}
