#include "qcimf/random_gen.hpp"

namespace qcimf {

Scalar random_scalar(const FieldSpec& f, std::mt19937_64& rng) {
  if (f.kind == FieldKind::prime_field) {
    std::uniform_int_distribution<std::uint64_t> d(0, f.p - 1);
    return Scalar::from_int(f, static_cast<long long>(d(rng)));
  }
  std::uniform_int_distribution<int> d(-4, 4);
  return Scalar::from_int(f, d(rng));
}

Scalar random_nonzero_scalar(const FieldSpec& f, std::mt19937_64& rng) {
  while (true) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

Mat random_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols,
                  std::mt19937_64& rng) {
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = random_scalar(f, rng);
  }
  return m;
}

Mat random_invertible_matrix(const FieldSpec& f, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    Mat m = random_matrix(f, n, n, rng);
    if (!m.det().is_zero()) return m;
  }
}

BMatrix random_b_matrix(const AlgebraCtx& ctx, std::size_t rows, std::size_t cols,
                        std::mt19937_64& rng) {
  std::array<Mat, 5> comp{
      random_matrix(ctx.field, rows, cols, rng), random_matrix(ctx.field, rows, cols, rng),
      random_matrix(ctx.field, rows, cols, rng), random_matrix(ctx.field, rows, cols, rng),
      random_matrix(ctx.field, rows, cols, rng)};
  return BMatrix::from_components(ctx, comp);
}

Factorization random_unit_free(const AlgebraCtx& ctx, std::size_t rank,
                               std::mt19937_64& rng) {
  const FieldSpec& f = ctx.field;
  Mat c1 = random_invertible_matrix(f, rank, rng);
  Mat c2 = random_invertible_matrix(f, rank, rng);
  Mat zero(f, rank, rank);
  BMatrix c = BMatrix::from_components(ctx, {zero, c1, c2, random_matrix(f, rank, rank, rng),
                                             random_matrix(f, rank, rank, rng)});
  BMatrix d = BMatrix::from_components(
      ctx, {zero, c2.inverse(), c1.inverse().scale(-ctx.q),
            random_matrix(f, rank, rank, rng), random_matrix(f, rank, rank, rng)});
  return Factorization(ctx, c, d);
}

FactMorphism random_nullhomotopic(const Factorization& source, const Factorization& target,
                                  std::mt19937_64& rng) {
  BMatrix s = random_b_matrix(source.ctx(), source.rank(), target.rank(), rng);
  BMatrix t = random_b_matrix(source.ctx(), source.rank(), target.rank(), rng);
  BMatrix p = source.C() * s + t.nu_map(1) * target.D();
  BMatrix q = source.D().nu_map(-1) * t + s * target.C();
  return FactMorphism(source, target, p, q);
}

}  // namespace qcimf
