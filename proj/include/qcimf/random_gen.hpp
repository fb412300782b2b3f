#pragma once

#include <cstdint>
#include <random>

#include "qcimf/factorization.hpp"

namespace qcimf {

// Seeded generators for randomized checks.  Every draw is a pure function of
// the engine state, so a run is reproducible from its seed.

// Small integers over Q, uniform residues over F_p.
Scalar random_scalar(const FieldSpec& f, std::mt19937_64& rng);
Scalar random_nonzero_scalar(const FieldSpec& f, std::mt19937_64& rng);

Mat random_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols,
                  std::mt19937_64& rng);
Mat random_invertible_matrix(const FieldSpec& f, std::size_t n, std::mt19937_64& rng);

BMatrix random_b_matrix(const AlgebraCtx& ctx, std::size_t rows, std::size_t cols,
                        std::mt19937_64& rng);

// Valid unit-free factorization of the given rank via the invertible-pair
// construction plus random nilpotent components.
Factorization random_unit_free(const AlgebraCtx& ctx, std::size_t rank,
                               std::mt19937_64& rng);

// Coboundary of a random witness pair: nullhomotopic by construction.
FactMorphism random_nullhomotopic(const Factorization& source, const Factorization& target,
                                  std::mt19937_64& rng);

}  // namespace qcimf
