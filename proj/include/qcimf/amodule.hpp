#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcimf/algebra.hpp"
#include "qcimf/linalg.hpp"

namespace qcimf {

// Finite-dimensional left module over the 4-dimensional algebra A, given by
// the two action matrices on column vectors.  The defining relations
// X^2 = 0, Y^2 = 0, X Y = q Y X are validated on construction.
class AModule {
 public:
  AModule(const AlgebraCtx& ctx, const Mat& X, const Mat& Y);

  const AlgebraCtx& ctx() const { return ctx_; }
  std::size_t dim() const { return x_.rows(); }
  const Mat& X() const { return x_; }
  const Mat& Y() const { return y_; }

  bool operator==(const AModule& o) const { return ctx_ == o.ctx_ && x_ == o.x_ && y_ == o.y_; }
  bool operator!=(const AModule& o) const { return !(*this == o); }

 private:
  AlgebraCtx ctx_;
  Mat x_, y_;
};

// The 2n-dimensional module with X-block J_n(lambda), Y-block I (lambda
// finite) or X-block I, Y-block J_n(0) (lambda infinite).
AModule make_cn(std::size_t n, const ExtScalar& lambda, const AlgebraCtx& ctx);

// A acting on itself, basis (1, x, y, xy).
AModule regular_module(const AlgebraCtx& ctx);

// The 1-dimensional module with both actions zero.
AModule simple_module(const AlgebraCtx& ctx);

AModule module_direct_sum(const AModule& a, const AModule& b);

// Actions rescaled by the automorphism taken to the given power:
// X -> (-q^{-1})^power X, Y -> (-q)^power Y.
AModule twist_module(const AModule& m, long long power);

// Decomposition into the standard family: free summands plus blocks
// (n, lambda) with lambda in the field or infinite.  Modules outside the
// family come back with classified = false and a reason.
struct ClassificationSummand {
  std::size_t n;
  ExtScalar lambda;

  bool operator==(const ClassificationSummand& o) const {
    return n == o.n && lambda == o.lambda;
  }
};

struct ClassificationReport {
  bool classified = false;
  std::string reason;  // set when classified is false
  std::size_t free_rank = 0;
  std::vector<ClassificationSummand> summands;  // sorted canonically

  bool operator==(const ClassificationReport& o) const {
    return classified == o.classified && free_rank == o.free_rank && summands == o.summands;
  }
};

ClassificationReport classify(const AModule& m);

// Module isomorphism test: classification first when both sides decompose
// into the standard family, otherwise a search for an invertible intertwiner.
// A true verdict is always certified by an exact determinant; false verdicts
// from the search path are one-sided.
bool is_isomorphic(const AModule& a, const AModule& b, std::uint64_t seed = 0x5eed);

// Kernel of the minimal projective cover A^g -> M, where g is the number of
// generators dim(M / rad M); the kernel lies inside rad(A^g).
AModule syzygy(const AModule& m);

// Generator counts of the minimal resolution through the given number of
// steps, with a coarse complexity estimate read off the tail: 0 when the
// counts hit zero, 1 when they plateau, 2 when the differences plateau.
struct BettiSequence {
  std::vector<std::size_t> counts;  // steps + 1 entries
  int cx = 0;
};
BettiSequence betti_sequence(const AModule& m, std::size_t steps);

// Least period 1 <= p <= max_period with syzygy^p(M) isomorphic to M, or
// nothing.  Requires a complexity-one input.
std::optional<std::size_t> periodicity_probe(const AModule& m, std::size_t max_period);

}  // namespace qcimf
