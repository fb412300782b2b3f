#include "qcimf/algebra.hpp"

namespace qcimf {

namespace {

void check_ctx_scalar(const AlgebraCtx& ctx, const Scalar& s) {
  if (s.field() != ctx.field) {
    throw domain_error("scalar field " + s.field().str() + " does not match context field " +
                       ctx.field.str());
  }
}

template <std::size_t N>
void check_ctx_elt(const AlgebraCtx& ctx, const std::array<Scalar, N>& c) {
  for (const auto& s : c) check_ctx_scalar(ctx, s);
}

template <std::size_t N>
std::string render(const std::array<Scalar, N>& c, const char* const* names) {
  std::string out;
  for (std::size_t i = 0; i < N; ++i) {
    if (c[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += c[i].str();
    } else if (c[i].is_one()) {
      out += names[i];
    } else {
      out += "(" + c[i].str() + ")*" + names[i];
    }
  }
  return out.empty() ? "0" : out;
}

const char* const kBNames[5] = {"1", "x", "y", "xy", "yx"};

}  // namespace

AlgebraCtx::AlgebraCtx(FieldSpec f, Scalar q_value) : field(f), q(std::move(q_value)), qinv() {
  if (q.field() != field) {
    throw domain_error("q lives in " + q.field().str() + ", context field is " + field.str());
  }
  if (q.is_zero()) throw domain_error("q must be invertible, got 0");
  qinv = q.inv();
}

BElt b_zero(const AlgebraCtx& ctx) {
  BElt r;
  r.c.fill(Scalar::zero(ctx.field));
  return r;
}

BElt b_one(const AlgebraCtx& ctx) {
  BElt r = b_zero(ctx);
  r.c[kOne] = Scalar::one(ctx.field);
  return r;
}

BElt b_basis(const AlgebraCtx& ctx, std::size_t i) {
  BElt r = b_zero(ctx);
  r.c.at(i) = Scalar::one(ctx.field);
  return r;
}

BElt b_scalar(const AlgebraCtx& ctx, const Scalar& s) {
  BElt r = b_zero(ctx);
  r.c[kOne] = s;
  return r;
}

BElt operator+(const BElt& a, const BElt& b) {
  BElt r = a;
  for (std::size_t i = 0; i < 5; ++i) r.c[i] += b.c[i];
  return r;
}

BElt operator-(const BElt& a, const BElt& b) {
  BElt r = a;
  for (std::size_t i = 0; i < 5; ++i) r.c[i] -= b.c[i];
  return r;
}

BElt operator-(const BElt& a) {
  BElt r = a;
  for (auto& s : r.c) s = -s;
  return r;
}

BElt b_scale(const Scalar& s, const BElt& a) {
  BElt r = a;
  for (auto& v : r.c) v = s * v;
  return r;
}

bool operator==(const BElt& a, const BElt& b) {
  for (std::size_t i = 0; i < 5; ++i) {
    if (a.c[i] != b.c[i]) return false;
  }
  return true;
}

bool b_is_zero(const BElt& a) {
  for (const auto& s : a.c) {
    if (!s.is_zero()) return false;
  }
  return true;
}

std::string b_str(const BElt& a) { return render(a.c, kBNames); }

BElt b_mul(const BElt& a, const BElt& b, const AlgebraCtx& ctx) {
  check_ctx_elt(ctx, a.c);
  check_ctx_elt(ctx, b.c);
  BElt r = b_zero(ctx);
  r.c[kOne] = a.c[kOne] * b.c[kOne];
  r.c[kX] = a.c[kOne] * b.c[kX] + a.c[kX] * b.c[kOne];
  r.c[kY] = a.c[kOne] * b.c[kY] + a.c[kY] * b.c[kOne];
  r.c[kXY] = a.c[kOne] * b.c[kXY] + a.c[kXY] * b.c[kOne] + a.c[kX] * b.c[kY];
  r.c[kYX] = a.c[kOne] * b.c[kYX] + a.c[kYX] * b.c[kOne] + a.c[kY] * b.c[kX];
  return r;
}

BElt nu(const BElt& a, const AlgebraCtx& ctx, long long power) {
  check_ctx_elt(ctx, a.c);
  Scalar fx = (-ctx.qinv).pow(power);
  Scalar fy = (-ctx.q).pow(power);
  BElt r = a;
  r.c[kX] = fx * a.c[kX];
  r.c[kY] = fy * a.c[kY];
  return r;
}

BElt w_elt(const AlgebraCtx& ctx) {
  BElt r = b_zero(ctx);
  r.c[kXY] = Scalar::one(ctx.field);
  r.c[kYX] = -ctx.q;
  return r;
}

AElt a_zero(const AlgebraCtx& ctx) {
  AElt r;
  r.c.fill(Scalar::zero(ctx.field));
  return r;
}

AElt a_one(const AlgebraCtx& ctx) {
  AElt r = a_zero(ctx);
  r.c[kOne] = Scalar::one(ctx.field);
  return r;
}

AElt a_basis(const AlgebraCtx& ctx, std::size_t i) {
  AElt r = a_zero(ctx);
  r.c.at(i) = Scalar::one(ctx.field);
  return r;
}

AElt operator+(const AElt& a, const AElt& b) {
  AElt r = a;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] += b.c[i];
  return r;
}

AElt operator-(const AElt& a, const AElt& b) {
  AElt r = a;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] -= b.c[i];
  return r;
}

AElt operator-(const AElt& a) {
  AElt r = a;
  for (auto& s : r.c) s = -s;
  return r;
}

AElt a_scale(const Scalar& s, const AElt& a) {
  AElt r = a;
  for (auto& v : r.c) v = s * v;
  return r;
}

bool operator==(const AElt& a, const AElt& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (a.c[i] != b.c[i]) return false;
  }
  return true;
}

bool a_is_zero(const AElt& a) {
  for (const auto& s : a.c) {
    if (!s.is_zero()) return false;
  }
  return true;
}

std::string a_str(const AElt& a) { return render(a.c, kBNames); }

AElt a_mul(const AElt& a, const AElt& b, const AlgebraCtx& ctx) {
  check_ctx_elt(ctx, a.c);
  check_ctx_elt(ctx, b.c);
  AElt r = a_zero(ctx);
  r.c[kOne] = a.c[kOne] * b.c[kOne];
  r.c[kX] = a.c[kOne] * b.c[kX] + a.c[kX] * b.c[kOne];
  r.c[kY] = a.c[kOne] * b.c[kY] + a.c[kY] * b.c[kOne];
  r.c[kXY] = a.c[kOne] * b.c[kXY] + a.c[kXY] * b.c[kOne] + a.c[kX] * b.c[kY] +
             ctx.qinv * (a.c[kY] * b.c[kX]);
  return r;
}

AElt nu_a(const AElt& a, const AlgebraCtx& ctx, long long power) {
  check_ctx_elt(ctx, a.c);
  Scalar fx = (-ctx.qinv).pow(power);
  Scalar fy = (-ctx.q).pow(power);
  AElt r = a;
  r.c[kX] = fx * a.c[kX];
  r.c[kY] = fy * a.c[kY];
  return r;
}

AElt reduce_to_A(const BElt& a, const AlgebraCtx& ctx) {
  check_ctx_elt(ctx, a.c);
  AElt r;
  r.c[kOne] = a.c[kOne];
  r.c[kX] = a.c[kX];
  r.c[kY] = a.c[kY];
  r.c[kXY] = a.c[kXY] + ctx.qinv * a.c[kYX];
  return r;
}

}  // namespace qcimf
