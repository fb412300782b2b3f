#include "qcimf/json_io.hpp"

#include "qcimf/errors.hpp"

namespace qcimf {

namespace {

const Json& expect_object(const Json& j, const char* what) {
  if (!j.is_object()) throw parse_error(std::string(what) + ": expected a JSON object");
  return j;
}

const Json& expect_array(const Json& j, const char* what) {
  if (!j.is_array()) throw parse_error(std::string(what) + ": expected a JSON array");
  return j;
}

const Json& field_at(const Json& j, const char* key, const char* what) {
  expect_object(j, what);
  auto it = j.find(key);
  if (it == j.end()) {
    throw parse_error(std::string(what) + ": missing key \"" + key + "\"");
  }
  return *it;
}

std::string string_at(const Json& j, const char* key, const char* what) {
  const Json& v = field_at(j, key, what);
  if (!v.is_string()) {
    throw parse_error(std::string(what) + ": key \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

std::size_t size_at(const Json& j, const char* key, const char* what) {
  const Json& v = field_at(j, key, what);
  if (!v.is_number_unsigned()) {
    throw parse_error(std::string(what) + ": key \"" + key +
                      "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

Json field_to_json(const FieldSpec& f) {
  Json j;
  if (f.kind == FieldKind::rationals) {
    j["kind"] = "rationals";
  } else {
    j["kind"] = "prime_field";
    j["p"] = f.p;
  }
  return j;
}

FieldSpec field_from_json(const Json& j) {
  std::string kind = string_at(j, "kind", "field");
  if (kind == "rationals") {
    if (j.contains("p")) throw parse_error("field: \"p\" is only valid for prime_field");
    return FieldSpec::rationals();
  }
  if (kind == "prime_field") {
    return FieldSpec::prime_field(size_at(j, "p", "field"));
  }
  throw parse_error("field: unknown kind \"" + kind + "\"");
}

Json ctx_to_json(const AlgebraCtx& ctx) {
  Json j;
  j["field"] = field_to_json(ctx.field);
  j["q"] = ctx.q.str();
  return j;
}

AlgebraCtx ctx_from_json(const Json& j) {
  FieldSpec f = field_from_json(field_at(j, "field", "ctx"));
  return AlgebraCtx(f, parse_scalar(string_at(j, "q", "ctx"), f));
}

namespace {

template <typename Elt, std::size_t N>
Json coeffs_to_json(const Elt& e) {
  Json j = Json::array();
  for (std::size_t i = 0; i < N; ++i) j.push_back(e.c[i].str());
  return j;
}

template <typename Elt, std::size_t N>
Elt coeffs_from_json(const Json& j, Elt e, const FieldSpec& f, const char* what) {
  expect_array(j, what);
  if (j.size() != N) {
    throw parse_error(std::string(what) + ": expected " + std::to_string(N) +
                      " coefficient strings");
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_string()) {
      throw parse_error(std::string(what) + ": coefficients must be strings");
    }
    e.c[i] = parse_scalar(j[i].get<std::string>(), f);
  }
  return e;
}

}  // namespace

Json belt_to_json(const BElt& e) { return coeffs_to_json<BElt, 5>(e); }

BElt belt_from_json(const Json& j, const AlgebraCtx& ctx) {
  return coeffs_from_json<BElt, 5>(j, b_zero(ctx), ctx.field, "element");
}

Json aelt_to_json(const AElt& e) { return coeffs_to_json<AElt, 4>(e); }

AElt aelt_from_json(const Json& j, const AlgebraCtx& ctx) {
  return coeffs_from_json<AElt, 4>(j, a_zero(ctx), ctx.field, "element");
}

Json mat_to_json(const Mat& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m.at(i, k).str());
    j.push_back(row);
  }
  return j;
}

Mat mat_from_json(const Json& j, const FieldSpec& f) {
  expect_array(j, "matrix");
  std::size_t rows = j.size();
  std::size_t cols = rows == 0 ? 0 : expect_array(j[0], "matrix row").size();
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = expect_array(j[i], "matrix row");
    if (row.size() != cols) throw parse_error("matrix: rows have unequal lengths");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!row[k].is_string()) throw parse_error("matrix: entries must be strings");
      m.at(i, k) = parse_scalar(row[k].get<std::string>(), f);
    }
  }
  return m;
}

namespace {

Json bmatrix_to_json(const BMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(belt_to_json(m.at(i, k)));
    j.push_back(row);
  }
  return j;
}

BMatrix bmatrix_from_json(const Json& j, const AlgebraCtx& ctx, std::size_t rows,
                          std::size_t cols, const char* what) {
  expect_array(j, what);
  if (j.size() != rows) {
    throw parse_error(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  }
  BMatrix m(ctx, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = expect_array(j[i], what);
    if (row.size() != cols) {
      throw parse_error(std::string(what) + ": expected " + std::to_string(cols) +
                        " columns");
    }
    for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = belt_from_json(row[k], ctx);
  }
  return m;
}

}  // namespace

Json factorization_to_json(const Factorization& f) {
  Json j;
  j["ctx"] = ctx_to_json(f.ctx());
  j["rank"] = f.rank();
  j["C"] = bmatrix_to_json(f.C());
  j["D"] = bmatrix_to_json(f.D());
  return j;
}

Factorization factorization_from_json(const Json& j) {
  AlgebraCtx ctx = ctx_from_json(field_at(j, "ctx", "factorization"));
  std::size_t rank = size_at(j, "rank", "factorization");
  BMatrix c = bmatrix_from_json(field_at(j, "C", "factorization"), ctx, rank, rank, "C");
  BMatrix d = bmatrix_from_json(field_at(j, "D", "factorization"), ctx, rank, rank, "D");
  return Factorization(ctx, c, d);
}

Json morphism_to_json(const FactMorphism& m, const std::string& source_ref,
                      const std::string& target_ref) {
  Json j;
  j["ctx"] = ctx_to_json(m.source().ctx());
  j["source"] = source_ref;
  j["target"] = target_ref;
  j["P"] = bmatrix_to_json(m.P());
  j["Q"] = bmatrix_to_json(m.Q());
  return j;
}

MorphismRefs morphism_refs(const Json& j) {
  return {string_at(j, "source", "morphism"), string_at(j, "target", "morphism")};
}

FactMorphism morphism_from_json(const Json& j, const Factorization& source,
                                const Factorization& target) {
  AlgebraCtx ctx = ctx_from_json(field_at(j, "ctx", "morphism"));
  if (!(ctx == source.ctx()) || !(ctx == target.ctx())) {
    throw parse_error("morphism: context differs from its endpoints");
  }
  BMatrix p = bmatrix_from_json(field_at(j, "P", "morphism"), ctx, source.rank(),
                                target.rank(), "P");
  BMatrix q = bmatrix_from_json(field_at(j, "Q", "morphism"), ctx, source.rank(),
                                target.rank(), "Q");
  return FactMorphism(source, target, p, q);
}

Json module_to_json(const AModule& m) {
  Json j;
  j["ctx"] = ctx_to_json(m.ctx());
  j["dim"] = m.dim();
  j["X"] = mat_to_json(m.X());
  j["Y"] = mat_to_json(m.Y());
  return j;
}

AModule module_from_json(const Json& j) {
  AlgebraCtx ctx = ctx_from_json(field_at(j, "ctx", "module"));
  std::size_t dim = size_at(j, "dim", "module");
  Mat x = mat_from_json(field_at(j, "X", "module"), ctx.field);
  Mat y = mat_from_json(field_at(j, "Y", "module"), ctx.field);
  if (x.rows() != dim || x.cols() != dim || y.rows() != dim || y.cols() != dim) {
    throw parse_error("module: action shapes disagree with \"dim\"");
  }
  return AModule(ctx, x, y);
}

Json report_to_json(const ClassificationReport& r) {
  Json j;
  j["classified"] = r.classified;
  if (!r.classified) j["reason"] = r.reason;
  j["free_rank"] = r.free_rank;
  Json summands = Json::array();
  for (const ClassificationSummand& s : r.summands) {
    Json one;
    one["n"] = s.n;
    one["lambda"] = s.lambda.str();
    summands.push_back(one);
  }
  j["summands"] = summands;
  return j;
}

ClassificationReport report_from_json(const Json& j, const FieldSpec& f) {
  ClassificationReport r;
  const Json& c = field_at(j, "classified", "report");
  if (!c.is_boolean()) throw parse_error("report: \"classified\" must be a boolean");
  r.classified = c.get<bool>();
  if (!r.classified) r.reason = string_at(j, "reason", "report");
  r.free_rank = size_at(j, "free_rank", "report");
  const Json& summands = expect_array(field_at(j, "summands", "report"), "summands");
  for (const Json& one : summands) {
    ClassificationSummand s{size_at(one, "n", "summand"),
                            parse_ext_scalar(string_at(one, "lambda", "summand"), f)};
    r.summands.push_back(s);
  }
  return r;
}

Json schulz_to_json(const SchulzReport& r) {
  Json j;
  j["all_exact"] = r.all_exact;
  Json positions = Json::array();
  for (const SchulzPosition& p : r.positions) {
    Json one;
    one["n"] = p.n;
    one["composite_zero"] = p.composite_zero;
    one["exact"] = p.exact;
    one["cokernel"] = report_to_json(p.cokernel);
    positions.push_back(one);
  }
  j["positions"] = positions;
  return j;
}

}  // namespace qcimf
