#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcimf/json_io.hpp"
#include "qcimf/random_gen.hpp"

using namespace qcimf;

namespace {

bool log_enabled() {
  const char* v = std::getenv("QCIMF_LOG");
  return v != nullptr && *v != '\0';
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[qcimf] " << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file: " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write file: " + path);
  out << text;
}

Json load_json_file(const std::string& path) { return parse_json_text(read_file(path)); }

// Shared output switches: --json selects machine output on stdout, --out
// additionally writes the JSON artifact to a file.
struct OutputOpts {
  bool json = false;
  std::string out;

  void emit(const Json& j, const std::string& text) const {
    if (!out.empty()) {
      write_file(out, j.dump(2) + "\n");
      log_line("wrote " + out);
    }
    if (json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << text;
    }
  }
};

// Shared context switches: --field {Q|Fp} --p --q.
struct CtxOpts {
  std::string field = "Q";
  std::uint64_t p = 0;
  std::string q = "2";

  FieldSpec field_spec() const {
    if (field == "Q") {
      if (p != 0) throw domain_error("--p is only valid with --field Fp");
      return FieldSpec::rationals();
    }
    if (field == "Fp") {
      if (p == 0) throw domain_error("--field Fp requires --p");
      return FieldSpec::prime_field(p);
    }
    throw domain_error("--field must be Q or Fp");
  }

  AlgebraCtx ctx() const {
    FieldSpec f = field_spec();
    Scalar qv = parse_scalar(q, f);
    if (qv.is_zero()) throw domain_error("q must be nonzero");
    return AlgebraCtx(f, qv);
  }
};

void add_ctx_flags(CLI::App* cmd, CtxOpts& c) {
  cmd->add_option("--field", c.field, "Coefficient field: Q or Fp");
  cmd->add_option("--p", c.p, "Prime modulus for --field Fp");
  cmd->add_option("--q", c.q, "Commutation parameter, nonzero scalar");
}

void add_output_flags(CLI::App* cmd, OutputOpts& o) {
  cmd->add_flag("--json", o.json, "Machine-readable JSON report on stdout");
  cmd->add_option("--out", o.out, "Write the JSON artifact to this file");
}

std::string summand_str(const ClassificationSummand& s) {
  return "C_" + std::to_string(s.n) + "(" + s.lambda.str() + ")";
}

std::string report_text(const ClassificationReport& r) {
  if (!r.classified) return "outside the family: " + r.reason;
  std::string line = "free rank " + std::to_string(r.free_rank);
  for (const ClassificationSummand& s : r.summands) line += " + " + summand_str(s);
  return line;
}

Json bmatrix_json(const BMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(belt_to_json(m.at(i, k)));
    j.push_back(row);
  }
  return j;
}

Json amatrix_json(const AMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(aelt_to_json(m.at(i, k)));
    j.push_back(row);
  }
  return j;
}

std::string dir_of(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string resolve_ref(const std::string& morphism_path, const std::string& ref) {
  if (!ref.empty() && ref.front() == '/') return ref;
  return dir_of(morphism_path) + "/" + ref;
}

FactMorphism load_morphism(const std::string& path) {
  Json j = load_json_file(path);
  MorphismRefs refs = morphism_refs(j);
  Factorization src = factorization_from_json(load_json_file(resolve_ref(path, refs.source)));
  Factorization tgt = factorization_from_json(load_json_file(resolve_ref(path, refs.target)));
  return morphism_from_json(j, src, tgt);
}

// x + y and x - q y, the rank-one pair of the worked example.
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

int cmd_validate(const std::string& file, const OutputOpts& out) {
  Json j = load_json_file(file);
  Json rep;
  std::string text;
  if (j.contains("C") && j.contains("D")) {
    Factorization f = factorization_from_json(j);
    rep["kind"] = "factorization";
    rep["rank"] = f.rank();
    rep["ctx"] = ctx_to_json(f.ctx());
    rep["valid"] = true;
    text = "valid factorization, rank " + std::to_string(f.rank()) + "\n";
  } else if (j.contains("X") && j.contains("Y")) {
    AModule m = module_from_json(j);
    rep["kind"] = "module";
    rep["dim"] = m.dim();
    rep["ctx"] = ctx_to_json(m.ctx());
    rep["valid"] = true;
    text = "valid module, dimension " + std::to_string(m.dim()) + "\n";
  } else {
    throw parse_error("file is neither a factorization nor a module");
  }
  out.emit(rep, text);
  return 0;
}

int cmd_construct(const CtxOpts& copt, std::size_t n, const std::string& lambda,
                  bool random, std::size_t rank, std::uint64_t seed,
                  const OutputOpts& out) {
  AlgebraCtx ctx = copt.ctx();
  if (random) {
    std::mt19937_64 rng(seed);
    Factorization f = random_unit_free(ctx, rank, rng);
    out.emit(factorization_to_json(f), "random unit-free factorization, rank " +
                                           std::to_string(rank) + ", seed " +
                                           std::to_string(seed) + "\n");
    return 0;
  }
  Factorization f = canonical_factorization(n, parse_scalar(lambda, ctx.field), ctx);
  out.emit(factorization_to_json(f), "canonical factorization n=" + std::to_string(n) +
                                         " lambda=" + lambda + ", rank " +
                                         std::to_string(f.rank()) + "\n");
  return 0;
}

int cmd_reduce(const std::string& file, const OutputOpts& out) {
  Factorization f = factorization_from_json(load_json_file(file));
  ReducedPair r = reduce_factorization(f);
  bool acyclic = check_acyclic(f);
  AModule image = image_module(f);
  AModule block = image_module_block_form(f);
  ClassificationReport rep = classify(image);
  Json j;
  j["ctx"] = ctx_to_json(f.ctx());
  j["rank"] = f.rank();
  j["Cbar"] = amatrix_json(r.cbar);
  j["Dbar"] = amatrix_json(r.dbar);
  j["acyclic"] = acyclic;
  j["image"] = module_to_json(image);
  j["block_form"] = module_to_json(block);
  j["image_class"] = report_to_json(rep);
  std::string text = "rank " + std::to_string(f.rank()) + ", " +
                     (acyclic ? "acyclic" : "NOT acyclic") + ", image dimension " +
                     std::to_string(image.dim()) + "\nimage class: " + report_text(rep) +
                     "\n";
  out.emit(j, text);
  return acyclic ? 0 : 1;
}

int cmd_classify(const std::string& file, const OutputOpts& out) {
  AModule m = module_from_json(load_json_file(file));
  ClassificationReport r = classify(m);
  Json j = report_to_json(r);
  j["dim"] = m.dim();
  out.emit(j, report_text(r) + "\n");
  return 0;
}

int cmd_resolve(const std::string& file, std::size_t steps, const OutputOpts& out) {
  AModule m = module_from_json(load_json_file(file));
  BettiSequence bs = betti_sequence(m, steps);
  Json j;
  j["betti"] = bs.counts;
  j["complexity"] = bs.cx;
  std::string text = "betti:";
  for (std::size_t c : bs.counts) text += " " + std::to_string(c);
  text += "\ncomplexity " + std::to_string(bs.cx) + "\n";
  if (bs.cx == 1) {
    std::optional<std::size_t> period = periodicity_probe(m, steps);
    if (period) {
      j["period"] = *period;
      text += "period " + std::to_string(*period) + "\n";
    } else {
      j["period"] = nullptr;
      text += "no period within " + std::to_string(steps) + " steps\n";
    }
  }
  out.emit(j, text);
  return 0;
}

int cmd_theorem_check(const CtxOpts& copt, std::size_t n_max,
                      std::vector<std::string> lambdas, std::uint64_t seed,
                      const OutputOpts& out) {
  AlgebraCtx ctx = copt.ctx();
  const FieldSpec& f = ctx.field;
  if (n_max == 0) throw domain_error("--n-max must be at least 1");
  if (lambdas.empty()) {
    if (f.kind == FieldKind::rationals) {
      lambdas = {"1", "-1", "2", "5/3"};
    } else {
      for (std::uint64_t r = 1; r < f.p; ++r) lambdas.push_back(std::to_string(r));
    }
  }

  Json cases = Json::array();
  bool all_ok = true;
  std::string text;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (const std::string& ltext : lambdas) {
      Scalar lambda = parse_scalar(ltext, f);
      Json one;
      one["n"] = n;
      one["lambda"] = lambda.str();
      if (lambda.is_zero()) {
        // Negative control: the zero parameter is excluded by the rank
        // invariant, not produced by any factorization.
        bool excluded = make_cn(n, ExtScalar::finite(lambda), ctx).X().rank() == n - 1;
        one["excluded_by_rank_invariant"] = excluded;
        all_ok = all_ok && excluded;
        text += "n=" + std::to_string(n) + " lambda=0: " +
                (excluded ? "excluded by rank invariant" : "CONTROL FAILED") + "\n";
        cases.push_back(one);
        continue;
      }
      Factorization fact = canonical_factorization(n, lambda, ctx);
      bool acyclic = check_acyclic(fact);
      ClassificationReport rep = classify(image_module(fact));
      bool ok = acyclic && rep.classified && rep.free_rank == 0 &&
                rep.summands.size() == 1 && rep.summands[0].n == n &&
                rep.summands[0].lambda == ExtScalar::finite(lambda);
      one["ok"] = ok;
      all_ok = all_ok && ok;
      text += "n=" + std::to_string(n) + " lambda=" + lambda.str() + ": " +
              (ok ? "recovered" : "MISMATCH: " + report_text(rep)) + "\n";
      cases.push_back(one);
      log_line("theorem-check n=" + std::to_string(n) + " lambda=" + lambda.str());
    }
  }

  // Rank invariants exclude the two degenerate parameters from every image:
  // both actions on an image module have full rank r, against n - 1 for the
  // excluded modules.
  std::mt19937_64 rng(seed);
  bool ranks_full = true;
  for (std::size_t r : {1, 2, 3}) {
    AModule img = image_module(random_unit_free(ctx, r, rng));
    ranks_full = ranks_full && img.X().rank() == r && img.Y().rank() == r;
  }
  bool degenerate_deficient = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    degenerate_deficient =
        degenerate_deficient &&
        make_cn(n, ExtScalar::finite(Scalar::zero(f)), ctx).X().rank() == n - 1 &&
        make_cn(n, ExtScalar::infinity(f), ctx).Y().rank() == n - 1;
  }
  all_ok = all_ok && ranks_full && degenerate_deficient;
  Json control;
  control["image_ranks_full"] = ranks_full;
  control["degenerate_ranks_deficient"] = degenerate_deficient;
  control["note"] = "lambda in {0, inf} excluded by rank invariant";
  text += std::string("negative control: ") +
          (ranks_full && degenerate_deficient ? "excluded by rank invariant" : "FAILED") +
          "\n";

  Json j;
  j["q"] = ctx.q.str();
  j["field"] = field_to_json(f);
  j["cases"] = cases;
  j["negative_control"] = control;
  j["all_ok"] = all_ok;
  text += all_ok ? "all cases pass\n" : "FAILURES present\n";
  out.emit(j, text);
  return all_ok ? 0 : 1;
}

int cmd_example_nonfaithful(const CtxOpts& copt, bool control, const OutputOpts& out) {
  AlgebraCtx ctx = copt.ctx();
  Factorization f = basic_pair(ctx);
  Json j;
  j["q"] = ctx.q.str();
  if (control) {
    // Control: with the w entry replaced by zero the morphism is the zero
    // morphism, so the non-nullhomotopic property fails as expected.
    FactMorphism zero = FactMorphism::zero(f, f);
    bool nullhomotopic = is_nullhomotopic(zero);
    ReducedChainMap r = reduce_morphism(zero);
    bool reduction_zero = r.p.is_zero() && r.q.is_zero();
    j["control"] = true;
    j["nullhomotopic"] = nullhomotopic;
    j["reduction_zero"] = reduction_zero;
    bool ok = nullhomotopic && reduction_zero;
    j["ok"] = ok;
    out.emit(j, std::string("control: zero morphism is ") +
                    (nullhomotopic ? "nullhomotopic" : "NOT nullhomotopic") +
                    "; the non-faithfulness property fails here as expected\n");
    return ok ? 0 : 1;
  }
  BMatrix p(ctx, 1, 1);
  BMatrix q(ctx, 1, 1);
  q.at(0, 0) = w_elt(ctx);
  FactMorphism theta(f, f, p, q);
  bool not_null = !is_nullhomotopic(theta);
  ReducedChainMap r = reduce_morphism(theta);
  bool reduction_zero = r.p.is_zero() && r.q.is_zero();
  bool ok = not_null && reduction_zero;
  j["control"] = false;
  j["nullhomotopic"] = !not_null;
  j["reduction_zero"] = reduction_zero;
  j["ok"] = ok;
  out.emit(j, std::string("multiplication by w: ") +
                  (not_null ? "not nullhomotopic" : "NULLHOMOTOPIC (violation)") + ", " +
                  (reduction_zero ? "reduces to zero" : "reduction NONZERO (violation)") +
                  "\n");
  return ok ? 0 : 1;
}

int cmd_scan_alpha(const CtxOpts& copt, std::vector<std::string> alphas,
                   const OutputOpts& out) {
  AlgebraCtx ctx = copt.ctx();
  const FieldSpec& f = ctx.field;
  Scalar expected = -ctx.qinv;
  if (f.kind == FieldKind::prime_field) {
    // Exhaustive over the multiplicative group.
    alphas.clear();
    for (std::uint64_t r = 1; r < f.p; ++r) alphas.push_back(std::to_string(r));
  } else if (alphas.empty()) {
    alphas = {"1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3"};
    alphas.push_back(expected.str());
  }

  Json table = Json::array();
  std::string text;
  bool ok = true;
  bool found = false;
  Json witness;
  for (const std::string& atext : alphas) {
    Scalar alpha = parse_scalar(atext, f);
    if (alpha.is_zero()) throw domain_error("alpha must be nonzero");
    RankOneScan scan = rank_one_scan(alpha, ctx);
    Json row;
    row["alpha"] = alpha.str();
    row["solvable"] = scan.solvable;
    table.push_back(row);
    text += "alpha=" + alpha.str() + ": " + (scan.solvable ? "solvable" : "no") + "\n";
    bool should = alpha == expected;
    if (scan.solvable != should) ok = false;
    if (scan.solvable) {
      found = true;
      witness["beta1"] = scan.beta1.str();
      witness["beta2"] = scan.beta2.str();
      witness["gamma1"] = scan.gamma1.str();
      witness["gamma2"] = scan.gamma2.str();
    }
  }
  ok = ok && found;
  Json j;
  j["q"] = ctx.q.str();
  j["expected"] = expected.str();
  j["table"] = table;
  if (found) j["witness"] = witness;
  j["ok"] = ok;
  text += ok ? "unique solvable alpha = " + expected.str() + "\n"
             : "RIGIDITY VIOLATION\n";
  out.emit(j, text);
  return ok ? 0 : 1;
}

int cmd_schulz(const CtxOpts& copt, std::size_t window, const OutputOpts& out) {
  AlgebraCtx ctx = copt.ctx();
  SchulzReport r = schulz_complex_check(ctx, window);
  Json j = schulz_to_json(r);
  std::string text;
  for (const SchulzPosition& pos : r.positions) {
    text += "n=" + std::to_string(pos.n) + ": " +
            (pos.exact ? "exact" : "NOT EXACT") + ", cokernel " +
            report_text(pos.cokernel) + "\n";
  }
  text += r.all_exact ? "exact at every position\n" : "EXACTNESS FAILURE\n";
  out.emit(j, text);
  return r.all_exact ? 0 : 1;
}

int cmd_suspend(const std::string& file, const OutputOpts& out) {
  Factorization f = factorization_from_json(load_json_file(file));
  Factorization s = suspension(f);
  out.emit(factorization_to_json(s),
           "suspension, rank " + std::to_string(s.rank()) + "\n");
  return 0;
}

int cmd_cone(const std::string& file, const OutputOpts& out) {
  FactMorphism theta = load_morphism(file);
  Factorization cone = mapping_cone(theta);
  out.emit(factorization_to_json(cone),
           "mapping cone, rank " + std::to_string(cone.rank()) + "\n");
  return 0;
}

int cmd_homotopy(const std::string& file, const OutputOpts& out) {
  FactMorphism theta = load_morphism(file);
  const AlgebraCtx& ctx = theta.source().ctx();
  Homotopy wit{BMatrix(ctx, 0, 0), BMatrix(ctx, 0, 0)};
  bool null = is_nullhomotopic(theta, &wit);
  Json j;
  j["nullhomotopic"] = null;
  std::string text;
  if (null) {
    j["S"] = bmatrix_json(wit.S);
    j["T"] = bmatrix_json(wit.T);
    text = "nullhomotopic, witness attached\n";
  } else {
    text = "not nullhomotopic\n";
  }
  out.emit(j, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted matrix factorizations and their module reductions"};
  app.require_subcommand(1);

  CtxOpts copt;
  OutputOpts oopt;
  std::string file;
  std::size_t n = 1;
  std::string lambda = "1";
  bool random = false;
  bool control = false;
  std::size_t rank = 2;
  std::size_t n_max = 4;
  std::size_t steps = 10;
  std::size_t window = 4;
  std::uint64_t seed = 12345;
  std::vector<std::string> lambdas;
  std::vector<std::string> alphas;

  std::function<int()> action;

  CLI::App* validate = app.add_subcommand("validate", "Check a factorization or module file");
  validate->add_option("file", file, "JSON input file")->required();
  add_output_flags(validate, oopt);
  validate->callback([&] { action = [&] { return cmd_validate(file, oopt); }; });

  CLI::App* construct = app.add_subcommand("construct", "Build a factorization");
  add_ctx_flags(construct, copt);
  construct->add_option("--n", n, "Family index, at least 1");
  construct->add_option("--lambda", lambda, "Family parameter, nonzero scalar");
  construct->add_flag("--random", random, "Random unit-free factorization instead");
  construct->add_option("--rank", rank, "Rank for --random");
  construct->add_option("--seed", seed, "Seed for --random");
  add_output_flags(construct, oopt);
  construct->callback(
      [&] { action = [&] { return cmd_construct(copt, n, lambda, random, rank, seed, oopt); }; });

  CLI::App* reduce = app.add_subcommand("reduce", "Reduce a factorization and classify its image");
  reduce->add_option("file", file, "Factorization JSON file")->required();
  add_output_flags(reduce, oopt);
  reduce->callback([&] { action = [&] { return cmd_reduce(file, oopt); }; });

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a module file");
  classify_cmd->add_option("file", file, "Module JSON file")->required();
  add_output_flags(classify_cmd, oopt);
  classify_cmd->callback([&] { action = [&] { return cmd_classify(file, oopt); }; });

  CLI::App* resolve = app.add_subcommand("resolve", "Betti sequence and complexity of a module");
  resolve->add_option("file", file, "Module JSON file")->required();
  resolve->add_option("--steps", steps, "Resolution steps, at least 1");
  add_output_flags(resolve, oopt);
  resolve->callback([&] { action = [&] { return cmd_resolve(file, steps, oopt); }; });

  CLI::App* theorem = app.add_subcommand("theorem-check", "Verify the classification of images");
  add_ctx_flags(theorem, copt);
  theorem->add_option("--n-max", n_max, "Check family indices up to this bound");
  theorem->add_option("--lambda", lambdas, "Family parameters; 0 runs the negative control");
  theorem->add_option("--seed", seed, "Seed for the random image sample");
  add_output_flags(theorem, oopt);
  theorem->callback(
      [&] { action = [&] { return cmd_theorem_check(copt, n_max, lambdas, seed, oopt); }; });

  CLI::App* nonfaithful = app.add_subcommand("example-nonfaithful",
                                             "Multiplication by w dies under reduction");
  add_ctx_flags(nonfaithful, copt);
  nonfaithful->add_flag("--control", control, "Run the zero-morphism control instead");
  add_output_flags(nonfaithful, oopt);
  nonfaithful->callback(
      [&] { action = [&] { return cmd_example_nonfaithful(copt, control, oopt); }; });

  CLI::App* scan = app.add_subcommand("scan-alpha", "Rigidity scan of the twisting scale");
  add_ctx_flags(scan, copt);
  scan->add_option("--alpha", alphas, "Candidate scales; default samples around -1/q");
  add_output_flags(scan, oopt);
  scan->callback([&] { action = [&] { return cmd_scan_alpha(copt, alphas, oopt); }; });

  CLI::App* schulz = app.add_subcommand("schulz", "Exactness of the alternating-sign complex");
  add_ctx_flags(schulz, copt);
  schulz->add_option("--window", window, "Half-width of the checked window");
  add_output_flags(schulz, oopt);
  schulz->callback([&] { action = [&] { return cmd_schulz(copt, window, oopt); }; });

  CLI::App* suspend = app.add_subcommand("suspend", "Suspension of a factorization");
  suspend->add_option("file", file, "Factorization JSON file")->required();
  add_output_flags(suspend, oopt);
  suspend->callback([&] { action = [&] { return cmd_suspend(file, oopt); }; });

  CLI::App* cone = app.add_subcommand("cone", "Mapping cone of a morphism");
  cone->add_option("file", file, "Morphism JSON file")->required();
  add_output_flags(cone, oopt);
  cone->callback([&] { action = [&] { return cmd_cone(file, oopt); }; });

  CLI::App* homotopy = app.add_subcommand("homotopy", "Decide nullhomotopy of a morphism");
  homotopy->add_option("file", file, "Morphism JSON file")->required();
  add_output_flags(homotopy, oopt);
  homotopy->callback([&] { action = [&] { return cmd_homotopy(file, oopt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const axiom_error& e) {
    std::cerr << "axiom violation: " << e.what() << "\n";
    return 1;
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
