// Command-line driver: parse JSON inputs, run the library operations, emit
// certificates and reports as JSON, and drive the seeded randomized suite.
//
// Exit codes: 0 = every certificate verified; 1 = a mathematical check failed
// (a counterexample report is still written); 2 = input or validation error.

#include <CLI11.hpp>

#include "monrep/generate.hpp"
#include "monrep/json_io.hpp"
#include "monrep/suite.hpp"

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

using namespace monrep;

namespace {

struct Options {
  std::string command;
  std::string input;
  std::string field = "2";
  std::uint64_t seed = 1;
  std::size_t count = 25;
  std::size_t length = 3;
  std::size_t nmax = 3;
  std::size_t bound = 2;
  std::size_t shift = 1;
  bool recheck = false;
  std::string out;
};

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open input file: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::parse_error& e) {
    throw JsonError("malformed JSON in " + path + ": " + e.what());
  }
}

void emit(const Json& j, const Options& opt) {
  std::string text = j.dump(2);
  text.push_back('\n');
  if (!opt.out.empty()) {
    std::ofstream os(opt.out, std::ios::binary);
    os << text;
    if (!os) throw JsonError("cannot write output file: " + opt.out);
  } else {
    std::cout << text;
  }
}

/// Re-verify every certificate object embedded anywhere in the report from
/// its stored matrices alone; returns the number checked and the name of the
/// first failing identity (empty when all hold).
template <ExactField F>
std::size_t recheck_certificates(const F& f, const Json& j, std::string& first_failure) {
  std::size_t n = 0;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "certificate" && it.value().is_object()) {
        Certificate<F> cert = certificate_from_json(f, it.value());
        ++n;
        std::string bad;
        if (!verify(cert, &bad) && first_failure.empty())
          first_failure = cert.kind + ": " + bad;
      } else {
        n += recheck_certificates(f, it.value(), first_failure);
      }
    }
  } else if (j.is_array()) {
    for (const Json& e : j) n += recheck_certificates(f, e, first_failure);
  }
  return n;
}

template <ExactField F>
int finish(const F& f, Json& report, int code, const Options& opt) {
  if (opt.recheck) {
    std::string bad;
    std::size_t n = recheck_certificates(f, report, bad);
    Json rc;
    rc["certificates"] = n;
    rc["all_verified"] = bad.empty();
    if (!bad.empty()) rc["first_failure"] = bad;
    report["recheck"] = std::move(rc);
    if (!bad.empty() && code == 0) code = 1;
  }
  emit(report, opt);
  return code;
}

template <ExactField F>
std::pair<AlgebraPtr<F>, Representation<F>> load_algebra_rep(const F& f, const Json& doc,
                                                             const char* rep_key) {
  AlgebraPtr<F> a = algebra_from_json(f, detail::require_key(doc, "algebra", "input"));
  Representation<F> x = rep_from_json(a, detail::require_key(doc, rep_key, "input"));
  return {std::move(a), std::move(x)};
}

template <ExactField F>
int cmd_check(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  auto [a, x] = load_algebra_rep(f, doc, "representation");
  MonicReport mr = is_monic(x);
  Json report;
  report["command"] = "check";
  report["monic"] = mr.monic;
  Json verts = Json::array();
  Json failures = Json::array();
  for (const MonicVertexReport& v : mr.vertices) {
    Json e;
    e["vertex"] = v.vertex;
    e["domain_dim"] = v.domain_dim;
    e["rank"] = v.rank;
    e["injective"] = v.injective;
    verts.push_back(std::move(e));
    if (!v.injective) {
      ModuleMap<F> d = delta(x, v.vertex);
      Json fail;
      fail["identity"] = "delta_" + std::to_string(v.vertex) + " not injective";
      fail["delta"] = mat_to_json_sized(f, d.mat);
      fail["kernel"] = mat_to_json_sized(f, kernel_basis(d.mat));
      failures.push_back(std::move(fail));
    }
  }
  report["vertices"] = std::move(verts);
  if (!failures.empty()) report["failures"] = std::move(failures);
  return finish(f, report, mr.monic ? 0 : 1, opt);
}

template <ExactField F>
int cmd_envelope(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  auto [a, x] = load_algebra_rep(f, doc, "representation");
  EmbeddingResult<F> emb = injective_embedding(x);
  Json report;
  report["command"] = "envelope";
  report["report"] = embedding_report_json(emb);
  report["envelope"] = rep_to_json(emb.e);
  report["cokernel"] = rep_to_json(emb.z);
  Json comps = Json::array();
  for (std::size_t v = 1; v <= x.quiver().num_vertices(); ++v)
    comps.push_back(mat_to_json_sized(f, emb.embed.comp(v)));
  report["embedding_components"] = std::move(comps);
  return finish(f, report, emb.cert.verified ? 0 : 1, opt);
}

template <ExactField F>
int cmd_coresolve(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  auto [a, x] = load_algebra_rep(f, doc, "representation");
  Coresolution<F> cor = injective_coresolution(x, opt.length);
  Json report;
  report["command"] = "coresolve";
  report["length_requested"] = opt.length;
  Json steps = Json::array();
  bool all_ok = cor.chain_cert.verified;
  for (const EmbeddingResult<F>& st : cor.steps) {
    Json e;
    e["report"] = embedding_report_json(st);
    e["term_dims"] = st.e.dim_vector();
    e["cokernel_dims"] = st.z.dim_vector();
    all_ok = all_ok && st.cert.verified;
    steps.push_back(std::move(e));
  }
  report["steps"] = std::move(steps);
  report["exhausted"] =
      !cor.steps.empty() && cor.steps.back().z.total_dim() == 0;
  report["certificate"] = certificate_to_json(f, cor.chain_cert);
  return finish(f, report, all_ok ? 0 : 1, opt);
}

template <ExactField F>
int cmd_strip(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  auto [a, x] = load_algebra_rep(f, doc, "representation");
  StripResult<F> st = source_strip(x);
  FiltrationResult<F> filt = strip_filtration(x);
  Json report;
  report["command"] = "strip";
  report["sources"] = st.sources;
  report["cokernel"] = rep_to_json(st.z);
  report["certificate"] = certificate_to_json(f, st.cert);
  Json stages = Json::array();
  for (const FiltrationStage<F>& stage : filt.stages) {
    Json e;
    e["orig_vertex"] = stage.orig_vertex;
    e["dims"] = stage.rep.dim_vector();
    e["sources"] = stage.strip.sources;
    stages.push_back(std::move(e));
  }
  Json jf;
  jf["stages"] = std::move(stages);
  jf["certificate"] = certificate_to_json(f, filt.cert);
  report["filtration"] = std::move(jf);
  return finish(f, report, st.cert.verified && filt.cert.verified ? 0 : 1, opt);
}

template <ExactField F>
int cmd_injectives(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  AlgebraPtr<F> a = algebra_from_json(f, detail::require_key(doc, "algebra", "input"));
  Quiver q = quiver_from_json(detail::require_key(doc, "quiver", "input"));
  std::vector<BranchObject<F>> objs = indec_injectives_mon(q, a);
  Json report;
  report["command"] = "injectives";
  Json arr = Json::array();
  for (const BranchObject<F>& o : objs) {
    Json e;
    e["vertex"] = o.vertex;
    e["idempotent"] = o.idem;
    e["dims"] = o.rep.dim_vector();
    e["indecomposable"] = o.indec == IndecStatus::Verified
                              ? "verified"
                              : (o.indec == IndecStatus::Decomposable ? "decomposable"
                                                                      : "unchecked");
    arr.push_back(std::move(e));
  }
  report["objects"] = std::move(arr);
  return finish(f, report, 0, opt);
}

template <ExactField F>
int cmd_stable_hom(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  AlgebraPtr<F> a = algebra_from_json(f, detail::require_key(doc, "algebra", "input"));
  Representation<F> xs = rep_from_json(a, detail::require_key(doc, "source", "input"));
  Representation<F> xt = rep_from_json(a, detail::require_key(doc, "target", "input"));
  StableHomSpace<F> sh = stable_hom(xs, xt);
  Json report;
  report["command"] = "stable-hom";
  report["ambient_dim"] = sh.ambient.size();
  report["factoring_dim"] = sh.ambient.size() - sh.quotient_dim();
  report["stable_dim"] = sh.quotient_dim();
  return finish(f, report, 0, opt);
}

template <ExactField F>
int cmd_cosyzygy(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  auto [a, x] = load_algebra_rep(f, doc, "representation");
  Representation<F> z = cosyzygy(x, opt.shift);
  Json report;
  report["command"] = "cosyzygy";
  report["n"] = opt.shift;
  report["dims"] = z.dim_vector();
  report["result"] = rep_to_json(z);
  return finish(f, report, 0, opt);
}

template <ExactField F>
int cmd_t1(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  AlgebraPtr<F> a = algebra_from_json(f, detail::require_key(doc, "algebra", "input"));
  Quiver q = quiver_from_json(detail::require_key(doc, "quiver", "input"));
  Module<F> t = module_from_json(a, detail::require_key(doc, "module", "input"));
  ShiftVanishingReport sv = t1_check(q, t, opt.nmax);
  Json report;
  report["command"] = "t1";
  report["tables"] = shift_vanishing_json(sv);
  return finish(f, report, 0, opt);
}

template <ExactField F>
int cmd_end_iso(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  AlgebraPtr<F> a = algebra_from_json(f, detail::require_key(doc, "algebra", "input"));
  Quiver q = quiver_from_json(detail::require_key(doc, "quiver", "input"));
  Module<F> t = module_from_json(a, detail::require_key(doc, "module", "input"));
  RepDirectSum<F> mt = m_total(q, t);
  StableHomSpace<F> ends = stable_hom(mt.rep, mt.rep);
  Certificate<F> cert = end_iso_check(q, t);
  Json report;
  report["command"] = "end-iso";
  report["stable_end_dim"] = ends.quotient_dim();
  report["module_stable_end_dim"] = stable_hom_module(t, t).quotient_dim();
  report["paths"] = q.all_paths().size();
  report["certificate"] = certificate_to_json(f, cert);
  return finish(f, report, cert.verified ? 0 : 1, opt);
}

template <ExactField F>
int cmd_cm_check(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  auto [a, x] = load_algebra_rep(f, doc, "representation");
  AgreementReport r = mon_cm_check(x, opt.bound);
  Json report;
  report["command"] = "cm-check";
  report["report"] = agreement_report_json(r);
  return finish(f, report, r.agree ? 0 : 1, opt);
}

template <ExactField F>
int cmd_adjunction(const F& f, const Options& opt) {
  Json doc = load_json_file(opt.input);
  AlgebraPtr<F> a = algebra_from_json(f, detail::require_key(doc, "algebra", "input"));
  Module<F> m = module_from_json(a, detail::require_key(doc, "module", "input"));
  Representation<F> x = rep_from_json(a, detail::require_key(doc, "representation", "input"));
  std::size_t i = detail::require_uint(detail::require_key(doc, "vertex", "input"), "vertex");
  if (i < 1 || i > x.quiver().num_vertices()) throw JsonError("vertex out of range");
  Certificate<F> cert = adjunction_check(m, x, i);
  Json report;
  report["command"] = "adjunction";
  report["vertex"] = i;
  report["certificate"] = certificate_to_json(f, cert);
  return finish(f, report, cert.verified ? 0 : 1, opt);
}

int cmd_suite(const Options& opt) {
  SuiteReport sr = run_standard_suite(opt.count, opt.seed);
  Json report;
  report["command"] = "suite";
  report["seed"] = sr.seed;
  report["count"] = sr.count;
  report["ok"] = sr.ok();
  Json arr = Json::array();
  for (const BatteryResult& b : sr.batteries) {
    Json e;
    e["name"] = b.name;
    e["total"] = b.total;
    e["passed"] = b.passed;
    e["failures"] = b.failures;
    e["findings"] = b.findings;
    arr.push_back(std::move(e));
  }
  report["batteries"] = std::move(arr);
  PrimeField f2(2);
  return finish(f2, report, sr.ok() ? 0 : 1, opt);
}

template <ExactField F>
int run_typed(const F& f, const Options& opt) {
  if (opt.command == "check") return cmd_check(f, opt);
  if (opt.command == "envelope") return cmd_envelope(f, opt);
  if (opt.command == "coresolve") return cmd_coresolve(f, opt);
  if (opt.command == "strip") return cmd_strip(f, opt);
  if (opt.command == "injectives") return cmd_injectives(f, opt);
  if (opt.command == "stable-hom") return cmd_stable_hom(f, opt);
  if (opt.command == "cosyzygy") return cmd_cosyzygy(f, opt);
  if (opt.command == "t1") return cmd_t1(f, opt);
  if (opt.command == "end-iso") return cmd_end_iso(f, opt);
  if (opt.command == "cm-check") return cmd_cm_check(f, opt);
  if (opt.command == "adjunction") return cmd_adjunction(f, opt);
  throw JsonError("unknown command: " + opt.command);
}

int run(const Options& opt) {
  if (opt.command == "suite") return cmd_suite(opt);
  FieldSpec fs = parse_field_arg(opt.field);
  if (fs.kind == FieldSpec::Kind::Rationals) return run_typed(RationalField{}, opt);
  return run_typed(PrimeField(fs.p), opt);
}

/// A mathematical precondition of the requested operation failed on the
/// given input: report the violated identity as a counterexample (exit 1).
int emit_math_failure(const Options& opt, const std::string& kind, const std::string& what) {
  Json report;
  report["command"] = opt.command;
  report["error"] = what;
  report["kind"] = kind;
  try {
    emit(report, opt);
  } catch (const std::exception&) {
    // fall through: the failure itself is already on stderr
  }
  std::cerr << "error: " << what << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact computations with injectivity-constrained quiver representations "
               "over a finite-dimensional algebra"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("input", opt.input, "input JSON document")->required();
    sub->add_option("--field", opt.field, "coefficient field: a prime p or Q");
    sub->add_flag("--recheck", opt.recheck,
                  "re-verify every emitted certificate from its stored matrices");
    sub->add_option("--out", opt.out, "write the JSON report to this file instead of stdout");
    sub->callback([&opt, sub] { opt.command = sub->get_name(); });
    return sub;
  };

  add_common(app.add_subcommand("check", "injectivity of every collection map"), true);
  add_common(app.add_subcommand("envelope", "constructive injective embedding"), true);
  add_common(app.add_subcommand("coresolve", "iterated injective coresolution"), true)
      ->add_option("--length", opt.length, "number of coresolution steps");
  add_common(app.add_subcommand("strip", "split off the source branches and filter"), true);
  add_common(app.add_subcommand("injectives", "indecomposable injective objects"), true);
  add_common(app.add_subcommand("stable-hom", "stable hom dimension between two objects"), true);
  add_common(app.add_subcommand("cosyzygy", "iterated embedding cokernel"), true)
      ->add_option("--n", opt.shift, "number of cosyzygy steps");
  add_common(app.add_subcommand("t1", "shifted stable hom vanishing tables"), true)
      ->add_option("--nmax", opt.nmax, "largest shift to tabulate");
  add_common(app.add_subcommand("end-iso", "stable endomorphism algebra comparison"), true);
  add_common(app.add_subcommand("cm-check", "two-sided membership agreement"), true)
      ->add_option("--bound", opt.bound, "extension vanishing bound");
  add_common(app.add_subcommand("adjunction", "branch adjunction dimension check"), true);
  auto* suite = add_common(app.add_subcommand("suite", "seeded randomized batteries"), false);
  suite->add_option("--count", opt.count, "instances per configuration");
  suite->add_option("--seed", opt.seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run(opt);
  } catch (const NotMonic& e) {
    return emit_math_failure(opt, "not-monic", e.what());
  } catch (const CheckFailed& e) {
    return emit_math_failure(opt, "check-failed", e.what());
  } catch (const InternalInjectivityFailure& e) {
    return emit_math_failure(opt, "construction-failed", e.what());
  } catch (const JsonError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
