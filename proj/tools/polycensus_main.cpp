// Command-line front end: roots, classify, census, generate, fit, verify.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polycensus/acceptance.hpp"
#include "polycensus/census.hpp"
#include "polycensus/classify.hpp"
#include "polycensus/error.hpp"
#include "polycensus/generators.hpp"
#include "polycensus/roots.hpp"
#include "polycensus/version.hpp"

using nlohmann::json;
using namespace polycensus;

namespace {

struct Globals {
  int jobs = 1;
  long precision_cap = 4096;
  int degree_cap = kDefaultDegreeCap;
  uint64_t seed = 1;
  std::string format = "json";
  std::string out = "-";
};

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::BadParameters, "cannot write " + out);
  f << text;
}

void emit_json(const json& j, const Globals& g) {
  if (g.format == "text") {
    std::ostringstream os;
    flatten(j, "", os);
    emit(os.str(), g.out);
  } else {
    emit(j.dump(2) + "\n", g.out);
  }
}

json global_config(const Globals& g) {
  return json{{"jobs", g.jobs}, {"precision_cap", g.precision_cap}, {"degree_cap", g.degree_cap},
              {"seed", g.seed}, {"format", g.format},               {"out", g.out}};
}

json big(const BigFloat& x) { return x.to_string(20); }

json disk_json(const RootDisk& d) {
  return json{{"re", big(d.center_re)},
              {"im", big(d.center_im)},
              {"radius", d.radius.to_string(6)},
              {"multiplicity", d.multiplicity},
              {"real", d.is_real}};
}

// ---------------------------------------------------------------------------

struct RootsArgs {
  std::string poly;
  long precision = 128;
  double refine_to = 0.0;
};

int cmd_roots(const RootsArgs& a, const Globals& g) {
  IntPolynomial f = IntPolynomial::parse(a.poly);
  CertifiedRootSet set = isolate_roots(f, a.precision, g.precision_cap);
  if (a.refine_to > 0) set = refine(set, BigFloat(a.refine_to, 64), g.precision_cap);
  json roots = json::array();
  for (const auto& d : set.disks) roots.push_back(disk_json(d));
  MahlerEnclosure m = mahler_measure(set);
  json cfg = global_config(g);
  cfg["poly"] = a.poly;
  cfg["precision"] = a.precision;
  cfg["refine"] = a.refine_to;
  emit_json(json{{"version", kVersion},
                 {"config", cfg},
                 {"polynomial", f.to_string()},
                 {"precision_bits", set.precision_bits},
                 {"status", set.status == RootSetStatus::Certified ? "certified" : "refinement-cap-reached"},
                 {"roots", roots},
                 {"fujiwara_bound", fujiwara_bound(f)},
                 {"mahler_measure", {{"lo", m.lo}, {"hi", m.hi}}}},
            g);
  return 0;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string poly;
  bool all = false, profile = false, signature = false, factor = false, sn = false, relation = false;
  uint64_t prime_bound = 1000;
};

int cmd_classify(ClassifyArgs a, const Globals& g) {
  IntPolynomial f = IntPolynomial::parse(a.poly);
  if (a.all) a.profile = a.signature = a.factor = a.sn = a.relation = true;
  if (!(a.profile || a.signature || a.factor || a.sn || a.relation)) a.profile = a.signature = true;
  json cfg = global_config(g);
  cfg["poly"] = a.poly;
  cfg["prime_bound"] = a.prime_bound;
  cfg["fields"] = json{{"profile", a.profile}, {"signature", a.signature}, {"factor", a.factor},
                       {"sn", a.sn},           {"relation", a.relation}};
  json out{{"version", kVersion}, {"config", cfg}, {"polynomial", f.to_string()}};
  if (a.profile) {
    RootsConfig rc;
    rc.cap_bits = g.precision_cap;
    ModulusProfile p = modulus_profile(f, rc);
    out["k_max"] = p.k_max;
    out["k_min"] = p.k_min;
    out["dominant"] = p.dominant;
    out["profile_decision"] = p.decision == ProfileDecision::Exact ? "exact" : "numeric-certified";
  }
  if (a.signature) {
    RootSignature s = root_signature(f);
    out["r"] = s.r;
    out["s"] = s.s;
  }
  if (a.factor) {
    FactorizationResult fr = factorize(f, g.degree_cap);
    json facs = json::array();
    for (const auto& x : fr.factors) facs.push_back({{"factor", x.factor.to_string()}, {"multiplicity", x.multiplicity}});
    out["factorization"] = {{"unit", fr.unit.get_str()},
                            {"factors", facs},
                            {"irreducible", fr.irreducible},
                            {"smallest_factor_degree", fr.smallest_factor_degree}};
  }
  // With --all, fields that do not apply are reported instead of failing.
  auto guarded = [&](const char* key, const std::function<json()>& fn) {
    if (!a.all) {
      out[key] = fn();
      return;
    }
    try {
      out[key] = fn();
    } catch (const Error& e) {
      out[key] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
  };
  if (a.sn) {
    guarded("sn", [&]() -> json {
      SnCertificate c = sn_certificate(f, a.prime_bound);
      json w = json::array();
      for (const auto& x : c.witnesses) w.push_back({{"prime", x.prime}, {"pattern", x.pattern}});
      return {{"verdict", c.verdict == SnVerdict::CertifiedSn ? "CERTIFIED_SN" : "UNDECIDED"}, {"witnesses", w}};
    });
  }
  if (a.relation) {
    guarded("relation", [&]() -> json {
      RelationResult r = multiplicative_relation(f);
      return {{"value", r.value}, {"reason", r.reason}};
    });
  }
  emit_json(out, g);
  return 0;
}

// ---------------------------------------------------------------------------

struct CensusArgs {
  int n = 0;
  int H = 0;
  bool monic = false;
  std::string counters = "A";
  std::string checkpoint;
  uint64_t prime_bound = 100;
  bool nonzero_constant = false, symmetry = false, permissive = false;
  double budget = 5e9;
};

int cmd_census(const CensusArgs& a, const Globals& g) {
  CensusSpec s;
  s.n = a.n;
  s.H = a.H;
  s.monic = a.monic;
  s.counters = CounterSet::parse(a.counters);
  s.jobs = g.jobs;
  s.checkpoint_path = a.checkpoint;
  s.prime_bound = a.prime_bound;
  s.nonzero_constant = a.nonzero_constant;
  s.symmetry = a.symmetry;
  s.permissive = a.permissive;
  s.budget = a.budget;
  s.roots.cap_bits = g.precision_cap;
  s.degree_cap = g.degree_cap;
  auto t0 = std::chrono::steady_clock::now();
  CounterTable t = run_census(s);
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json cfg = global_config(g);
  cfg["checkpoint"] = a.checkpoint;
  cfg["budget"] = a.budget;
  if (g.format == "csv") {
    emit(std::string("# ") + kVersion + "\n# config " + cfg.dump() + "\n# spec " + s.to_json().dump() + "\n" + to_csv(t),
         g.out);
    return 0;
  }
  json out = to_json(t);
  out["version"] = kVersion;
  out["config"] = cfg;
  out["spec"] = s.to_json();
  if (s.counters.e_upper) out["notes"] = {"E_upper counts polynomials not certified S_n: an upper bound on E_n(H)"};
  out["runtime_seconds"] = dt;
  emit_json(out, g);
  return 0;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::string target;
  int n = 0;
  int H = 0;
  double delta = 0.5;
  std::string params;
  uint64_t count = 1000;
  bool enumerate = false;
  bool monic = false;
  bool no_real_roots = false;
  std::string validate;
  uint64_t sn_bound = 0;
};

mpq_class parse_rational(const std::string& s) {
  try {
    if (s.find('/') != std::string::npos) {
      mpq_class q(s);
      q.canonicalize();
      return q;
    }
    return mpq_class(std::stod(s));
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad rational '" + s + "'");
  }
}

int cmd_generate(const GenerateArgs& a, const Globals& g) {
  std::vector<IntPolynomial> members;
  json info{{"family", a.family}};
  std::string fam = a.family;
  if (fam == "near-target") {
    if (a.target.empty()) fail(ErrorCode::BadParameters, "near-target needs --target");
    NearTargetOptions opt;
    opt.monic = a.monic;
    opt.enumerate = a.enumerate;
    opt.count = a.count;
    opt.seed = g.seed;
    opt.sn_prime_bound = a.sn_bound;
    NearTargetFamily nf = near_target_family(TargetSpec::parse(a.target), a.H, opt);
    members = std::move(nf.members);
    info["eps"] = nf.bounds.eps.to_string(17);
    info["gamma"] = nf.bounds.gamma.to_string(17);
    info["box_points"] = nf.box_points.get_str();
    info["height_bound"] = nf.height_bound.get_str();
    info["discarded_undecided"] = nf.discarded_undecided;
  } else if (fam == "theorem31") {
    Theorem31Region r{a.n, a.H, mpq_class(a.delta), a.no_real_roots};
    PolyStream s = theorem31_family(r);
    while (members.size() < a.count) {
      auto f = s();
      if (!f) break;
      members.push_back(*f);
    }
    info["region_size"] = theorem31_count(r).get_str();
  } else {
    Showcase which = parse_showcase(fam);
    ShowcaseParams p;
    if (!a.params.empty()) {
      std::vector<mpq_class> v;
      std::stringstream ss(a.params);
      std::string item;
      while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
      if (v.size() != 4) fail(ErrorCode::ParseError, "--params needs d1,d2,l1,l2");
      p = {v[0], v[1], v[2], v[3]};
    }
    PolyStream s = showcase_family(which, a.n, a.H, p);
    while (members.size() < a.count) {
      auto f = s();
      if (!f) break;
      members.push_back(*f);
    }
  }
  std::string text;
  for (const auto& f : members) text += f.to_string() + "\n";
  if (!a.validate.empty()) {
    ValidationReport rep = validate_family(stream_of(members), FamilyPredicate::parse(a.validate), members.size());
    json cfg = global_config(g);
    cfg["family"] = a.family;
    cfg["n"] = a.n;
    cfg["H"] = a.H;
    cfg["count"] = a.count;
    json j{{"version", kVersion},
           {"config", cfg},
           {"family_info", info},
           {"predicate", rep.predicate},
           {"examined", rep.examined},
           {"passed", rep.passed},
           {"pass_fraction", rep.pass_fraction}};
    if (rep.counterexample) j["counterexample"] = rep.counterexample->to_string();
    text += j.dump() + "\n";
  }
  emit(text, g.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string points;
  std::vector<std::string> inputs;
  std::string family = "A";
  std::string label = "k=2";
  bool density = false;
};

int cmd_fit(const FitArgs& a, const Globals& g) {
  json cfg = global_config(g);
  std::vector<CounterTable> tables;
  for (const auto& path : a.inputs) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::EmptyInput, "cannot read " + path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      fail(ErrorCode::ParseError, path + ": " + e.what());
    }
    tables.push_back(table_from_json(j));
  }
  cfg["inputs"] = a.inputs;
  if (a.density) {
    json out = to_json(density_report(tables));
    out["version"] = kVersion;
    out["config"] = cfg;
    emit_json(out, g);
    return 0;
  }
  std::vector<std::pair<double, double>> pts;
  if (!a.points.empty()) {
    std::stringstream ss(a.points);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto colon = item.find(':');
      try {
        if (colon == std::string::npos) throw std::invalid_argument(item);
        pts.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad point '" + item + "' (want H:count)");
      }
    }
  }
  for (const auto& t : tables) {
    pts.emplace_back(t.H, static_cast<double>(t.get(family_name(a.family, t.monic), a.label)));
  }
  GrowthFit fit = fit_growth_exponent(pts);
  cfg["points"] = a.points;
  cfg["family"] = a.family;
  cfg["label"] = a.label;
  emit_json(json{{"version", kVersion},
                 {"config", cfg},
                 {"slope", fit.slope},
                 {"intercept", fit.intercept},
                 {"residual", fit.residual},
                 {"points", pts}},
            g);
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  bool quick = false;
  bool full = false;
  std::vector<int> only;
  bool inject_fault = false;
  std::optional<uint64_t> seed;
};

int cmd_verify(const VerifyArgs& a, const Globals& g) {
  if (a.inject_fault) set_fault_injection(true);
  AcceptanceConfig cfg;
  cfg.suite = a.quick && !a.full ? Suite::Quick : Suite::Full;
  cfg.jobs = g.jobs;
  cfg.only = a.only;
  if (a.seed) cfg.seed = *a.seed;
  std::ostringstream text;
  json rows = json::array();
  int failed = 0;
  run_acceptance(cfg, [&](const CriterionResult& r) {
    if (g.format == "json") {
      rows.push_back({{"id", r.id},
                      {"title", r.title},
                      {"pass", r.pass},
                      {"measured", r.measured},
                      {"expected", r.expected},
                      {"seconds", r.seconds}});
    } else {
      if (g.out != "-") std::cerr << format_result(r) << std::endl;
      text << format_result(r) << "\n";
    }
    failed += r.pass ? 0 : 1;
  });
  if (g.format == "json") {
    json cfgj = global_config(g);
    cfgj["suite"] = cfg.suite == Suite::Quick ? "quick" : "full";
    cfgj["only"] = a.only;
    emit_json(json{{"version", kVersion}, {"config", cfgj}, {"criteria", rows}, {"failed", failed}}, g);
  } else {
    text << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << "\n";
    emit(text.str(), g.out);
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census and classification of integer polynomials by root moduli"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--jobs", g.jobs, "worker threads")->envname("POLYCENSUS_JOBS")->check(CLI::Range(1, 1024));
  app.add_option("--precision-cap", g.precision_cap, "root isolation precision cap in bits")
      ->envname("POLYCENSUS_PRECISION_CAP")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--degree-cap", g.degree_cap, "factorization degree cap")
      ->envname("POLYCENSUS_DEGREE_CAP")
      ->check(CLI::Range(1, 64));
  app.add_option("--seed", g.seed, "random seed")->envname("POLYCENSUS_SEED");
  app.add_option("--format", g.format, "output format")
      ->envname("POLYCENSUS_FORMAT")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", g.out, "output path ('-' for standard output)")->envname("POLYCENSUS_OUT");

  RootsArgs ra;
  auto* roots = app.add_subcommand("roots", "certified root disks");
  roots->add_option("--poly", ra.poly, "coefficients a_0,...,a_n")->required();
  roots->add_option("--precision", ra.precision, "starting precision in bits")->check(CLI::Range(53L, 1L << 20));
  roots->add_option("--refine", ra.refine_to, "shrink radii to at most this")->check(CLI::PositiveNumber);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "modulus profile, signature, factorization, S_n, relation");
  classify->add_option("--poly", ca.poly, "coefficients a_0,...,a_n")->required();
  classify->add_flag("--all", ca.all);
  classify->add_flag("--profile", ca.profile);
  classify->add_flag("--signature", ca.signature);
  classify->add_flag("--factor", ca.factor);
  classify->add_flag("--sn", ca.sn);
  classify->add_flag("--relation", ca.relation);
  classify->add_option("--prime-bound", ca.prime_bound)->check(CLI::Range(uint64_t{2}, uint64_t{100000000}));

  CensusArgs ce;
  auto* census = app.add_subcommand("census", "exhaustive census of a coefficient box");
  census->add_option("--n", ce.n, "degree")->required()->check(CLI::Range(1, 64));
  census->add_option("--height", ce.H, "height bound H")->required()->check(CLI::Range(1, 1000000));
  census->add_flag("--monic", ce.monic);
  census->add_option("--counters", ce.counters, "A, A*, D*, B*, RHO, RHO*, E_UPPER (comma separated)");
  census->add_option("--checkpoint", ce.checkpoint, "checkpoint file (JSONL)");
  census->add_option("--prime-bound", ce.prime_bound)->check(CLI::Range(uint64_t{2}, uint64_t{100000000}));
  census->add_flag("--nonzero-constant", ce.nonzero_constant, "restrict to a_n != 0");
  census->add_flag("--symmetry", ce.symmetry, "orbit reduction under f -> -f, f -> f(-X)");
  census->add_flag("--permissive", ce.permissive, "count precision-cap outcomes as ambiguous");
  census->add_option("--budget", ce.budget, "cap on n times the number of lattice points")->check(CLI::PositiveNumber);

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "explicit polynomial families");
  generate->add_option("--family", ga.family)
      ->required()
      ->check(CLI::IsMember({"near-target", "theorem31", "a3star3", "x3plus8"}));
  generate->add_option("--target", ga.target, "points re,im;re,im;...");
  generate->add_option("--n", ga.n)->check(CLI::Range(1, 64));
  generate->add_option("--height", ga.H)->required()->check(CLI::Range(1, 1000000000));
  generate->add_option("--delta", ga.delta)->check(CLI::Range(0.0, 1.0));
  generate->add_option("--params", ga.params, "d1,d2,l1,l2 (rationals such as 1/36)");
  generate->add_option("--count", ga.count);
  generate->add_flag("--enumerate", ga.enumerate);
  generate->add_flag("--monic", ga.monic);
  generate->add_flag("--no-real-roots", ga.no_real_roots);
  generate->add_option("--validate", ga.validate, "predicate, e.g. kmax=2 or b=2,2");
  generate->add_option("--sn-bound", ga.sn_bound, "keep only certified S_n members (near-target)");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "growth exponent fits and density reports");
  fit->add_option("--points", fa.points, "H:count,H:count,...");
  fit->add_option("--input", fa.inputs, "census JSON outputs")->check(CLI::ExistingFile);
  fit->add_option("--family", fa.family);
  fit->add_option("--label", fa.label);
  fit->add_flag("--density", fa.density, "density report from --input tables");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", va.quick);
  verify->add_flag("--full", va.full);
  verify->add_option("--only", va.only, "criterion ids")->check(CLI::Range(1, 12));
  verify->add_flag("--inject-fault", va.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.count("--seed") > 0) va.seed = g.seed;
  try {
    if (g.format == "csv" && !census->parsed()) fail(ErrorCode::BadParameters, "csv output is only available for census");
    if (*roots) return cmd_roots(ra, g);
    if (*classify) return cmd_classify(ca, g);
    if (*census) return cmd_census(ce, g);
    if (*generate) return cmd_generate(ga, g);
    if (*fit) return cmd_fit(fa, g);
    if (*verify) return cmd_verify(va, g);
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << std::endl;
    return 1;
  }
  return 2;
}
