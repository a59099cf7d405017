#include "seqderiv/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "seqderiv/dioph.hpp"
#include "seqderiv/error.hpp"
#include "seqderiv/extreal.hpp"
#include "seqderiv/gallery.hpp"
#include "seqderiv/limitset.hpp"
#include "seqderiv/quotient.hpp"
#include "seqderiv/seqgen.hpp"
#include "seqderiv/verify.hpp"

namespace seqderiv {

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

struct Report {
  nlohmann::json result;
  std::string csv;
  int exit_code = 0;
};

SamplingBudget budget_of(const RunConfig& c) {
  SamplingBudget b;
  b.samples = c.budget;
  b.seed = c.seed;
  b.cluster_tol = c.cluster_tol;
  return b;
}

double require_x(const RunConfig& c) {
  if (!c.x) throw Error(ErrorKind::param, c.command + " needs --x");
  return *c.x;
}

GalleryFunction require_fn(const RunConfig& c) {
  if (c.fn.empty()) throw Error(ErrorKind::param, c.command + " needs --fn");
  return make_function(c.fn);
}

Report cmd_gallery(const RunConfig&) {
  Report r;
  r.result = nlohmann::json::array();
  r.csv = "name,spec,continuous,description\n";
  for (const auto& e : gallery_catalog()) {
    r.result.push_back(
        {{"name", e.name}, {"spec", e.example_spec}, {"continuous", e.continuous}, {"description", e.description}});
    r.csv += csv_field(e.name) + "," + csv_field(e.example_spec) + "," + (e.continuous ? "true" : "false") + "," +
             csv_field(e.description) + "\n";
  }
  return r;
}

Report cmd_eval(const RunConfig& c) {
  const auto f = require_fn(c);
  const double x = require_x(c);
  const double v = f(x);
  Report r;
  r.result = {{"function", f.spec()}, {"x", x}, {"value", ext(v)}};
  r.csv = "x,value\n" + format_number(x) + "," + format_number(v) + "\n";
  return r;
}

Report cmd_trace(const RunConfig& c) {
  const auto f = require_fn(c);
  const double x = require_x(c);
  if (c.h_seq.empty()) throw Error(ErrorKind::param, "trace needs --h-seq");
  const auto h = DecaySequence::parse(c.h_seq);
  std::optional<DecaySequence> k;
  if (!c.k_seq.empty()) k = DecaySequence::parse(c.k_seq);
  const auto t = trace(f, x, h, k, c.n, c.infinity_threshold);
  Report r;
  r.result = t;
  r.csv = to_csv(t);
  return r;
}

Report estimate_report(const LimitSetEstimate& e) {
  Report r;
  r.result = e;
  r.csv = to_csv(e.set);
  return r;
}

Report cmd_secant(const RunConfig& c) {
  return estimate_report(estimate_secant_set(require_fn(c), require_x(c), parse_side(c.side), budget_of(c)));
}

Report cmd_cord(const RunConfig& c) { return estimate_report(estimate_cord_set(require_fn(c), require_x(c), budget_of(c))); }

Report cmd_predict_poly(const RunConfig& c) {
  const auto p = predict_poly(c.a.value_or(1.0), c.b.value_or(1.0), c.m.value_or(1.0), c.R, c.L, c.i_max, c.j_max);
  Report r;
  r.result = p;
  r.csv = "i,j,r,limit\n";
  for (const auto& w : p.weights) {
    r.csv += std::to_string(w.i) + "," + std::to_string(w.j) + "," + format_number(w.r) + "," + format_number(w.limit) + "\n";
  }
  return r;
}

Report cmd_predict_exp(const RunConfig& c) {
  const double a = c.a.value_or(2.0), b = c.b.value_or(4.0);
  const auto precision = working_precision();
  const auto e = predict_exp(a, b, c.R, c.L, c.t_min, c.t_max, 1e-3, precision);
  Report r = estimate_report(e);
  r.result["relation"] = to_string(rational_check(a, b, 64, precision));
  r.result["precision"] = to_string(precision);
  return r;
}

Report cmd_solve_target(const RunConfig& c) {
  const auto f = require_fn(c);
  const double x = require_x(c);
  if (!c.target) throw Error(ErrorKind::param, "solve-target needs --target");
  const auto p = solve_target(f, x, *c.target, c.target_tol, budget_of(c));
  Report r;
  r.result = p;
  r.result["residual"] = std::abs(p.value.to_double() - *c.target);
  r.csv = "h,k,value\n" + format_number(p.h) + "," + format_number(p.k) + "," + format_number(p.value) + "\n";
  return r;
}

Report cmd_verify(const RunConfig& c) {
  VerifyConfig v;
  v.seed = c.seed;
  v.budget = c.budget;
  v.cluster_tol = c.cluster_tol;
  v.target_tol = c.target_tol;
  v.a = c.a;
  v.b = c.b;
  v.m = c.m;
  v.target = c.target;
  const auto reports = run_verification(c.suite, v);
  Report r;
  bool all = true;
  r.result = {{"suites", reports}};
  r.csv = "suite,check,passed,detail\n";
  for (const auto& s : reports) {
    all = all && s.passed();
    for (const auto& ch : s.checks) {
      r.csv += csv_field(s.suite) + "," + csv_field(ch.name) + "," + (ch.passed ? "pass" : "FAIL") + "," +
               csv_field(ch.detail) + "\n";
    }
  }
  r.result["passed"] = all;
  r.exit_code = all ? 0 : 1;
  return r;
}

void validate(const RunConfig& c) {
  if (c.budget < 100) throw Error(ErrorKind::param, "--budget must be at least 100");
  if (!(c.cluster_tol > 0)) throw Error(ErrorKind::param, "--cluster-tol must be > 0");
  if (!(c.target_tol > 0)) throw Error(ErrorKind::param, "--tol must be > 0");
  if (!(c.infinity_threshold > 0)) throw Error(ErrorKind::param, "--infinity-threshold must be > 0");
  if (c.n < 1) throw Error(ErrorKind::param, "--n must be >= 1");
}

void emit(std::ostream& out, const RunConfig& c, const nlohmann::json& body_key, const nlohmann::json& body,
          const std::string& csv) {
  if (c.format == OutputFormat::json) {
    nlohmann::json doc = {{"schema", kSchema}, {"command", c.command}, {"config", c}};
    doc[body_key.get<std::string>()] = body;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "# schema=" << kSchema << '\n';
  const nlohmann::json config = c;
  for (const auto& [key, value] : config.items()) {
    out << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  out << csv;
}

}  // namespace

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"command", c.command},
       {"seed", c.seed},
       {"budget", c.budget},
       {"cluster_tol", c.cluster_tol},
       {"target_tol", c.target_tol},
       {"infinity_threshold", c.infinity_threshold},
       {"format", c.format == OutputFormat::json ? "json" : "csv"},
       {"fn", c.fn},
       {"x", optional_json(c.x)},
       {"h_seq", c.h_seq},
       {"k_seq", c.k_seq},
       {"n", c.n},
       {"side", c.side},
       {"target", optional_json(c.target)},
       {"suite", c.suite},
       {"a", optional_json(c.a)},
       {"b", optional_json(c.b)},
       {"m", optional_json(c.m)},
       {"R", c.R},
       {"L", c.L},
       {"i_max", c.i_max},
       {"j_max", c.j_max},
       {"t_min", c.t_min},
       {"t_max", c.t_max}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string format = "json";
  CLI::App app{"Sequential secant and cord derivatives: estimation, prediction and checks", "seqderiv"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--budget", c.budget, "number of sampled quotients (>= 100)")->capture_default_str();
    sub->add_option("--cluster-tol", c.cluster_tol, "clustering tolerance in the chart metric")->capture_default_str();
    sub->add_option("--tol", c.target_tol, "target tolerance")->capture_default_str();
    sub->add_option("--infinity-threshold", c.infinity_threshold, "quotients beyond this are +-inf")
        ->capture_default_str();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto fn_x = [&](CLI::App* sub) {
    sub->add_option("--fn", c.fn, "gallery function spec, e.g. weierstrass:a=0.5,b=13");
    sub->add_option("--x", c.x, "evaluation point");
  };
  auto rates = [&](CLI::App* sub) {
    sub->add_option("--a", c.a, "rate parameter a");
    sub->add_option("--b", c.b, "rate parameter b");
    sub->add_option("--R", c.R, "right slope")->capture_default_str();
    sub->add_option("--L", c.L, "left slope")->capture_default_str();
  };

  auto* gallery = app.add_subcommand("gallery", "list gallery functions");
  common(gallery);
  auto* eval = app.add_subcommand("eval", "evaluate a gallery function");
  common(eval);
  fn_x(eval);
  auto* tr = app.add_subcommand("trace", "Newton or cord quotients along decay sequences");
  common(tr);
  fn_x(tr);
  tr->add_option("--h-seq", c.h_seq, "h sequence, e.g. harmonic:0,1 poly:2,1 exp:2 list:...");
  tr->add_option("--k-seq", c.k_seq, "k sequence; cord quotients when given");
  tr->add_option("--n", c.n, "number of terms")->capture_default_str();
  auto* secant = app.add_subcommand("secant-set", "estimate the set of sequential secant derivatives");
  common(secant);
  fn_x(secant);
  secant->add_option("--side", c.side, "left, right or both")->check(CLI::IsMember({"left", "right", "both"}))
      ->capture_default_str();
  auto* cord = app.add_subcommand("cord-set", "estimate the set of sequential cord derivatives");
  common(cord);
  fn_x(cord);
  auto* ppoly = app.add_subcommand("predict-poly", "cord limits for polynomial decay rates");
  common(ppoly);
  rates(ppoly);
  ppoly->add_option("--m", c.m, "polynomial degree m");
  ppoly->add_option("--i-max", c.i_max)->capture_default_str();
  ppoly->add_option("--j-max", c.j_max)->capture_default_str();
  auto* pexp = app.add_subcommand("predict-exp", "cord limits for exponential decay rates");
  common(pexp);
  rates(pexp);
  pexp->add_option("--t-min", c.t_min)->capture_default_str();
  pexp->add_option("--t-max", c.t_max)->capture_default_str();
  auto* solve = app.add_subcommand("solve-target", "find (h, k) whose cord quotient hits a target");
  common(solve);
  fn_x(solve);
  solve->add_option("--target", c.target, "target value K");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", c.suite, "suite name or 'all'")->capture_default_str();
  verify->add_option("--a", c.a, "rate parameter a");
  verify->add_option("--b", c.b, "rate parameter b");
  verify->add_option("--m", c.m, "polynomial degree m");
  verify->add_option("--target", c.target, "target value K");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  c.command = app.get_subcommands().front()->get_name();
  c.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;

  Report report;
  try {
    validate(c);
    if (c.command == "gallery") report = cmd_gallery(c);
    else if (c.command == "eval") report = cmd_eval(c);
    else if (c.command == "trace") report = cmd_trace(c);
    else if (c.command == "secant-set") report = cmd_secant(c);
    else if (c.command == "cord-set") report = cmd_cord(c);
    else if (c.command == "predict-poly") report = cmd_predict_poly(c);
    else if (c.command == "predict-exp") report = cmd_predict_exp(c);
    else if (c.command == "solve-target") report = cmd_solve_target(c);
    else report = cmd_verify(c);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::param) {
      err << "usage error: " << e.what() << '\n';
      return 2;
    }
    const nlohmann::json record = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    emit(out, c, "error", record,
         "error_kind,message\n" + csv_field(std::string(to_string(e.kind()))) + "," + csv_field(e.what()) + "\n");
    return 1;
  }
  emit(out, c, "result", report.result, report.csv);
  return report.exit_code;
}

}  // namespace seqderiv
