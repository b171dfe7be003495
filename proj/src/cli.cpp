#include "fibla/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "fibla/duals.hpp"
#include "fibla/error.hpp"
#include "fibla/golden.hpp"
#include "fibla/matclass.hpp"
#include "fibla/mnc.hpp"
#include "fibla/operators.hpp"
#include "fibla/spaces.hpp"
#include "fibla/subset_sup.hpp"
#include "fibla/triangle.hpp"
#include "fibla/witness.hpp"

namespace fibla {

namespace {

using json = nlohmann::ordered_json;

// Thrown by commands whose own check failed; carries the report.
struct VerificationFailed {
  std::string text;
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json real_json(const Real& r) {
  json j;
  j["text"] = r.to_string();
  j["approx"] = r.to_double();
  if (r.exact_value()) j["exact"] = r.exact_value()->to_string();
  else j["error_bound"] = r.error_bound_double();
  return j;
}

json verdict_json(const Verdict& v) {
  json sweep = json::array();
  for (const auto& p : v.sweep) sweep.push_back({{"n", p.n}, {"value", p.text}, {"approx", p.value}});
  return {{"status", to_string(v.status)}, {"slope", v.slope}, {"note", v.note}, {"sweep", sweep}};
}

json window_json(const SeqWindow& w) {
  json a = json::array();
  for (const auto& v : w.values()) a.push_back(v.to_string());
  return a;
}

json header(const RunConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = c.command;
  j["lambda"] = c.lambda;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Exponent exponent_or(const RunConfig& c, const char* fallback) {
  return Exponent::parse(c.p.value_or(fallback));
}

std::optional<Exponent> exponent_opt(const RunConfig& c) {
  if (!c.p) return std::nullopt;
  return Exponent::parse(*c.p);
}

const std::string& require(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::kParse, std::string("missing ") + flag);
  return *v;
}

Matrix load_matrix(const std::string& spec, const LambdaSeq& lambda) {
  const auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && spec[first] == '{') return Matrix::from_json_text(spec, lambda);
  return Matrix::from_file(spec, lambda);
}

ClassOptions class_options(const RunConfig& c) {
  ClassOptions o;
  o.window = c.window;
  o.mode = parse_subset_mode(c.subset_mode);
  o.seed = c.seed;
  o.precision = c.precision;
  return o;
}

RealWindow real_input(const std::string& spec, const LambdaSeq& lambda, const std::optional<Exponent>& p,
                      std::size_t n, long prec) {
  if (spec.starts_with("witness:")) return gen_witness_real(spec.substr(8), lambda, p, n, prec);
  return RealWindow::from_exact(parse_sequence(spec, lambda, p).prefix(n), prec);
}

std::string cmd_transform(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const auto p = exponent_opt(c);
  const std::string& spec = c.inverse ? require(c.y, "--y") : require(c.x, "--x");
  const std::size_t N = c.window;
  json j = header(c);
  j["direction"] = c.inverse ? "inverse" : "forward";
  j["mode"] = c.mode;
  j["N"] = N;
  j["input_spec"] = spec;
  std::vector<std::string> in_text, out_text;
  if (c.mode == "float") {
    const long prec = witness_precision(N, c.precision);
    const RealWindow in = real_input(spec, lambda, p, N, prec);
    const RealWindow res = c.inverse ? inverse_transform(in, lambda) : forward_transform(in, lambda);
    for (const auto& v : in.values()) in_text.push_back(v.to_string());
    for (const auto& v : res.values()) out_text.push_back(v.to_string());
  } else {
    const SeqWindow in = parse_sequence(spec, lambda, p).prefix(N);
    const SeqWindow res = c.inverse ? inverse_transform(in, lambda) : forward_transform(in, lambda);
    for (const auto& v : in.values()) in_text.push_back(v.to_string());
    for (const auto& v : res.values()) out_text.push_back(v.to_string());
  }
  if (c.csv) {
    std::string s = c.inverse ? "n,y,x\n" : "n,x,y\n";
    for (std::size_t n = 0; n < N; ++n) s += std::to_string(n) + "," + in_text[n] + "," + out_text[n] + "\n";
    return s;
  }
  j["input"] = in_text;
  j["output"] = out_text;
  return dump(j);
}

std::string cmd_invert(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const std::size_t N = c.window;
  const Triangle G = make_E_inverse(lambda);
  const DenseWindow oracle = triangle_invert(make_E(lambda), N);
  json rows = json::array();
  bool agrees = true;
  for (std::size_t n = 0; n < N; ++n) {
    json row = json::array();
    for (std::size_t k = 0; k <= n; ++k) {
      const Rational g = G(n, k);
      agrees = agrees && g == oracle.at(n, k);
      row.push_back(g.to_string());
    }
    rows.push_back(row);
  }
  json j = header(c);
  j["N"] = N;
  j["rows"] = rows;
  j["oracle"] = agrees ? "agrees" : "disagrees";
  if (!agrees) throw VerificationFailed{dump(j)};
  return dump(j);
}

std::string cmd_norm(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const Exponent p = exponent_or(c, "2");
  const std::string& spec = require(c.x, "--x");
  const std::size_t N = c.window;
  if (N == 0) throw Error(ErrorCode::kDomain, "window must be positive");
  const auto sweep = default_sweep(std::min<std::size_t>(4, N), N);
  json j = header(c);
  j["p"] = p.to_string();
  j["mode"] = c.mode;
  j["N"] = N;
  j["input_spec"] = spec;
  std::optional<NormEstimate> est;
  Verdict v;
  if (c.mode == "float") {
    auto gen = [&](std::size_t n, long prec) { return real_input(spec, lambda, p, n, prec); };
    const long prec = witness_precision(N, c.precision);
    est = space_norm(gen(N, prec), lambda, p, prec);
    v = membership_evidence_real(gen, lambda, p, sweep, c.precision);
  } else {
    const auto gen = parse_sequence(spec, lambda, p);
    est = space_norm(gen.prefix(N), lambda, p, c.precision);
    v = membership_evidence(gen, lambda, p, sweep, c.precision);
  }
  j["norm"] = real_json(est->value);
  if (est->sup_index) j["sup_index"] = *est->sup_index;
  else j["tail_fraction"] = est->tail_fraction;
  j["membership"] = verdict_json(v);
  return dump(j);
}

std::string cmd_basis(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const std::size_t N = c.window;
  json j = header(c);
  j["N"] = N;
  bool ok = true;
  if (c.x) {
    // Expansion of x in the basis up to index N-1.
    const SeqWindow x = parse_sequence(*c.x, lambda).prefix(N);
    const SeqWindow alpha = forward_transform(x, lambda);
    std::vector<Rational> sum(N);
    for (std::size_t k = 0; k < N; ++k) {
      const auto b = basis_vector(k, lambda, N);
      for (std::size_t n = k; n < N; ++n) sum[n] += alpha[k] * b[n];
    }
    ok = SeqWindow(sum) == x;
    j["input_spec"] = *c.x;
    j["coefficients"] = window_json(alpha);
    j["reconstruction"] = window_json(SeqWindow(sum));
    j["reconstructs"] = ok;
  } else {
    const SeqWindow b = basis_vector(c.k, lambda, N);
    const SeqWindow eb = forward_transform(b, lambda);
    for (std::size_t n = 0; n < N; ++n) ok = ok && eb[n] == Rational(n == c.k ? 1 : 0);
    j["k"] = c.k;
    j["b"] = window_json(b);
    j["image_is_unit"] = ok;
  }
  if (!ok) throw VerificationFailed{dump(j)};
  return dump(j);
}

json dual_report_json(const DualReport& r) {
  return {{"id", r.id}, {"p", r.p}, {"window", r.window}, {"subset_mode", to_string(r.mode)},
          {"value", r.value}, {"lower_bound", r.lower_bound}, {"verdict", verdict_json(r.verdict)}};
}

std::string cmd_dual(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const std::string& spec = require(c.a, "--a");
  DualOptions o;
  o.window = c.window;
  o.mode = parse_subset_mode(c.subset_mode);
  o.seed = c.seed;
  o.precision = c.precision;
  const auto a = parse_sequence(spec, lambda);
  json j = header(c);
  j["a"] = spec;
  j["window"] = c.window;
  j["seed"] = c.seed;
  json parts = json::array();
  if (c.condition) {
    const SpaceSpec space = SpaceSpec::parse(c.space);
    const auto r = dual_condition(a, lambda, *c.condition, space.p, o);
    j["space"] = space.to_string();
    parts.push_back(dual_report_json(r));
    j["conditions"] = parts;
    j["verdict"] = verdict_json(r.verdict);
    return dump(j);
  }
  const auto m = dual_membership(a, lambda, SpaceSpec::parse(c.space), parse_dual_kind(c.kind), o);
  j["space"] = m.space.to_string();
  j["kind"] = to_string(m.kind);
  for (const auto& r : m.parts) parts.push_back(dual_report_json(r));
  j["conditions"] = parts;
  j["verdict"] = verdict_json(m.verdict);
  return dump(j);
}

std::string cmd_class(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const Matrix A = load_matrix(require(c.A, "--A"), lambda);
  const auto rep = class_check(A, lambda, SpaceSpec::parse(c.X), SpaceSpec::parse(c.Y), class_options(c));
  json j = header(c);
  j["matrix"] = A.description();
  j["X"] = rep.X.to_string();
  j["Y"] = rep.Y.to_string();
  j["window"] = rep.window;
  json conds = json::array();
  for (const auto& r : rep.conditions) {
    conds.push_back({{"id", r.id}, {"description", r.description}, {"value", r.value},
                     {"lower_bound", r.lower_bound}, {"verdict", verdict_json(r.verdict)}});
  }
  j["conditions"] = conds;
  j["verdict"] = verdict_json(rep.verdict);
  return dump(j);
}

std::string cmd_opnorm(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const Matrix A = load_matrix(require(c.A, "--A"), lambda);
  const Exponent p = exponent_or(c, "2");
  const SpaceSpec Y = SpaceSpec::parse(c.Y);
  const auto n = op_norm(A, lambda, p, Y, class_options(c));
  json j = header(c);
  j["matrix"] = A.description();
  j["p"] = p.to_string();
  j["Y"] = Y.to_string();
  j["low"] = real_json(n.low);
  j["high"] = real_json(n.high);
  j["bracket"] = n.bracket;
  j["exact"] = n.exact;
  j["lower_bound"] = n.lower_bound;
  j["formula"] = n.formula;
  j["window"] = n.window;
  j["verdict"] = verdict_json(n.verdict);
  return dump(j);
}

MncEstimate run_mnc(const RunConfig& c, const LambdaSeq& lambda) {
  const Matrix A = load_matrix(require(c.A, "--A"), lambda);
  return mnc_estimate(A, lambda, exponent_or(c, "2"), SpaceSpec::parse(c.Y), c.rmax, class_options(c));
}

std::string cmd_mnc(const RunConfig& c) {
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const auto m = run_mnc(c, lambda);
  json j = header(c);
  j["p"] = exponent_or(c, "2").to_string();
  j["Y"] = SpaceSpec::parse(c.Y).to_string();
  j["rmax"] = c.rmax;
  json sweep = json::array();
  for (std::size_t r = 0; r < m.s.size(); ++r) {
    sweep.push_back({{"r", r}, {"s", m.s[r].to_string()}, {"value", m.s[r].to_double()}});
  }
  j["sweep"] = sweep;
  j["limit"] = real_json(m.limit);
  j["low"] = real_json(m.low);
  j["high"] = real_json(m.high);
  j["exact"] = m.exact;
  j["lower_bound"] = m.lower_bound;
  j["formula"] = m.formula;
  j["window"] = m.window;
  j["verdict"] = verdict_json(m.verdict);
  j["compactness"] = compactness_label(compactness_verdict(m));
  return dump(j);
}

std::string cmd_verify(const RunConfig& c, bool window_given) {
  GoldenOptions o;
  if (window_given) o.N = c.window;
  o.p = exponent_opt(c);
  o.seed = c.seed;
  o.precision = c.precision;
  const auto results = run_golden_suite(c.only, o);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = c.command;
  j["seed"] = c.seed;
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    json facts = json::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    arr.push_back({{"id", r.id}, {"identity", r.identity}, {"passed", r.passed}, {"facts", facts},
                   {"failures", r.failures}});
    all = all && r.passed;
  }
  j["results"] = arr;
  j["passed"] = all;
  if (!all) throw VerificationFailed{dump(j)};
  return dump(j);
}

std::string plot_from_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
  const bool mnc = j.value("command", "") == "mnc";
  json sweep = json::array();
  if (j.contains("sweep")) sweep = j["sweep"];
  else if (j.contains("membership")) sweep = j["membership"]["sweep"];
  else if (j.contains("verdict")) sweep = j["verdict"]["sweep"];
  if (!sweep.is_array()) throw Error(ErrorCode::kParse, path + ": sweep is not an array");
  std::string s = mnc ? "r,s\n" : "N,value\n";
  for (const auto& p : sweep) {
    const auto idx = mnc ? p.at("r").get<std::size_t>() : p.at("n").get<std::size_t>();
    const double v = mnc ? p.at("value").get<double>() : p.at("approx").get<double>();
    s += std::to_string(idx) + "," + fmt_double(v) + "\n";
  }
  return s;
}

std::string cmd_plot(const RunConfig& c) {
  if (c.from) return plot_from_report(*c.from);
  const LambdaSeq lambda = LambdaSeq::parse(c.lambda);
  const std::string what = c.what.value_or(c.A ? "mnc" : "norm");
  if (what == "mnc") {
    const auto m = run_mnc(c, lambda);
    std::string s = "r,s\n";
    for (std::size_t r = 0; r < m.s.size(); ++r) s += std::to_string(r) + "," + fmt_double(m.s[r].to_double()) + "\n";
    return s;
  }
  if (what != "norm") throw Error(ErrorCode::kParse, "--what must be norm or mnc");
  const Exponent p = exponent_or(c, "2");
  const auto gen = parse_sequence(require(c.x, "--x"), lambda, p);
  std::string s = "N,norm\n";
  if (c.window == 0) return s;
  for (std::size_t n : default_sweep(1, c.window)) {
    s += std::to_string(n) + "," + fmt_double(space_norm(gen.prefix(n), lambda, p, c.precision).value.to_double()) + "\n";
  }
  return s;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.output) {
    out << text;
    return;
  }
  std::ofstream f(*c.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + *c.output);
  f << text;
  if (!f) throw Error(ErrorCode::kIo, "write failed for " + *c.output);
}

void add_opt(CLI::App* app, const std::string& name, std::optional<std::string>& target,
             const std::string& desc) {
  app->add_option_function<std::string>(name, [&target](const std::string& v) { target = v; }, desc);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact arithmetic for the Fibonacci/lambda triangle E and its sequence spaces", "fibla"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s, bool window = true) {
    s->add_option("--lambda", c.lambda, "lambda spec: linear:a,b | geometric:r,c | file:<path>");
    s->add_option("--precision", c.precision, "working precision in bits")->check(CLI::Range(64L, 1L << 20));
    s->add_option("--seed", c.seed, "seed for sampled searches");
    add_opt(s, "-o,--output", c.output, "write the report to a file");
    if (window) s->add_option("-N,--window", c.window, "window size");
  };

  auto* transform = app.add_subcommand("transform", "y = Ex, or x = E^-1 y with --inverse");
  common(transform);
  add_opt(transform, "--x", c.x, "input sequence");
  add_opt(transform, "--y", c.y, "image sequence (with --inverse)");
  add_opt(transform, "--p", c.p, "exponent for the power-law witness");
  transform->add_flag("--inverse", c.inverse, "apply E^-1");
  transform->add_flag("--csv", c.csv, "CSV instead of JSON");
  transform->add_option("--mode", c.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));

  auto* invert = app.add_subcommand("invert", "closed-form E^-1 window, checked by forward substitution");
  common(invert);

  auto* norm = app.add_subcommand("norm", "||x|| in the domain of E in l_p, with membership evidence");
  common(norm);
  add_opt(norm, "--x", c.x, "sequence");
  add_opt(norm, "--p", c.p, "exponent (default 2)");
  norm->add_option("--mode", c.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));

  auto* basis = app.add_subcommand("basis", "basis vector b^(k), or the expansion of --x");
  common(basis);
  basis->add_option("-k", c.k, "basis index");
  add_opt(basis, "--x", c.x, "sequence to expand");

  auto* dual = app.add_subcommand("dual", "alpha/beta/gamma dual membership evidence");
  common(dual);
  add_opt(dual, "--a", c.a, "sequence");
  dual->add_option("--space", c.space, "l1 | lp:<p> | linf");
  dual->add_option("--kind", c.kind, "alpha | beta | gamma");
  add_opt(dual, "--condition", c.condition, "single condition d1..d8");
  dual->add_option("--subset-mode", c.subset_mode, "auto | exact | sampled");

  auto* cls = app.add_subcommand("class", "conditions for A in (X(E) : Y)");
  common(cls);
  add_opt(cls, "--A", c.A, "matrix JSON file or inline JSON");
  cls->add_option("--X", c.X, "l1 | lp:<p> | linf");
  cls->add_option("--Y", c.Y, "l1 | lp:<p> | linf | c0 | c");
  cls->add_option("--subset-mode", c.subset_mode, "auto | exact | sampled");

  auto* opnorm = app.add_subcommand("opnorm", "operator norm of L_A on the domain of E in l_p");
  common(opnorm);
  add_opt(opnorm, "--A", c.A, "matrix JSON file or inline JSON");
  add_opt(opnorm, "--p", c.p, "exponent (default 2)");
  opnorm->add_option("--Y", c.Y, "linf | c | c0 | l1");
  opnorm->add_option("--subset-mode", c.subset_mode, "auto | exact | sampled");

  auto* mnc = app.add_subcommand("mnc", "Hausdorff measure of noncompactness of L_A");
  common(mnc);
  add_opt(mnc, "--A", c.A, "matrix JSON file or inline JSON");
  add_opt(mnc, "--p", c.p, "exponent (default 2)");
  mnc->add_option("--Y", c.Y, "c0 | c | l1");
  mnc->add_option("--rmax", c.rmax, "largest r in the s(r) sweep");
  mnc->add_option("--subset-mode", c.subset_mode, "auto | exact | sampled");

  auto* verify = app.add_subcommand("verify-paper", "run the golden identity suite");
  common(verify);
  add_opt(verify, "--only", c.only, "run one identity");
  add_opt(verify, "--p", c.p, "exponent for parallelogram and power-law checks");

  auto* plot = app.add_subcommand("plot-data", "CSV columns of a norm or s(r) sweep");
  common(plot);
  add_opt(plot, "--what", c.what, "norm | mnc");
  add_opt(plot, "--from", c.from, "read the sweep from a saved JSON report");
  add_opt(plot, "--x", c.x, "sequence (norm sweep)");
  add_opt(plot, "--A", c.A, "matrix (mnc sweep)");
  add_opt(plot, "--p", c.p, "exponent (default 2)");
  plot->add_option("--Y", c.Y, "c0 | c | l1 (mnc sweep)");
  plot->add_option("--rmax", c.rmax, "largest r (mnc sweep)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fibla: " << e.what() << "\n";
    return kExitInputError;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  try {
    std::string text;
    if (sub == transform) text = cmd_transform(c);
    else if (sub == invert) text = cmd_invert(c);
    else if (sub == norm) text = cmd_norm(c);
    else if (sub == basis) text = cmd_basis(c);
    else if (sub == dual) text = cmd_dual(c);
    else if (sub == cls) text = cmd_class(c);
    else if (sub == opnorm) text = cmd_opnorm(c);
    else if (sub == mnc) text = cmd_mnc(c);
    else if (sub == verify) text = cmd_verify(c, verify->count("-N") > 0);
    else text = cmd_plot(c);
    emit(c, text, out);
    return kExitOk;
  } catch (const VerificationFailed& f) {
    try {
      emit(c, f.text, out);
    } catch (const Error& e) {
      err << "fibla: " << e.what() << "\n";
    }
    return kExitVerificationFailed;
  } catch (const Error& e) {
    err << "fibla: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInputError : kExitDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << "fibla: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "fibla: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "fibla: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace fibla
