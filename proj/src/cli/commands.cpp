#include "hamcheck/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hamcheck/bracket.hpp"
#include "hamcheck/diffop.hpp"
#include "hamcheck/error.hpp"
#include "hamcheck/findim.hpp"
#include "hamcheck/jetcalc.hpp"
#include "hamcheck/spectral.hpp"

namespace hamcheck::cli {

using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

const Declaration& op_declaration(const Options& o, const DslDocument& doc) {
  const Declaration* d = o.op.empty() ? doc.first(Declaration::Kind::Op) : doc.find(Declaration::Kind::Op, o.op);
  if (!d) throw Error(o.op.empty() ? "document declares no operator" : "no operator named '" + o.op + "'");
  return *d;
}

LocalFunctional functional_named(const DslDocument& doc, const std::string& name) {
  const Declaration* d = doc.find(Declaration::Kind::Func, name);
  if (!d) throw Error("document declares no functional '" + name + "'");
  return {d->expr, doc.domain()};
}

json base_inputs(const Options& o, const DslDocument& doc, const BracketStructure& b, const std::string& op_name) {
  json in;
  in["file"] = std::filesystem::path(o.file).filename().string();
  in["domain"] = domain_name(doc.domain());
  in["state"] = b.state();
  in["operator"] = op_name;
  in["operator_expr"] = b.op().to_string();
  return in;
}

/// Wraps a parse error coming from a flag value so the message names the flag.
template <class F>
auto from_flag(const char* flag, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(std::string(flag) + ": " + e.message(), e.line(), e.column());
  }
}

Result skew_failure(json report, const BracketStructure& b) {
  report["verdict"] = "fail";
  report["residual"] = (adjoint(b.op()) + b.op()).to_string();
  report["reason"] = "operator is not skew-adjoint; residual is P + P*";
  return {kExitFail, std::move(report), {}};
}

Result check_skew(const Options& o, const DslDocument& doc) {
  const auto& d = op_declaration(o, doc);
  const BracketStructure b = doc.bracket(d.name);
  json r;
  r["command"] = o.command;
  r["inputs"] = base_inputs(o, doc, b, d.name);
  r["verdict"] = b.skew() ? "pass" : "fail";
  r["residual"] = (adjoint(b.op()) + b.op()).to_string();
  r["adjoint"] = adjoint(b.op()).to_string();
  return {b.skew() ? kExitPass : kExitFail, std::move(r), {}};
}

Result check_jacobi(const Options& o, const DslDocument& doc) {
  const auto& d = op_declaration(o, doc);
  const BracketStructure b = doc.bracket(d.name);
  json r;
  r["command"] = o.command;
  r["inputs"] = base_inputs(o, doc, b, d.name);
  if (!b.skew()) return skew_failure(std::move(r), b);
  const JacobiReport rep = jacobi_check(b, JacobiOptions{o.parallel});
  r["verdict"] = rep.pass ? "pass" : "fail";
  r["residual"] = rep.residual.to_string();
  r["cyclic_sum"] = rep.cyclic_sum.to_string();
  r["frechet_of_op"] = rep.frechet_of_op.to_string();
  r["theta"] = rep.theta;
  r["auxiliaries"] = rep.aux;
  return {rep.pass ? kExitPass : kExitFail, std::move(r), {}};
}

Result derive(const Options& o, const DslDocument& doc) {
  const auto& d = op_declaration(o, doc);
  const BracketStructure b = doc.bracket(d.name);
  json r;
  r["command"] = o.command;
  json in = base_inputs(o, doc, b, d.name);

  JetExpr grad_h;
  std::string source;
  if (!o.grad.empty()) {
    grad_h = from_flag("--grad", [&] { return parse_expression(o.grad, doc); });
    source = "--grad";
  } else if (const auto* g = doc.find(Declaration::Kind::Grad, "H")) {
    grad_h = g->expr;
    source = "grad H";
  } else if (doc.find(Declaration::Kind::Func, "H")) {
    grad_h = gradient(b, functional_named(doc, "H"));
    source = "func H";
  } else {
    throw Error("derive needs --grad, 'grad H' or 'func H'");
  }

  Substitutions subs = doc.substitutions();
  for (const auto& s : o.subst) subs.push_back(from_flag("--subst", [&] { return parse_substitution(s, doc); }));

  in["gradient"] = grad_h.to_string();
  in["gradient_source"] = source;
  json sj = json::array();
  for (const auto& [v, e] : subs) sj.push_back(v + " -> " + e.to_string());
  in["substitutions"] = sj;
  r["inputs"] = in;

  const JetExpr rhs = derive_evolution(b, grad_h, subs);
  r["verdict"] = "pass";
  r["derived_rhs"] = rhs.to_string();
  r["equation"] = b.state() + "_t = " + rhs.to_string();
  return {kExitPass, std::move(r), {}};
}

Result check_casimir(const Options& o, const DslDocument& doc) {
  const auto& d = op_declaration(o, doc);
  const BracketStructure b = doc.bracket(d.name);
  json r;
  r["command"] = o.command;
  json in = base_inputs(o, doc, b, d.name);
  LocalFunctional c;
  if (!o.casimir.empty()) {
    c = from_flag("--casimir", [&] { return parse_functional(o.casimir, doc); });
  } else {
    c = functional_named(doc, "C");
  }
  in["casimir"] = "int(" + c.density.to_string() + ")";
  r["inputs"] = in;
  if (!b.skew()) return skew_failure(std::move(r), b);
  const CasimirReport rep = casimir_check(b, c);
  r["verdict"] = rep.casimir ? "pass" : "fail";
  r["residual"] = rep.residual.to_string();
  return {rep.casimir ? kExitPass : kExitFail, std::move(r), {}};
}

Result bracket_cmd(const Options& o, const DslDocument& doc) {
  const auto& d = op_declaration(o, doc);
  const BracketStructure b = doc.bracket(d.name);
  json r;
  r["command"] = o.command;
  json in = base_inputs(o, doc, b, d.name);
  const LocalFunctional f = functional_named(doc, "F");
  const LocalFunctional g = functional_named(doc, "G");
  in["F"] = "int(" + f.density.to_string() + ")";
  in["G"] = "int(" + g.density.to_string() + ")";
  r["inputs"] = in;
  if (!b.skew()) return skew_failure(std::move(r), b);
  const LocalFunctional fg = bracket_density(b, f, g);
  const LocalFunctional gf = bracket_density(b, g, f);
  const bool antisymmetric = equal_mod_div(fg.density + gf.density, JetExpr(0L));
  r["verdict"] = antisymmetric ? "pass" : "fail";
  r["bracket"] = "int(" + fg.density.to_string() + ")";
  r["antisymmetric"] = antisymmetric;
  return {antisymmetric ? kExitPass : kExitFail, std::move(r), {}};
}

std::string default_profile(Equation eq) {
  switch (eq) {
    case Equation::KdV: return "cos(x)";
    case Equation::Burgers: return "sin(x)";
    case Equation::CamassaHolm: return "1 + 0.3*cos(x)";
  }
  return "cos(x)";
}

Result simulate_cmd(const Options& o) {
  const auto eq = parse_equation(o.equation);
  if (!eq) throw Error("unknown equation '" + o.equation + "'; expected kdv, burgers or ch");
  const double dt = o.dt.value_or(1e-4);
  const double horizon = o.horizon.value_or(1.0);
  if (!(dt > 0.0) || !(horizon > 0.0)) throw Error("--dt and --T must be positive");
  const std::string profile = o.u0.empty() ? default_profile(*eq) : o.u0;
  const GridState u0 = from_flag("--u0", [&] { return parse_profile(profile, o.n, o.dealias); });

  SimulationOptions so;
  so.snapshot_stride = o.snapshots.empty() ? 0 : (o.snapshot_stride ? o.snapshot_stride : 100);
  const SimulationResult res = simulate(*eq, u0, dt, horizon, so);

  json r;
  r["command"] = o.command;
  r["inputs"] = {{"equation", std::string(equation_name(*eq))}, {"N", o.n}, {"dt", dt}, {"T", horizon},
                 {"u0", profile}, {"dealias", o.dealias}};
  r["verdict"] = res.blew_up ? "fail" : "pass";
  const auto& m = res.monitors;
  json drifts;
  drifts["H"] = MonitorSeries::relative_drift(m.energy);
  drifts["I1"] = MonitorSeries::absolute_drift(m.mass);
  drifts["I2"] = MonitorSeries::relative_drift(m.l2);
  if (m.has_sqrt_casimir) drifts["sqrtCasimir"] = MonitorSeries::relative_drift(m.sqrt_casimir);
  r["drifts"] = drifts;
  r["steps"] = m.t.empty() ? 0 : m.t.size() - 1;
  if (res.blew_up) r["last_valid_time"] = res.last_valid_time;

  Result out{res.blew_up ? kExitFail : kExitPass, std::move(r), res.monitors_csv()};
  if (!o.monitors.empty()) write_file(o.monitors, out.csv);
  if (!o.snapshots.empty()) write_file(o.snapshots, res.snapshots_json());
  return out;
}

Result rigid_body_cmd(const Options& o) {
  const double dt = o.dt.value_or(1e-3);
  const double horizon = o.horizon.value_or(10.0);
  if (!(dt > 0.0) || !(horizon > 0.0)) throw Error("--dt and --T must be positive");
  for (double i : o.inertia)
    if (!(i > 0.0)) throw Error("moments of inertia must be positive");
  const RigidBodyTrajectory traj = simulate_rigid_body({o.m0, o.inertia}, dt, horizon);
  json r;
  r["command"] = o.command;
  r["inputs"] = {{"inertia", o.inertia}, {"m0", o.m0}, {"dt", dt}, {"T", horizon}};
  r["verdict"] = "pass";
  r["drifts"] = {{"H", traj.energy_drift()}, {"C", traj.casimir_drift()}};
  r["final_m"] = traj.m.back();
  r["steps"] = traj.t.size() - 1;
  Result out{kExitPass, std::move(r), traj.to_csv()};
  if (!o.monitors.empty()) write_file(o.monitors, out.csv);
  return out;
}

using Handler = std::function<Result(const Options&, const DslDocument&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"check-skew", check_skew},
      {"check-jacobi", check_jacobi},
      {"derive", derive},
      {"check-casimir", check_casimir},
      {"bracket", bracket_cmd},
      {"simulate", [](const Options& o, const DslDocument&) { return simulate_cmd(o); }},
      {"rigid-body", [](const Options& o, const DslDocument&) { return rigid_body_cmd(o); }},
  };
  return h;
}

bool needs_document(const std::string& command) { return command != "simulate" && command != "rigid-body"; }

json error_report(const Options& o, const std::string& kind, const std::string& message) {
  json r;
  r["command"] = o.command;
  r["verdict"] = "error";
  r["error"] = {{"kind", kind}, {"message", message}};
  return r;
}

}  // namespace

std::vector<std::string> commands() {
  return {"check-skew", "check-jacobi", "derive", "check-casimir", "bracket", "simulate", "rigid-body"};
}

Result run_command(const Options& options, const DslDocument& doc) {
  const auto it = handlers().find(options.command);
  if (it == handlers().end()) throw Error("unknown command '" + options.command + "'");
  const auto start = Clock::now();
  Result res = it->second(options, doc);
  res.report["timings"] = {{"total_ms", ms_since(start)}};
  return res;
}

Result run(const Options& options) {
  const auto start = Clock::now();
  try {
    if (options.format != "json" && options.format != "csv")
      throw Error("unknown format '" + options.format + "'; expected json or csv");
    if (!handlers().count(options.command)) throw Error("unknown command '" + options.command + "'");
    DslDocument doc;
    if (needs_document(options.command)) {
      if (options.file.empty()) throw Error(options.command + " needs a .ham document");
      doc = parse_document(read_file(options.file));
    } else if (!options.file.empty()) {
      doc = parse_document(read_file(options.file));
    }
    Result res = run_command(options, doc);
    res.report["timings"]["wall_ms"] = ms_since(start);
    return res;
  } catch (const ParseError& e) {
    json r = error_report(options, "parse", e.what());
    r["error"]["line"] = e.line();
    r["error"]["column"] = e.column();
    return {kExitError, std::move(r), {}};
  } catch (const SolverError& e) {
    json r = error_report(options, "solver", e.what());
    r["error"]["step"] = e.step();
    r["error"]["residual"] = e.residual();
    return {kExitError, std::move(r), {}};
  } catch (const Error& e) {
    return {kExitError, error_report(options, "error", e.what()), {}};
  } catch (const std::exception& e) {
    return {kExitError, error_report(options, "internal", e.what()), {}};
  }
}

std::string render(const Options& options, const Result& result) {
  if (options.format == "csv" && result.exit_code != kExitError) {
    if (!result.csv.empty()) return result.csv;
    const auto& r = result.report;
    std::ostringstream os;
    os << "command,verdict,residual\n"
       << r.value("command", "") << ',' << r.value("verdict", "") << ",\"" << r.value("residual", "") << "\"\n";
    return os.str();
  }
  return result.report.dump(2) + "\n";
}

}  // namespace hamcheck::cli
