// hamcheck: Hamiltonian-structure checks and conservative integrators from the command line.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hamcheck/cli.hpp"

int main(int argc, char** argv) {
  namespace hc = hamcheck::cli;
  hc::Options o;

  CLI::App app{"Verify Poisson brackets, derive Hamiltonian evolution equations, integrate them."};
  app.add_option("command", o.command, "check-skew | check-jacobi | derive | check-casimir | bracket | simulate | rigid-body")
      ->required()
      ->check(CLI::IsMember(hc::commands()));
  app.add_option("file", o.file, ".ham document");
  app.add_option("--out", o.out, "Write the report here instead of stdout");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--op", o.op, "Operator name (default: first op)");
  app.add_option("--subst", o.subst, "Substitution such as \"m -> u - u_xx\" (repeatable)");
  app.add_option("--casimir", o.casimir, "Casimir candidate, e.g. \"int(u)\"");
  app.add_option("--grad", o.grad, "Gradient of H, overriding the document");
  app.add_flag("--parallel", o.parallel, "Evaluate cyclic Jacobi terms concurrently");
  app.add_option("--equation", o.equation, "kdv | burgers | ch");
  app.add_option("--N", o.n, "Grid size (power of two, >= 16)");
  app.add_option("--dt", o.dt, "Time step");
  app.add_option("--T", o.horizon, "Final time");
  app.add_option("--u0", o.u0, "Initial profile, e.g. \"1 + 0.3*cos(x)\"");
  app.add_flag("--dealias", o.dealias, "Apply the 2/3 rule to products");
  app.add_option("--monitors", o.monitors, "CSV file for the monitor series");
  app.add_option("--snapshots", o.snapshots, "JSON file for state snapshots");
  app.add_option("--snapshot-stride", o.snapshot_stride, "Steps between snapshots");
  app.add_option("--inertia", o.inertia, "Principal moments I1 I2 I3")->delimiter(',');
  app.add_option("--m0", o.m0, "Initial momentum m1 m2 m3")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hc::kExitError;
  }

  const hc::Result res = hc::run(o);
  const std::string text = hc::render(o, res);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) {
      std::cerr << "hamcheck: cannot write '" << o.out << "'\n";
      return hc::kExitError;
    }
    out << text;
  }
  if (res.exit_code == hc::kExitError) std::cerr << "hamcheck: " << res.report["error"]["message"].get<std::string>() << "\n";
  return res.exit_code;
}
