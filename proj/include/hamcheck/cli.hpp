#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamcheck/dsl.hpp"

namespace hamcheck::cli {

/// Exit codes: the process-level contract.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

struct Options {
  std::string command;
  /// .ham document; optional for simulate and rigid-body.
  std::string file;
  std::string out;
  std::string format = "json";
  std::string op;  // operator name, first op when empty
  std::vector<std::string> subst;
  std::string casimir;
  std::string grad;
  bool parallel = false;

  // simulate
  std::string equation = "kdv";
  std::size_t n = 256;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::string u0;
  bool dealias = false;
  std::string monitors;   // CSV path
  std::string snapshots;  // JSON path
  std::size_t snapshot_stride = 0;

  // rigid-body
  std::array<double, 3> inertia{1.0, 2.0, 3.0};
  std::array<double, 3> m0{1.0, 2.0, 3.0};
};

struct Result {
  int exit_code = kExitPass;
  nlohmann::ordered_json report;
  /// Filled when the command has tabular output (simulate monitors, rigid-body trajectory).
  std::string csv;
};

std::vector<std::string> commands();

/// Runs a command against an already parsed document. Library errors propagate.
Result run_command(const Options& options, const DslDocument& doc);

/// Reads the document, runs the command and converts every failure into an error report
/// with exit code 1.
Result run(const Options& options);

/// The text written to stdout or --out for the chosen --format.
std::string render(const Options& options, const Result& result);

}  // namespace hamcheck::cli
