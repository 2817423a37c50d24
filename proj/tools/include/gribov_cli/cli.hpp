#pragma once

// gribov-lab: argument parsing, command dispatch and report emission.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gribov/coefficients.hpp"
#include "gribov/error.hpp"
#include "gribov/quadrature.hpp"
#include "gribov/serialize.hpp"
#include "gribov/spectra.hpp"

namespace gribov::cli {

inline constexpr const char* kDefaultFamily = "gribov:mu=1+0i,lambda=0.05+0i";

enum class Command { Spectrum, Bounds, Properties, Quadrature, Trajectory, Gram, VerifyAll };
enum class Format { Json, Csv };

std::string_view to_string(Command c) noexcept;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  std::optional<double> tol;        // cross-check / solver tolerance
  std::optional<double> slack;      // localization slack
  std::optional<double> threshold;  // defect / Gram / residual threshold
};

struct RunConfig {
  Command command = Command::Spectrum;
  std::string family_spec = kDefaultFamily;
  CoefficientFamily family = CoefficientFamily::gribov(1.0, 0.05);
  int n = 10;
  std::optional<std::pair<int, int>> n_range;
  std::vector<int> k{1};
  std::optional<std::string> output;
  Format format = Format::Json;
  SpectrumMethod method = SpectrumMethod::DenseOracle;
  Tolerances tolerances;
  int order = 0;  // 0: every order the size allows, up to 8
  MeasureConstruction construction = MeasureConstruction::EigenvectorSquares;
  std::optional<int> M;
  int threads = 1;
  /// Set when --help was requested; run() prints it and returns 0.
  std::optional<std::string> help;
};

/// args excludes the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// A command result: the JSON document, an optional CSV rendering, and
/// whether every verification in it passed.
struct Report {
  Json json;
  std::string csv;
  bool pass = true;
};

Report run_command(const RunConfig& config);

/// Deterministic text of the report in the given format. A null document
/// renders as an empty object.
std::string emit_report(const Report& report, Format format);

/// Runs the command and writes the report to config.output or out. Errors
/// go to err as a JSON object. Returns 0 (pass), 1 (verification failed),
/// 2 (usage) or 3 (numerical or I/O failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors mapped to exit code 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code(ErrorKind kind) noexcept;

}  // namespace gribov::cli
