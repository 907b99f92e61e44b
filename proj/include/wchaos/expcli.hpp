#pragma once

// Experiment runner: flat key=value configuration, named experiments over the
// numerical modules, CSV series and a JSON summary per run.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wchaos::expcli {

// --- errors, one exit code each -------------------------------------------

/// Malformed configuration, unknown key or experiment, bad flag. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed values that cannot be used together. Exit code 5.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Output directory or file cannot be written. Exit code 4.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
  kExitOutput = 4,
  kExitParameters = 5,
};

// --- configuration ----------------------------------------------------------

enum class ParamType { Real, Integer, RealList };

using ParamValue = std::variant<double, std::int64_t, std::vector<double>>;

struct ParamSpec {
  std::string name;
  ParamType type;
  std::string default_value;  // in the textual config syntax
  std::string help;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
};

/// Registered experiments in listing order.
const std::vector<ExperimentInfo>& experiments();

/// Throws UsageError for an unregistered name.
const ExperimentInfo& find_experiment(const std::string& name);

/// Parses one value of the given type. Integers accept integral real
/// notation such as 1e6; lists are comma separated. Throws UsageError.
ParamValue parse_value(ParamType type, const std::string& text, const std::string& key);

std::string to_string(ParamType type);

struct RunConfig {
  std::string experiment;
  std::map<std::string, ParamValue> params;  // every schema key, defaults applied
  std::uint64_t seed = 42;
  std::filesystem::path output_dir = "results";

  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  const std::vector<double>& list(const std::string& key) const;
};

/// Reads `key=value` lines; `#` starts a comment. Returns entries in file
/// order. Throws UsageError naming the line for anything else, or when the
/// file cannot be opened.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::filesystem::path& file);

/// Merges schema defaults <- config file <- flags. Flags are
/// `--experiment`, `--seed`, `--out` and `--<key> <value>` (or
/// `--<key>=<value>`) for experiment parameters; the file may set the same
/// keys without dashes. Throws UsageError.
RunConfig parse_config(std::span<const std::string> args,
                       const std::optional<std::filesystem::path>& file);

// --- results -------------------------------------------------------------------

struct Column {
  std::string name;
  std::vector<double> values;
};

/// Column-oriented table; every column has the same length.
struct Table {
  std::vector<Column> columns;
  std::size_t rows() const;
};

struct Estimate {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunSummary {
  std::string experiment;
  RunConfig config;
  std::vector<Estimate> estimates;
  std::vector<Check> checks;
  bool pass = false;
  double duration_seconds = 0.0;
  std::vector<std::filesystem::path> outputs;
};

/// Shortest text that reads back to the same double: 17 significant digits.
std::string format_real(double v);

/// CSV with a header row, LF line endings and format_real cells.
/// Throws OutputError on I/O failure and std::invalid_argument for ragged
/// tables.
void emit_table(const Table& table, const std::filesystem::path& path);

/// name,value,stderr rows.
void emit_estimates(std::span<const Estimate> estimates, const std::filesystem::path& path);

/// JSON summary (experiment, params, estimates, checks, pass,
/// duration_seconds, outputs, seed).
std::string summary_json(const RunSummary& summary);

/// Runs the configured experiment and writes <exp>_series.csv,
/// <exp>_estimates.csv and <exp>_summary.json into cfg.output_dir.
/// Throws ParameterError for unusable parameter combinations, OutputError
/// when the directory cannot be written, and lets numeric failures from the
/// library propagate.
RunSummary run_experiment(const RunConfig& cfg);

/// Whole command line without the program name. Returns the process exit
/// code; never throws.
int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace wchaos::expcli
