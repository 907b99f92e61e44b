#include <ostream>

#include <CLI11.hpp>

#include "wchaos/expcli.hpp"

namespace wchaos::expcli {

namespace {

void print_list(std::ostream& out) {
  for (const ExperimentInfo& e : experiments()) {
    out << e.name << "\n  " << e.summary << "\n";
    for (const ParamSpec& p : e.params) {
      out << "    --" << p.name << " <" << to_string(p.type) << "> (default " << p.default_value
          << ")  " << p.help << "\n";
    }
  }
}

void print_summary(const RunSummary& s, std::ostream& out) {
  for (const Estimate& e : s.estimates) {
    out << e.name << " = " << format_real(e.value) << " +- " << format_real(e.std_error) << "\n";
  }
  for (const Check& c : s.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  for (const auto& p : s.outputs) out << "wrote " << p.generic_string() << "\n";
  out << s.experiment << ": " << (s.pass ? "pass" : "fail") << "\n";
}

}  // namespace

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on strong and weak chaos", "wchaos"};
  app.require_subcommand(1, 1);

  std::string config_file;
  CLI::App* run = app.add_subcommand("run", "Run one experiment and write CSV and JSON results");
  run->add_option("--config", config_file, "key=value file applied before the flags");
  run->allow_extras();
  run->footer(
      "Further flags: --experiment <name> (required), --seed <u64> (default 42),\n"
      "--out <dir> (default results), and --<key> <value> for any parameter\n"
      "listed by `wchaos list`.");
  CLI::App* list = app.add_subcommand("list", "List experiments and their parameters");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitUsage;
  }

  if (list->parsed()) {
    print_list(out);
    return kExitPass;
  }

  try {
    std::optional<std::filesystem::path> file;
    if (!config_file.empty()) file = config_file;
    const std::vector<std::string> flags = run->remaining();
    const RunConfig cfg = parse_config(flags, file);
    const RunSummary summary = run_experiment(cfg);
    print_summary(summary, out);
    return summary.pass ? kExitPass : kExitFail;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitOutput;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitParameters;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace wchaos::expcli
