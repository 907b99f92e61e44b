#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string_view>

#include "wchaos/expcli.hpp"

namespace wchaos::expcli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  const auto ok = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  };
  return std::all_of(key.begin(), key.end(), ok) && !(key[0] >= '0' && key[0] <= '9') &&
         key[0] != '-';
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size() && std::isfinite(out);
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const std::string_view t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw UsageError("seed: expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

std::string to_string(ParamType type) {
  switch (type) {
    case ParamType::Real:
      return "real";
    case ParamType::Integer:
      return "integer";
    case ParamType::RealList:
      return "real list";
  }
  return "unknown";
}

ParamValue parse_value(ParamType type, const std::string& text, const std::string& key) {
  const auto mismatch = [&] {
    return UsageError("parameter " + key + ": expected " + to_string(type) + ", got '" + text +
                      "'");
  };
  switch (type) {
    case ParamType::Real: {
      double v = 0.0;
      if (!parse_double(text, v)) throw mismatch();
      return v;
    }
    case ParamType::Integer: {
      const std::string_view t = trim(text);
      std::int64_t v = 0;
      const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
      if (!t.empty() && res.ec == std::errc() && res.ptr == t.data() + t.size()) return v;
      double d = 0.0;
      if (!parse_double(t, d) || d != std::floor(d) || std::abs(d) > 9.0e15) throw mismatch();
      return static_cast<std::int64_t>(d);
    }
    case ParamType::RealList: {
      std::vector<double> values;
      std::string_view rest = text;
      while (true) {
        const auto comma = rest.find(',');
        double v = 0.0;
        if (!parse_double(rest.substr(0, comma), v)) throw mismatch();
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      return values;
    }
  }
  throw mismatch();
}

double RunConfig::real(const std::string& key) const { return std::get<double>(params.at(key)); }

std::int64_t RunConfig::integer(const std::string& key) const {
  return std::get<std::int64_t>(params.at(key));
}

const std::vector<double>& RunConfig::list(const std::string& key) const {
  return std::get<std::vector<double>>(params.at(key));
}

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read config file " + file.string());
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string_view key = eq == std::string_view::npos ? body : trim(body.substr(0, eq));
    const std::string_view value =
        eq == std::string_view::npos ? std::string_view{} : trim(body.substr(eq + 1));
    if (eq == std::string_view::npos || !valid_key(key) || value.empty()) {
      throw UsageError(file.string() + ":" + std::to_string(number) +
                       ": expected key=value, got '" + line + "'");
    }
    entries.emplace_back(std::string(key), std::string(value));
  }
  return entries;
}

RunConfig parse_config(std::span<const std::string> args,
                       const std::optional<std::filesystem::path>& file) {
  std::vector<std::pair<std::string, std::string>> merged;
  if (file) merged = read_config_file(*file);

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token.size() < 3 || token.compare(0, 2, "--") != 0) {
      throw UsageError("unexpected argument '" + token + "'");
    }
    const auto eq = token.find('=');
    std::string key = token.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
    std::string value;
    if (eq != std::string::npos) {
      value = token.substr(eq + 1);
    } else {
      if (i + 1 >= args.size()) throw UsageError("flag --" + key + " needs a value");
      value = args[++i];
    }
    if (!valid_key(key)) throw UsageError("malformed flag '" + token + "'");
    merged.emplace_back(std::move(key), std::move(value));
  }

  RunConfig cfg;
  for (const auto& [key, value] : merged) {
    if (key == "experiment") cfg.experiment = value;
  }
  if (cfg.experiment.empty()) throw UsageError("no experiment given (use --experiment <name>)");
  const ExperimentInfo& info = find_experiment(cfg.experiment);

  for (const ParamSpec& spec : info.params) {
    cfg.params[spec.name] = parse_value(spec.type, spec.default_value, spec.name);
  }
  for (const auto& [key, value] : merged) {
    if (key == "experiment") continue;
    if (key == "seed") {
      cfg.seed = parse_seed(value);
      continue;
    }
    if (key == "out") {
      cfg.output_dir = value;
      continue;
    }
    const auto spec = std::find_if(info.params.begin(), info.params.end(),
                                   [&](const ParamSpec& p) { return p.name == key; });
    if (spec == info.params.end()) {
      throw UsageError("unknown key '" + key + "' for experiment " + info.name);
    }
    cfg.params[key] = parse_value(spec->type, value, key);
  }
  return cfg;
}

}  // namespace wchaos::expcli
