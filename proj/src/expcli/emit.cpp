#include <array>
#include <charconv>
#include <fstream>

#include <json.hpp>

#include "wchaos/expcli.hpp"

namespace wchaos::expcli {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw OutputError("write to " + path.string() + " failed");
}

nlohmann::ordered_json param_json(const ParamValue& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

}  // namespace

std::size_t Table::rows() const { return columns.empty() ? 0 : columns.front().values.size(); }

std::string format_real(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void emit_table(const Table& table, const std::filesystem::path& path) {
  const std::size_t rows = table.rows();
  for (const Column& c : table.columns) {
    if (c.values.size() != rows) {
      throw std::invalid_argument("emit_table: column " + c.name + " has a different length");
    }
  }
  std::string text;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j > 0) text += ',';
    text += table.columns[j].name;
  }
  text += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      if (j > 0) text += ',';
      text += format_real(table.columns[j].values[i]);
    }
    text += '\n';
  }
  std::ofstream out = open_for_write(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  finish(out, path);
}

void emit_estimates(std::span<const Estimate> estimates, const std::filesystem::path& path) {
  std::string text = "name,value,stderr\n";
  for (const Estimate& e : estimates) {
    text += e.name + ',' + format_real(e.value) + ',' + format_real(e.std_error) + '\n';
  }
  std::ofstream out = open_for_write(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  finish(out, path);
}

std::string summary_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["experiment"] = s.experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : s.config.params) params[key] = param_json(value);
  j["params"] = params;
  j["seed"] = s.config.seed;
  j["estimates"] = nlohmann::ordered_json::array();
  for (const Estimate& e : s.estimates) {
    j["estimates"].push_back({{"name", e.name}, {"value", e.value}, {"stderr", e.std_error}});
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : s.checks) {
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["pass"] = s.pass;
  j["duration_seconds"] = s.duration_seconds;
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& p : s.outputs) j["outputs"].push_back(p.generic_string());
  return j.dump(2) + "\n";
}

}  // namespace wchaos::expcli
