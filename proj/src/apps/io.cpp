#include "sburgers/apps/io.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace sburgers {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw Error("failed writing " + path);
}

}  // namespace

bool Summary::all_passed() const {
  for (const auto& [name, ok] : checks) {
    if (!ok) return false;
  }
  return true;
}

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void export_field_csv(const Field& field, const std::string& path) {
  std::ofstream out = open_output(path);
  const Grid& g = field.grid();
  std::string line;
  out << "t,x,value\n";
  for (Index n = 0; n <= g.nt(); ++n) {
    const std::string t = format_real(g.t(n));
    for (Index i = 0; i < g.nx(); ++i) {
      line = t;
      line += ',';
      line += format_real(g.x(i));
      line += ',';
      line += format_real(field(n, i));
      line += '\n';
      out << line;
    }
  }
  close_output(out, path);
}

void export_series_csv(const std::vector<std::pair<std::string, Eigen::VectorXd>>& columns, const std::string& path) {
  if (columns.empty()) throw SizingError("series export: no columns for " + path);
  const Index rows = columns.front().second.size();
  for (const auto& [name, v] : columns) {
    if (v.size() != rows) throw SizingError("series export: column '" + name + "' has a different length");
  }
  std::ofstream out = open_output(path);
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].first;
  out << '\n';
  for (Index r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_real(columns[c].second[r]);
    out << '\n';
  }
  close_output(out, path);
}

void export_summary_json(const Summary& summary, const std::string& path) {
  nlohmann::json j = nlohmann::json::object();
  std::set<std::string> names;
  auto claim = [&](const std::string& key) {
    if (!names.insert(key).second) throw ConfigurationError("summary: duplicate key " + key);
  };
  claim("application");
  claim("all_passed");
  j["application"] = summary.application;
  j["all_passed"] = summary.all_passed();
  for (const auto& [name, ok] : summary.checks) {
    claim(name + ".passed");
    j[name + ".passed"] = ok;
  }
  for (const auto& [name, value] : summary.scalars) {
    claim(name);
    j[name] = value;
  }
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  close_output(out, path);
}

std::string gnuplot_script(const std::vector<std::string>& field_csvs, const std::vector<std::string>& series_csvs) {
  std::string s = "set datafile separator ','\nset key autotitle columnhead\n";
  for (const auto& f : field_csvs) {
    s += "set title '" + f + "'\nset xlabel 't'\nset ylabel 'x'\nsplot '" + f + "' using 1:2:3 with points pt 7 ps 0.3\npause -1\n";
  }
  for (const auto& f : series_csvs) {
    s += "set title '" + f + "'\nunset xlabel\nplot for [col=2:*] '" + f + "' using 1:col with lines\npause -1\n";
  }
  return s;
}

}  // namespace sburgers
