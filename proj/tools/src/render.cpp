#include "render.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace frogcrit::cli {
namespace {

std::string plain_cell(const Cell &cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "-"; }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const { return fmt::format("{:.6f}", v); }
    std::string operator()(const std::string &v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

std::string exact_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string csv_cell(const Cell &cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const { return exact_double(v); }
    std::string operator()(const std::string &v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

std::string json_string(const std::string &s) {
  std::string r = "\"";
  for (const char ch : s) {
    if (ch == '"' || ch == '\\')
      r += '\\';
    r += ch;
  }
  return r + '"';
}

std::string json_cell(const Cell &cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const {
      return std::isfinite(v) ? exact_double(v) : "null";
    }
    std::string operator()(const std::string &v) const { return json_string(v); }
  };
  return std::visit(Visitor{}, cell);
}

void render_plain(const Table &t, std::ostream &out) {
  for (const auto &[name, value] : t.context)
    out << name << ": " << plain_cell(value) << '\n';
  std::vector<std::size_t> width(t.columns.size());
  std::vector<std::vector<std::string>> text;
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    width[j] = t.columns[j].size();
  for (const auto &row : t.rows) {
    auto &line = text.emplace_back();
    for (std::size_t j = 0; j < row.size(); ++j) {
      line.push_back(plain_cell(row[j]));
      width[j] = std::max(width[j], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string> &cells) {
    std::string line;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j)
        line += "  ";
      line += fmt::format("{:>{}}", cells[j], width[j]);
    }
    out << line << '\n';
  };
  emit(t.columns);
  for (const auto &line : text)
    emit(line);
}

void render_csv(const Table &t, std::ostream &out) {
  std::string header = "schema";
  for (const auto &[name, value] : t.context)
    header += "," + name;
  for (const auto &col : t.columns)
    header += "," + col;
  out << header << '\n';
  for (const auto &row : t.rows) {
    std::string line = t.schema;
    for (const auto &[name, value] : t.context)
      line += "," + csv_cell(value);
    for (const auto &cell : row)
      line += "," + csv_cell(cell);
    out << line << '\n';
  }
}

void render_jsonl(const Table &t, std::ostream &out) {
  for (const auto &row : t.rows) {
    std::string line = "{\"schema\":" + json_string(t.schema);
    for (const auto &[name, value] : t.context)
      line += "," + json_string(name) + ":" + json_cell(value);
    for (std::size_t j = 0; j < row.size(); ++j)
      line += "," + json_string(t.columns[j]) + ":" + json_cell(row[j]);
    out << line << "}\n";
  }
}

} // namespace

void render(const Table &table, OutputFormat format, std::ostream &out) {
  switch (format) {
  case OutputFormat::PlainTable:
    render_plain(table, out);
    break;
  case OutputFormat::CSV:
    render_csv(table, out);
    break;
  case OutputFormat::JSONLines:
    render_jsonl(table, out);
    break;
  }
}

} // namespace frogcrit::cli
