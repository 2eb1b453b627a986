#include "fpeit/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fpeit/common.hpp"

namespace fpeit::csv {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& text, const std::filesystem::path& path, std::size_t line) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(path.string() + ":" + std::to_string(line) + ": not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

const std::vector<double>& Table::column(const std::string& name) const {
  const auto it = columns.find(name);
  if (it == columns.end()) throw ValidationError("missing CSV column '" + name + "'");
  return it->second;
}

std::size_t Table::rows() const { return columns.empty() ? 0 : columns.begin()->second.size(); }

Table read(const std::filesystem::path& path, const std::vector<std::string>& required) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read CSV file '" + path.string() + "'");

  Table table;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    if (line_number == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) {
      line = line.substr(3);  // UTF-8 BOM
    }
    if (table.header.empty()) {
      table.header = split(line);
      for (const auto& name : table.header) table.columns[name];
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw ValidationError(path.string() + ":" + std::to_string(line_number) + ": expected " +
                            std::to_string(table.header.size()) + " cells");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      table.columns[table.header[i]].push_back(parse_number(cells[i], path, line_number));
    }
  }
  for (const auto& name : required) {
    if (!table.columns.contains(name)) {
      throw ValidationError("CSV file '" + path.string() + "' lacks column '" + name + "'");
    }
  }
  return table;
}

std::string format(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ec == std::errc{} ? ptr : buffer);
}

Writer::Writer(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path) {
  if (!out_) throw ValidationError("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void Writer::write_cell(double value, bool& first) {
  out_ << (first ? "" : ",") << format(value);
  first = false;
}

void Writer::write_cell(long long value, bool& first) {
  out_ << (first ? "" : ",") << value;
  first = false;
}

void Writer::write_cell(const std::string& value, bool& first) {
  out_ << (first ? "" : ",") << value;
  first = false;
}

}  // namespace fpeit::csv
