#pragma once

#include <filesystem>
#include <map>
#include <fstream>
#include <string>
#include <vector>

namespace fpeit::csv {

// Numeric CSV table keyed by header name. Blank lines are ignored.
struct Table {
  std::vector<std::string> header;
  std::map<std::string, std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const;
};

// Throws ValidationError when the file is unreadable, a header in
// `required` is missing, or a cell is not a number.
Table read(const std::filesystem::path& path, const std::vector<std::string>& required);

// Shortest round-trip decimal representation.
std::string format(double value);

class Writer {
 public:
  Writer(const std::filesystem::path& path, const std::vector<std::string>& header);

  template <class... Values>
  void row(const Values&... values) {
    bool first = true;
    ((write_cell(values, first)), ...);
    out_ << '\n';
  }

 private:
  void write_cell(double value, bool& first);
  void write_cell(long long value, bool& first);
  void write_cell(int value, bool& first) { write_cell(static_cast<long long>(value), first); }
  void write_cell(std::size_t value, bool& first) { write_cell(static_cast<long long>(value), first); }
  void write_cell(const std::string& value, bool& first);
  void write_cell(const char* value, bool& first) { write_cell(std::string(value), first); }

  std::ofstream out_;
};

}  // namespace fpeit::csv
