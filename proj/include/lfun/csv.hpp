// Minimal CSV emission: header row first, numbers in %.16e so reruns are bitwise identical.
#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lfun {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

class CsvWriter {
 public:
  using Cell = std::variant<double, long, std::string>;

  CsvWriter(std::ostream& out, std::initializer_list<std::string> header) : out_(out), columns_(header.size()) {
    bool first = true;
    for (const auto& h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }

  void row(const std::vector<Cell>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      std::visit([this](const auto& v) { write(v); }, cells[i]);
    }
    out_ << '\n';
  }

 private:
  void write(double v) { out_ << format_number(v); }
  void write(long v) { out_ << v; }
  void write(const std::string& v) { out_ << v; }

  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace lfun
