#include "rifscatter/table.hpp"

#include <cstdio>
#include <fstream>

#include "rifscatter/errors.hpp"

namespace rif {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Table::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) {
    cells.push_back(format_g17(v));
  }
  add_row(cells);
}

void Table::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns.size()) {
    throw ValidationError("row width does not match the column count");
  }
  rows.push_back(cells);
}

std::string render_csv(const Table& t) {
  std::string out;
  for (const auto& line : t.meta) {
    out += "# ";
    out += line;
    out += '\n';
  }
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c > 0) {
      out += ',';
    }
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        out += ',';
      }
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw Error("cannot open " + path + " for writing");
  }
  f << content;
  if (!f) {
    throw Error("failed writing " + path);
  }
}

void write_csv(const Table& t, const std::string& path) {
  write_text_file(path, render_csv(t));
}

}  // namespace rif
