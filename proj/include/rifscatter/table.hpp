#pragma once

#include <string>
#include <vector>

namespace rif {

// Table written as CSV with '#' metadata lines before the header. Cells are
// stored pre-formatted; numeric helpers format with %.17g so values
// round-trip exactly.
struct Table {
  std::vector<std::string> meta;  // emitted verbatim after "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);
};

// Shortest round-trip decimal representation, printf %.17g.
std::string format_g17(double x);

std::string render_csv(const Table& t);
void write_csv(const Table& t, const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rif
