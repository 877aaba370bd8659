#pragma once

#include <string>
#include <vector>

#include "greenfn/greenfn.hpp"
#include "greenfn/twoparam.hpp"

namespace greenfn {

// A table of display strings; "." marks an exact zero.
struct TextTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::string>> cells;  // [row][col]
};

std::string cell_string(const SymExpr& v);

TextTable text_table(const GreenTable& t);
TextTable text_table(const TwoParamTable& t);

// Columns are emitted in chunks of at most `chunk`, separated by a blank line.
std::string render_ascii(const TextTable& t, size_t chunk = 14);
std::string render_csv(const TextTable& t);

// Inverse of render_ascii; chunks are joined back into one table.
TextTable parse_ascii(const std::string& text);

// Lines with runs of blanks collapsed and trailing blanks removed.
std::vector<std::string> normalized_lines(const std::string& text);

struct CellMismatch {
  std::string row, col, expected, actual;
};
// Strict per-cell comparison; row and column sets must agree.
std::vector<CellMismatch> compare_cells(const TextTable& expected, const TextTable& actual);

}  // namespace greenfn
