#include "greenfn/render.hpp"

#include <algorithm>
#include <sstream>

namespace greenfn {

std::string cell_string(const SymExpr& v) { return v.is_zero() ? "." : cyclotomic_display(v); }

TextTable text_table(const GreenTable& t) {
  TextTable out;
  for (auto& r : t.rows) out.row_labels.push_back(r.label);
  for (auto& c : t.cols) out.col_labels.push_back(c.label);
  for (auto& row : t.values) {
    std::vector<std::string> cells;
    for (auto& v : row) cells.push_back(cell_string(v));
    out.cells.push_back(cells);
  }
  return out;
}

TextTable text_table(const TwoParamTable& t) {
  TextTable out;
  out.row_labels = t.rows;
  out.col_labels = t.cols;
  for (auto& row : t.values) {
    std::vector<std::string> cells;
    for (auto& v : row) cells.push_back(cell_string(v));
    out.cells.push_back(cells);
  }
  return out;
}

namespace {

std::string rjust(const std::string& s, size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

std::string render_ascii(const TextTable& t, size_t chunk) {
  if (chunk == 0) chunk = std::max<size_t>(t.col_labels.size(), 1);
  size_t label_w = 0;
  for (auto& r : t.row_labels) label_w = std::max(label_w, r.size());
  std::string out;
  for (size_t start = 0; start < t.col_labels.size(); start += chunk) {
    size_t end = std::min(start + chunk, t.col_labels.size());
    std::vector<size_t> w;
    for (size_t c = start; c < end; ++c) {
      size_t x = t.col_labels[c].size();
      for (auto& row : t.cells) x = std::max(x, row[c].size());
      w.push_back(x);
    }
    std::string header = std::string(label_w + 1, ' ') + "|";
    for (size_t c = start; c < end; ++c) header += " " + rjust(t.col_labels[c], w[c - start]);
    if (start) out += "\n";
    out += header + "\n";
    out += std::string(label_w + 1, '_') + "|" + std::string(header.size() - label_w - 2, '_') + "\n";
    for (size_t r = 0; r < t.row_labels.size(); ++r) {
      std::string line = rjust(t.row_labels[r], label_w) + " |";
      for (size_t c = start; c < end; ++c) line += " " + rjust(t.cells[r][c], w[c - start]);
      out += line + "\n";
    }
  }
  return out;
}

std::string render_csv(const TextTable& t) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::string out = "class";
  for (auto& c : t.col_labels) out += "," + quote(c);
  out += "\n";
  for (size_t r = 0; r < t.row_labels.size(); ++r) {
    out += quote(t.row_labels[r]);
    for (auto& cell : t.cells[r]) out += "," + quote(cell);
    out += "\n";
  }
  return out;
}

TextTable parse_ascii(const std::string& text) {
  TextTable t;
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  size_t i = 0;
  bool first_chunk = true;
  while (i < lines.size()) {
    if (split_ws(lines[i]).empty()) {
      ++i;
      continue;
    }
    auto bar = lines[i].find('|');
    if (bar == std::string::npos) throw std::invalid_argument("table header without '|'");
    auto cols = split_ws(lines[i].substr(bar + 1));
    t.col_labels.insert(t.col_labels.end(), cols.begin(), cols.end());
    ++i;
    if (i >= lines.size() || lines[i].find_first_not_of("_|") != std::string::npos)
      throw std::invalid_argument("missing underline after table header");
    ++i;
    size_t r = 0;
    for (; i < lines.size() && !split_ws(lines[i]).empty(); ++i, ++r) {
      auto b = lines[i].find('|');
      if (b == std::string::npos) throw std::invalid_argument("table row without '|'");
      auto label = split_ws(lines[i].substr(0, b));
      auto cells = split_ws(lines[i].substr(b + 1));
      if (label.size() != 1 || cells.size() != cols.size())
        throw std::invalid_argument("malformed table row: " + lines[i]);
      if (first_chunk) {
        t.row_labels.push_back(label[0]);
        t.cells.push_back({});
      } else if (r >= t.row_labels.size() || t.row_labels[r] != label[0]) {
        throw std::invalid_argument("row labels differ between column chunks");
      }
      t.cells[r].insert(t.cells[r].end(), cells.begin(), cells.end());
    }
    if (!first_chunk && r != t.row_labels.size()) throw std::invalid_argument("row count differs between chunks");
    first_chunk = false;
  }
  return t;
}

std::vector<std::string> normalized_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    auto toks = split_ws(l);
    std::string s;
    for (size_t k = 0; k < toks.size(); ++k) s += (k ? " " : "") + toks[k];
    out.push_back(s);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::vector<CellMismatch> compare_cells(const TextTable& expected, const TextTable& actual) {
  std::vector<CellMismatch> out;
  if (expected.row_labels != actual.row_labels || expected.col_labels != actual.col_labels) {
    out.push_back({"*", "*", "same row and column labels", "different labels"});
    return out;
  }
  for (size_t r = 0; r < expected.row_labels.size(); ++r)
    for (size_t c = 0; c < expected.col_labels.size(); ++c)
      if (expected.cells[r][c] != actual.cells[r][c])
        out.push_back({expected.row_labels[r], expected.col_labels[c], expected.cells[r][c], actual.cells[r][c]});
  return out;
}

}  // namespace greenfn
