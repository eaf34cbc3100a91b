#include "adacur/bench/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "adacur/errors.hpp"

namespace adacur::bench {
namespace {

[[noreturn]] void fail(Index line, const std::string& what) {
  throw InvalidInput("line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& tok, Index line) {
  const std::string t = trim(tok);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) fail(line, "cannot parse number '" + t + "'");
  if (!std::isfinite(v)) fail(line, "non-finite value '" + t + "'");
  return v;
}

Index parse_index(const std::string& tok, Index line) {
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "cannot parse integer '" + tok + "'");
  return v;
}

void check_cap(Index rows, Index cols, Index cap) {
  if (rows > cap || cols > cap) {
    throw ArgumentError("matrix is " + std::to_string(rows) + " x " + std::to_string(cols) + ", above the dimension cap " +
                        std::to_string(cap));
  }
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

}  // namespace

Matrix read_matrix_market(std::istream& in, Index cap) {
  std::string line;
  Index lineno = 1;
  if (!std::getline(in, line)) fail(lineno, "empty input");
  const auto banner = tokens(lower(line));
  if (banner.size() != 5 || banner[0] != "%%matrixmarket" || banner[1] != "matrix") {
    fail(lineno, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  }
  const bool coordinate = banner[2] == "coordinate";
  if (!coordinate && banner[2] != "array") fail(lineno, "unsupported format '" + banner[2] + "'");
  if (banner[3] != "real" && banner[3] != "integer" && banner[3] != "double") {
    fail(lineno, "unsupported field '" + banner[3] + "'");
  }
  const bool symmetric = banner[4] == "symmetric";
  if (!symmetric && banner[4] != "general") fail(lineno, "unsupported symmetry '" + banner[4] + "'");

  // Skip comments and blank lines up to the size line.
  std::vector<std::string> size;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    size = tokens(t);
    break;
  }
  if (size.size() != (coordinate ? 3u : 2u)) fail(lineno, "malformed size line");
  const Index rows = parse_index(size[0], lineno);
  const Index cols = parse_index(size[1], lineno);
  if (rows == 0 || cols == 0) fail(lineno, "matrix dimensions must be positive");
  check_cap(rows, cols, cap);
  if (symmetric && rows != cols) fail(lineno, "symmetric matrix must be square");
  const Index expected = coordinate ? parse_index(size[2], lineno) : (symmetric ? rows * (rows + 1) / 2 : rows * cols);

  Matrix a(rows, cols);
  Index seen = 0;
  Index col = 0, row = 0;  // array cursor, column-major
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    if (seen == expected) fail(lineno, "more entries than declared");
    const auto tok = tokens(t);
    if (coordinate) {
      if (tok.size() != 3) fail(lineno, "expected 'row col value'");
      const Index i = parse_index(tok[0], lineno);
      const Index j = parse_index(tok[1], lineno);
      if (i < 1 || i > rows || j < 1 || j > cols) fail(lineno, "entry index out of range");
      const double v = parse_real(tok[2], lineno);
      a(i - 1, j - 1) = v;
      if (symmetric) a(j - 1, i - 1) = v;
    } else {
      if (tok.size() != 1) fail(lineno, "expected one value per line");
      const double v = parse_real(tok[0], lineno);
      a(row, col) = v;
      if (symmetric) a(col, row) = v;
      if (++row == rows) {
        ++col;
        row = symmetric ? col : 0;
      }
    }
    ++seen;
  }
  if (seen != expected) {
    fail(lineno, "expected " + std::to_string(expected) + " entries, found " + std::to_string(seen));
  }
  return a;
}

Matrix read_dense_csv(std::istream& in, Index cap) {
  std::vector<double> data;
  Index cols = 0;
  Index rows = 0;
  Index lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    Index count = 0;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      data.push_back(parse_real(cell, lineno));
      ++count;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      fail(lineno, "expected " + std::to_string(cols) + " columns, found " + std::to_string(count));
    }
    ++rows;
    check_cap(rows, cols, cap);
  }
  if (rows == 0) fail(lineno, "no data rows");
  return Matrix(rows, cols, std::move(data));
}

Matrix ingest(const std::filesystem::path& path, MatrixFormat format, Index cap) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return format == MatrixFormat::matrix_market ? read_matrix_market(in, cap) : read_dense_csv(in, cap);
}

}  // namespace adacur::bench
