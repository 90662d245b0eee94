#include "rigidlab/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "rigidlab/errors.hpp"

namespace rigidlab::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

template <typename T>
T parse_number(std::string_view token, int line_no) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  T value{};
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty())
    throw ParseError("cannot parse number '" + std::string(token) + "'", line_no);
  return value;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) out.push_back(s.substr(start, pos - start));
  }
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string raw;
  int line_no = 0;
  Index n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (skippable(line)) continue;
    const auto tokens = split_whitespace(line);
    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "n")
        throw ParseError("expected header 'n <N>'", line_no);
      n = parse_number<Index>(tokens[1], line_no);
      if (n < 0) throw ParseError("negative vertex count", line_no);
      continue;
    }
    if (tokens.size() != 2) throw ParseError("expected an edge 'i j'", line_no);
    const Index i = parse_number<Index>(tokens[0], line_no);
    const Index j = parse_number<Index>(tokens[1], line_no);
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ParseError("edge endpoint out of range [0, " + std::to_string(n) + ")", line_no);
    if (i == j) throw ParseError("self-loop", line_no);
    edges.push_back({i, j});
  }
  if (n < 0) throw ParseError("missing header 'n <N>'", 0);
  try {
    return Graph(n, std::move(edges));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 0);
  }
}

Graph read_graph_file(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "n " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.i << ' ' << e.j << '\n';
}

void write_graph_file(const std::string& path, const Graph& g) {
  auto out = open_out(path);
  write_graph(out, g);
}

Configuration read_configuration(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (skippable(line)) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field =
          line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      row.push_back(parse_number<double>(field, line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("row has " + std::to_string(row.size()) + " coordinates, expected " +
                           std::to_string(rows.front().size()),
                       line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("configuration has no rows", 0);

  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      m(static_cast<Index>(i), static_cast<Index>(k)) = rows[i][k];
  try {
    return Configuration(std::move(m));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 0);
  }
}

Configuration read_configuration_file(const std::string& path) {
  auto in = open_in(path);
  return read_configuration(in);
}

void write_configuration(std::ostream& out, const Configuration& c) {
  std::ostringstream line;
  line << std::setprecision(std::numeric_limits<double>::max_digits10);
  const Matrix& m = c.positions();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      if (k > 0) line << ',';
      line << m(i, k);
    }
    line << '\n';
  }
  out << line.str();
}

void write_configuration_file(const std::string& path, const Configuration& c) {
  auto out = open_out(path);
  write_configuration(out, c);
}

}  // namespace rigidlab::io
