#ifndef SPEXLAB_GRAPH_IO_HPP
#define SPEXLAB_GRAPH_IO_HPP

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"

namespace spexlab {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline long long parse_index(std::string_view tok, std::size_t line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

inline double parse_weight(std::string_view tok, std::size_t line) {
  const std::string s(tok);
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) {
    throw ParseError(line, "expected a decimal weight, got '" + s + "'");
  }
  return value;
}

}  // namespace detail

/// Parses the text graph format:
///
///     # optional comments
///     n <count>
///     u v w        (0-based endpoints, one undirected edge per line)
///
/// Duplicate edge lines are summed; `u u w` is a self-loop.
inline WeightedGraph parse_graph(std::string_view text) {
  std::vector<Edge> edges;
  long long n = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) {
      if (eol == text.size()) break;
      continue;
    }
    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "n") {
        throw ParseError(line_no, "expected header 'n <count>'");
      }
      n = detail::parse_index(tokens[1], line_no);
      if (n < 0) throw ParseError(line_no, "vertex count must be nonnegative");
      if (n > (1LL << 30)) throw ParseError(line_no, "vertex count too large");
    } else {
      if (tokens.size() != 3) throw ParseError(line_no, "expected edge line 'u v w'");
      const long long u = detail::parse_index(tokens[0], line_no);
      const long long v = detail::parse_index(tokens[1], line_no);
      const double w = detail::parse_weight(tokens[2], line_no);
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw ParseError(line_no, "vertex index out of range [0, " + std::to_string(n) + ")");
      }
      if (!std::isfinite(w)) throw ParseError(line_no, "weight is not finite");
      if (w < 0.0) throw ParseError(line_no, "negative weight");
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    }
    if (eol == text.size()) break;
  }
  if (n < 0) throw ParseError(line_no, "missing header 'n <count>'");
  return WeightedGraph::from_edges(static_cast<int>(n), edges);
}

inline WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

/// Writes the graph in the text format; edges sorted by (min, max) endpoint,
/// weights with round-trip precision.
inline std::string format_graph(const WeightedGraph& g) {
  std::ostringstream out;
  out << "n " << g.size() << '\n';
  out.precision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  return out.str();
}

}  // namespace spexlab

#endif  // SPEXLAB_GRAPH_IO_HPP
