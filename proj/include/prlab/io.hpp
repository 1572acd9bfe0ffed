#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "prlab/error.hpp"
#include "prlab/graph.hpp"

namespace prlab {

/// Shortest decimal string that parses back to exactly `x`.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw Error(ErrorCode::kIoError, "cannot format double");
  return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError, "not a number: '" + std::string(s) + "'");
  }
  return x;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  return out;
}

}  // namespace detail

/// Edge-list text: one "i j" pair per line, 0-indexed, each undirected edge
/// once, '#' lines ignored. The vertex count is max id + 1 unless `n` is
/// given (isolated trailing vertices need it).
inline Graph read_edge_list(std::istream& in, std::size_t n = 0) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  std::size_t max_id_plus_one = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    std::istringstream fields{std::string(s)};
    long long u = -1, v = -1;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest) || u < 0 || v < 0 ||
        u > static_cast<long long>(std::numeric_limits<Vertex>::max()) ||
        v > static_cast<long long>(std::numeric_limits<Vertex>::max())) {
      throw Error(ErrorCode::kParseError, "edge list line " + std::to_string(line_no));
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(u, v) + 1);
  }
  return build_graph(n == 0 ? max_id_plus_one : n, edges);
}

inline Graph read_edge_list(const std::string& path, std::size_t n = 0) {
  auto in = detail::open_in(path);
  return read_edge_list(in, n);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n=" << g.n() << " m=" << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void write_edge_list(const std::string& path, const Graph& g) {
  auto out = detail::open_out(path);
  write_edge_list(out, g);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

/// One value per line; blank and '#' lines ignored.
inline std::vector<double> read_values(std::istream& in) {
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    out.push_back(parse_double(s));
  }
  return out;
}

inline std::vector<double> read_values(const std::string& path) {
  auto in = detail::open_in(path);
  return read_values(in);
}

inline void write_values(std::ostream& out, std::span<const double> values) {
  for (double x : values) out << format_double(x) << '\n';
}

inline void write_values(const std::string& path, std::span<const double> values) {
  auto out = detail::open_out(path);
  write_values(out, values);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path);
}

/// Imported probability vectors must be nonnegative and sum to one within
/// 1e-9; they are then renormalized.
inline constexpr double kImportSumTolerance = 1e-9;

inline ProbabilityVector read_probability_vector(std::istream& in) {
  return ProbabilityVector::renormalized(read_values(in), kImportSumTolerance);
}

inline ProbabilityVector read_probability_vector(const std::string& path) {
  auto in = detail::open_in(path);
  return read_probability_vector(in);
}

}  // namespace prlab
