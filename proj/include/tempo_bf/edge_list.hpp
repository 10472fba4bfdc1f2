#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempo_bf/graph.hpp"
#include "tempo_bf/types.hpp"

namespace tempo_bf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Accepted line shapes. `automatic` takes either `u v t` or `u v w t`.
enum class EdgeListFormat { automatic, triple, konect };

/// Maps dense per-layer ids back to the tokens read from the input.
class SymbolTable {
 public:
  VertexId intern_upper(std::string_view token) { return intern(token, upper_, upper_index_); }
  VertexId intern_lower(std::string_view token) { return intern(token, lower_, lower_index_); }

  const std::string& upper_name(VertexId u) const { return upper_.at(u); }
  const std::string& lower_name(VertexId v) const { return lower_.at(v); }
  std::size_t upper_count() const noexcept { return upper_.size(); }
  std::size_t lower_count() const noexcept { return lower_.size(); }

  /// Symbol table whose tokens are the decimal ids themselves.
  static SymbolTable identity(std::size_t upper_count, std::size_t lower_count) {
    SymbolTable s;
    for (std::size_t i = 0; i < upper_count; ++i) s.intern_upper(std::to_string(i));
    for (std::size_t i = 0; i < lower_count; ++i) s.intern_lower(std::to_string(i));
    return s;
  }

 private:
  static VertexId intern(std::string_view token, std::vector<std::string>& names,
                         std::unordered_map<std::string, VertexId>& index) {
    auto [it, inserted] = index.try_emplace(std::string(token), static_cast<VertexId>(names.size()));
    if (inserted) names.emplace_back(token);
    return it->second;
  }

  std::vector<std::string> upper_, lower_;
  std::unordered_map<std::string, VertexId> upper_index_, lower_index_;
};

/// Edges in input order with their symbol table.
struct EdgeList {
  std::vector<TemporalEdge> edges;
  SymbolTable symbols;

  std::size_t upper_count() const noexcept { return symbols.upper_count(); }
  std::size_t lower_count() const noexcept { return symbols.lower_count(); }

  TemporalBipartiteGraph to_graph() const {
    return TemporalBipartiteGraph::from_edges(upper_count(), lower_count(), edges);
  }
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline Timestamp parse_timestamp(std::string_view field, std::size_t line) {
  Timestamp t = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, t);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(line, "timestamp '" + std::string(field) + "' is not a 64-bit integer");
  return t;
}

}  // namespace detail

/// Reads whitespace-separated `u v t` or KONECT `u v w t` lines (weight
/// ignored). Lines starting with '#' or '%' and blank lines are skipped.
/// Ids are assigned densely per layer in order of first appearance.
inline EdgeList load_edge_list(std::istream& in, EdgeListFormat format = EdgeListFormat::automatic) {
  EdgeList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0].front() == '#' || fields[0].front() == '%') continue;
    const std::size_t n = fields.size();
    const bool ok = format == EdgeListFormat::triple   ? n == 3
                    : format == EdgeListFormat::konect ? n == 4
                                                       : (n == 3 || n == 4);
    if (!ok) throw ParseError(line_no, "expected 3 or 4 fields, found " + std::to_string(n));
    const Timestamp t = detail::parse_timestamp(fields[n - 1], line_no);
    const VertexId u = out.symbols.intern_upper(fields[0]);
    const VertexId v = out.symbols.intern_lower(fields[1]);
    out.edges.push_back({u, v, t});
  }
  return out;
}

inline EdgeList load_edge_list_file(const std::string& path,
                                    EdgeListFormat format = EdgeListFormat::automatic) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_edge_list(in, format);
}

/// Writes `u v t` lines using the original tokens.
inline void write_edge_list(std::ostream& os, const EdgeList& list) {
  for (const auto& e : list.edges)
    os << list.symbols.upper_name(e.u) << ' ' << list.symbols.lower_name(e.v) << ' ' << e.t << '\n';
}

}  // namespace tempo_bf
