#include "tempspan/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace tempspan {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits a line into integer fields; throws ParseError on anything else.
std::vector<long long> fields(std::string_view line, std::size_t lineno) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    long long value = 0;
    const char* begin = line.data() + pos;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError(lineno, "expected an integer near '" + std::string(line.substr(pos)) + "'");
    }
    out.push_back(value);
    pos += static_cast<std::size_t>(ptr - begin);
  }
  return out;
}

// Content lines with their 1-based line numbers, comments and blanks dropped.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(lineno, std::string(t));
  }
  return out;
}

}  // namespace

TemporalGraph parse_graph(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError(0, "missing header line");
  const auto header = fields(lines[0].second, lines[0].first);
  if (header.size() != 2) throw ParseError(lines[0].first, "header must be `n T`");
  const long long n = header[0];
  const long long lifetime = header[1];
  if (n < 1) throw ParseError(lines[0].first, "vertex count must be positive");
  if (lifetime < 1) throw ParseError(lines[0].first, "lifetime must be positive");

  std::vector<TimeEdge> edges;
  edges.reserve(lines.size() - 1);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [lineno, text] = lines[k];
    const auto f = fields(text, lineno);
    if (f.size() != 3) throw ParseError(lineno, "edge line must be `u v t`");
    if (f[0] < 0 || f[0] >= n || f[1] < 0 || f[1] >= n) throw ParseError(lineno, "endpoint out of range");
    if (f[0] == f[1]) throw ParseError(lineno, "self-loop");
    if (f[2] < 1 || f[2] > lifetime) throw ParseError(lineno, "label outside [1, T]");
    edges.push_back({static_cast<VertexId>(f[0]), static_cast<VertexId>(f[1]), f[2]});
  }
  try {
    return TemporalGraph::build(static_cast<std::size_t>(n), std::move(edges));
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

TemporalGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

std::string serialize_graph(const TemporalGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.lifetime() << '\n';
  for (const TimeEdge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.t << '\n';
  return out.str();
}

Spanner parse_spanner(std::istream& in, const TemporalGraph& parent, SpannerFormat fmt) {
  std::vector<EdgeIndex> kept;
  for (const auto& [lineno, text] : content_lines(in)) {
    const auto f = fields(text, lineno);
    if (fmt == SpannerFormat::Indices) {
      if (f.size() != 1) throw ParseError(lineno, "expected one edge index");
      if (f[0] < 0 || static_cast<std::size_t>(f[0]) >= parent.edge_count()) {
        throw ParseError(lineno, "edge index out of range");
      }
      kept.push_back(static_cast<EdgeIndex>(f[0]));
    } else {
      if (f.size() != 3) throw ParseError(lineno, "expected `u v t`");
      const auto n = static_cast<long long>(parent.vertex_count());
      if (f[0] < 0 || f[0] >= n || f[1] < 0 || f[1] >= n) throw ParseError(lineno, "endpoint out of range");
      const auto idx = parent.find_edge(static_cast<VertexId>(f[0]), static_cast<VertexId>(f[1]), f[2]);
      if (!idx) throw ParseError(lineno, "time edge not in graph");
      kept.push_back(*idx);
    }
  }
  try {
    return Spanner(parent, std::span<const EdgeIndex>(kept));
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

Spanner parse_spanner(std::string_view text, const TemporalGraph& parent, SpannerFormat fmt) {
  std::istringstream in{std::string(text)};
  return parse_spanner(in, parent, fmt);
}

std::string serialize_spanner(const Spanner& s, SpannerFormat fmt) {
  std::ostringstream out;
  for (EdgeIndex i : s.indices()) {
    if (fmt == SpannerFormat::Indices) {
      out << i << '\n';
    } else {
      const TimeEdge& e = s.parent().edge(i);
      out << e.u << ' ' << e.v << ' ' << e.t << '\n';
    }
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TemporalGraph read_graph_file(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace tempspan
