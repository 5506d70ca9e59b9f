#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "tempspan/temporal_graph.hpp"

namespace tempspan {

/// ".tg" text: header `n T`, then one `u v t` per line; `#` starts a comment line.
TemporalGraph parse_graph(std::istream& in);
TemporalGraph parse_graph(std::string_view text);
std::string serialize_graph(const TemporalGraph& g);

enum class SpannerFormat { Indices, Triples };

/// Triples are matched against the parent graph's edges.
Spanner parse_spanner(std::istream& in, const TemporalGraph& parent, SpannerFormat fmt);
Spanner parse_spanner(std::string_view text, const TemporalGraph& parent, SpannerFormat fmt);
std::string serialize_spanner(const Spanner& s, SpannerFormat fmt);

TemporalGraph read_graph_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace tempspan
