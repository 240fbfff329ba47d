#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hsync/hypergraph.hpp"

namespace hsync {

/// Parses the JSON hypergraph format:
///
///   {"vertices": [...],
///    "edges": [{"id": "e1", "members": [...], "delta": 9.0}, ...],
///    "vertex_weights": {"1": 1.0, ...},     optional
///    "weight_preset": "uniform"}            optional
///
/// Syntax and shape problems raise ParseError naming the line or the field.
RawHypergraph parse_hypergraph(std::string_view text);

nlohmann::ordered_json to_json(const Hypergraph& h);
std::string dump_hypergraph(const Hypergraph& h);

Hypergraph load_hypergraph(const std::filesystem::path& path);
void save_hypergraph(const Hypergraph& h, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace hsync
