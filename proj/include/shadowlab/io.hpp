#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "shadowlab/hypergraph.hpp"

namespace shadowlab {

/// Edge-list documents: a header "r n", then one edge per line as r
/// space-separated 0-based vertices. '#' starts a comment; blank lines are
/// skipped. Errors are ParseError with 1-based line and column.
Hypergraph parse_edge_list(std::string_view text);

/// Header plus edges in storage order, one per line, vertices ascending.
std::string serialize_edge_list(const Hypergraph& h);

std::string read_file(const std::filesystem::path& path);
Hypergraph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const std::filesystem::path& path, const Hypergraph& h);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace shadowlab
