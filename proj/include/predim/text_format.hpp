#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "predim/structure.hpp"

namespace predim {

/// Reads the line-based structure format:
///   universe <n>
///   semantics ordered|unordered      (optional, before any rel line)
///   rel <name> <arity> <p>/<q>
///   tup <name> <e1> ... <ek>
///   ann <element> <token...>
/// `#` starts a comment. Errors carry the offending line number.
FinStructure parse_structure(std::istream& in);
FinStructure parse_structure_text(std::string_view text);
FinStructure load_structure(const std::filesystem::path& path);

/// Deterministic: symbols in signature order, instances sorted, annotations
/// by element id.
std::string serialize_structure(const FinStructure& s);
void save_structure(const std::filesystem::path& path, const FinStructure& s);

/// `map <src> <dst>` lines. Sources must cover 0..n-1 exactly once.
ElementMap parse_map(std::istream& in);
ElementMap parse_map_text(std::string_view text);
ElementMap load_map(const std::filesystem::path& path);
std::string serialize_map(const ElementMap& map);

/// Splits on whitespace after stripping a `#` comment.
std::vector<std::string> tokenize_line(const std::string& line);

}  // namespace predim
