#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lrmr/instances.hpp"

namespace lrmr {

// Graph text: "n m" then m lines "u v w". Set cover text: "n m" then n
// lines "w k e_1 ... e_k". Weights are "p" or "p/q"; '#' starts a comment.

std::string to_text(const Graph& g);
std::string to_text(const SetCoverInstance& inst);

Graph parse_graph(std::string_view text);
SetCoverInstance parse_set_cover(std::string_view text);

Graph load_graph(const std::filesystem::path& path);
SetCoverInstance load_set_cover(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const std::string& text);

/// 16 hex digits of FNV-1a over the canonical text.
std::string digest(std::string_view canonical_text);

}  // namespace lrmr
