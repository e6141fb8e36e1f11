#pragma once

#include "kgraph/graph.hpp"

#include <json.hpp>

#include <string>

namespace kgraph {

/// Throws InvalidInput on malformed documents.
KGraph graph_from_json(const nlohmann::json& doc);
KGraph parse_graph(const std::string& text);

nlohmann::json graph_to_json(const KGraph& g);
/// Sorted keys, two-space indent, trailing LF.
std::string serialize_graph(const KGraph& g);

/// FNV-1a 64-bit hash of serialize_graph(g), as 16 hex digits.
std::string graph_hash(const KGraph& g);

}  // namespace kgraph
