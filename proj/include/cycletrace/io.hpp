#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cycletrace/wcd.hpp"

namespace cycletrace::io {

using Json = nlohmann::ordered_json;

/// Directed graph, one edge per parallel edge, label "₹<rupees>@<iso-time>",
/// edges in key order.
std::string to_dot(const MultiGraph& g, std::string_view graph_name = "residual");

/// Condensed per-pair totals, labels in Indian digit grouping.
std::string to_dot(const PairTotals& totals, std::string_view graph_name = "aggregated");

Json to_json(const EdgeKey& key);
EdgeKey edge_key_from_json(const Json& j);

/// {"iteration", "edges", "subtracted_paise", "phi_paise", "residuals"}
Json to_json(const RemovalRecord& r);
RemovalRecord removal_from_json(const Json& j);

/// One compact JSON object per line, trailing newline after each.
std::string to_jsonl(std::span<const RemovalRecord> removals);
std::vector<RemovalRecord> parse_removals(std::istream& in);

Json to_json(const WcdStats& stats);

}  // namespace cycletrace::io
