#include "cycletrace/io.hpp"

#include <sstream>

namespace cycletrace::io {

namespace {

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_dot(const MultiGraph& g, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph " << quoted(graph_name) << " {\n";
  for (const auto& v : g.vertices()) out << "  " << quoted(v.str()) << ";\n";
  for (const auto& e : g.edges()) {
    out << "  " << quoted(e.seller.str()) << " -> " << quoted(e.buyer.str())
        << " [label=" << quoted("₹" + to_rupee_string(e.value) + "@" + e.time.iso()) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const PairTotals& totals, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph " << quoted(graph_name) << " {\n";
  for (const auto& [pair, total] : totals) {
    out << "  " << quoted(pair.first.str()) << " -> " << quoted(pair.second.str())
        << " [label=" << quoted(format_inr(total)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json to_json(const EdgeKey& key) {
  return Json{{"seller", key.seller.str()}, {"buyer", key.buyer.str()}, {"time", key.time.iso()}};
}

EdgeKey edge_key_from_json(const Json& j) {
  const auto time = Timestamp::parse(j.at("time").get<std::string>());
  if (!time) throw Error(Errc::malformed_row, "bad time in edge key");
  return {DealerId(j.at("seller").get<std::string>()), DealerId(j.at("buyer").get<std::string>()), *time};
}

Json to_json(const RemovalRecord& r) {
  Json edges = Json::array();
  for (const auto& k : r.edges) edges.push_back(to_json(k));
  Json residuals = Json::array();
  for (std::size_t i = 0; i < r.before.size(); ++i) {
    residuals.push_back({{"before_paise", r.before[i].paise()}, {"after_paise", r.after[i].paise()}});
  }
  return Json{{"iteration", r.iteration},
              {"edges", std::move(edges)},
              {"subtracted_paise", r.subtracted.paise()},
              {"phi_paise", r.phi.paise()},
              {"residuals", std::move(residuals)}};
}

RemovalRecord removal_from_json(const Json& j) {
  RemovalRecord r;
  r.iteration = j.at("iteration").get<std::size_t>();
  for (const auto& k : j.at("edges")) r.edges.push_back(edge_key_from_json(k));
  r.subtracted = Money::from_paise(j.at("subtracted_paise").get<std::int64_t>());
  r.phi = Money::from_paise(j.at("phi_paise").get<std::int64_t>());
  for (const auto& res : j.at("residuals")) {
    r.before.push_back(Money::from_paise(res.at("before_paise").get<std::int64_t>()));
    r.after.push_back(Money::from_paise(res.at("after_paise").get<std::int64_t>()));
  }
  if (r.before.size() != r.edges.size()) throw Error(Errc::malformed_row, "residuals/edges length mismatch");
  return r;
}

std::string to_jsonl(std::span<const RemovalRecord> removals) {
  std::string out;
  for (const auto& r : removals) out += to_json(r).dump() + '\n';
  return out;
}

std::vector<RemovalRecord> parse_removals(std::istream& in) {
  std::vector<RemovalRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(removal_from_json(Json::parse(line)));
  }
  return out;
}

Json to_json(const WcdStats& stats) {
  return Json{{"edges_in", stats.edges_in},
              {"edges_surviving", stats.edges_surviving},
              {"cycles_cancelled", stats.cycles_cancelled},
              {"total_paise_cancelled", stats.total_cancelled.paise()}};
}

}  // namespace cycletrace::io
