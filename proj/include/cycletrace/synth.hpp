#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cycletrace/wcd.hpp"

namespace cycletrace::synth {

/// One injected circular-trading ring: `size` dealers trading goods around a
/// cycle `rounds` times, each edge valued base_value +/- jitter.
struct RingSpec {
  std::size_t size = 3;
  Money base_value = Money::from_rupees(100000);
  Money jitter;
  std::size_t rounds = 1;
};

struct SynthConfig {
  std::size_t dealers = 50;
  std::size_t legit_edges = 200;
  std::vector<RingSpec> rings;
  std::uint64_t seed = 1;
  /// Legitimate traffic forms a DAG and never flows into a ring member, so
  /// the only cycles are the injected ones.
  bool isolate_rings = true;
  Money legit_min = Money::from_rupees(100);
  Money legit_max = Money::from_rupees(50000);
  Timestamp start = Timestamp::from_civil(2015, 1, 1, 0, 0, 0);
};

/// Benchmark template: 200 dealers, ten rings of sizes 2..8 valued
/// ₹1,00,000 +/- ₹1,000, one round each.
SynthConfig default_bench_config();

/// Throws Error{invalid_config}.
void validate(const SynthConfig& config);

SynthConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const SynthConfig& config);

struct Label {
  EdgeKey key;
  std::string label;  // "legit" or "ring:<index>"
};

struct SynthLedger {
  std::vector<Transaction> transactions;  // chronological, serials 1..n
  std::vector<Label> labels;              // same order as transactions
};

/// Deterministic in config.seed.
SynthLedger generate(const SynthConfig& config);

/// labels.csv sidecar: seller_id,buyer_id,time,label
std::string labels_csv(const std::vector<Label>& labels);

struct DetectionScore {
  double precision = 0.0;  // NaN-free: 0 when nothing was flagged
  double recall = 0.0;
  std::size_t flagged = 0;
  std::size_t ring_edges = 0;
};

/// Edges touched by any removal count as flagged ring edges.
DetectionScore score_detection(std::span<const RemovalRecord> removals, const std::vector<Label>& labels);

struct BenchRow {
  std::size_t edges = 0;
  std::size_t run = 0;
  double seconds = 0.0;
};

struct BenchTable {
  std::vector<BenchRow> rows;
  /// (edges, median seconds) per requested size, in request order.
  std::vector<std::pair<std::size_t, double>> medians;
};

/// For each size, tops the template up with legitimate edges so the ledger
/// has `size` transactions, then times run_wcd `repetitions` times.
BenchTable bench(const std::vector<std::size_t>& sizes, const SynthConfig& config_template,
                 std::size_t repetitions);

/// Least-squares slope of log(seconds) against log(edges).
double loglog_slope(const std::vector<std::pair<std::size_t, double>>& points);

/// bench.csv: edges,run,seconds
std::string bench_csv(const BenchTable& table);
/// Scatter of all runs with a line through the medians.
std::string bench_svg(const BenchTable& table);

}  // namespace cycletrace::synth
