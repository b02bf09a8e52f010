// cycletrace: circular-trading cycle detection over sales ledgers.
//
//   cycletrace detect LEDGER.csv --out DIR [--verify] [--dot] [--lenient]
//   cycletrace gen CONFIG.json --out DIR [--seed N]
//   cycletrace bench --sizes 500,1000 --out DIR [--reps N] [--config FILE]
//   cycletrace report RUN_DIR [--out DIR]
//   cycletrace widest-path LEDGER.csv --from X --to Y
//
// Exit codes: 0 ok, 1 parse/validation/config, 2 I/O, 3 verification mismatch.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cycletrace/io.hpp"
#include "cycletrace/synth.hpp"
#include "cycletrace/wcd.hpp"
#include "cycletrace/widest_path.hpp"
#ifdef CYCLETRACE_WITH_ORACLE
#include "cycletrace/oracle.hpp"
#endif
#include "sha256.hpp"

namespace fs = std::filesystem;
using cycletrace::io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit : int { ok = 0, invalid = 1, io_failure = 2, verify_failed = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CYCLETRACE_LOG: error | warn | info | debug (default warn).
enum class Level { error, warn, info, debug };

Level log_level() {
  static const Level level = [] {
    const char* env = std::getenv("CYCLETRACE_LOG");
    const std::string v = env ? env : "";
    if (v == "error" || v == "0") return Level::error;
    if (v == "info" || v == "2") return Level::info;
    if (v == "debug" || v == "3") return Level::debug;
    return Level::warn;
  }();
  return level;
}

void log(Level level, const std::string& msg) {
  static constexpr const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= log_level()) std::cerr << "cycletrace [" << names[static_cast<int>(level)] << "] " << msg << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buf.str();
}

// Writes through a sibling temp file and renames into place.
void write_file(const fs::path& path, std::string_view contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename into " + path.string() + ": " + ec.message());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string utc_now() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  return cycletrace::Timestamp(now).iso() + "Z";
}

struct Manifest {
  std::string command;
  std::string input;
  std::string input_digest;
  fs::path out_dir;
  Json flags = Json::object();
  std::string started_at = utc_now();
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void write() const {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    Json j{{"tool", "cycletrace"},
           {"version", kVersion},
           {"command", command},
           {"input", input},
           {"input_sha256", input_digest},
           {"output_dir", out_dir.string()},
           {"flags", flags},
           {"started_at", started_at},
           {"elapsed_seconds", elapsed.count()}};
    write_file(out_dir / "manifest.json", j.dump(2) + "\n");
  }
};

cycletrace::ParsedLedger load_ledger(const std::string& text, bool lenient) {
  auto parsed = cycletrace::parse_ledger(std::string_view(text), {cycletrace::LedgerFormat::csv, lenient});
  for (const auto& d : parsed.skipped) {
    log(Level::warn, "row " + std::to_string(d.row) + " skipped (" + std::string(cycletrace::to_string(d.code)) +
                         "): " + d.message);
  }
  return parsed;
}

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
};

int cmd_detect(const Globals& g, const std::string& input, bool verify, bool dot, bool lenient) {
  if (g.out.empty()) throw CLI::ValidationError("--out", "detect requires --out");
  Manifest manifest;
  manifest.command = "detect";
  manifest.input = input;
  manifest.out_dir = g.out;
  manifest.flags = {{"verify", verify}, {"dot", dot}, {"lenient", lenient}, {"format", g.format}};

  const std::string text = read_file(input);
  manifest.input_digest = cycletrace::tools::sha256_hex(text);
  const auto parsed = load_ledger(text, lenient);
  log(Level::info, "parsed " + std::to_string(parsed.transactions.size()) + " transactions");

  int status = Exit::ok;
  if (verify) {
#ifdef CYCLETRACE_WITH_ORACLE
    const auto report = cycletrace::oracle::verify_wcd(parsed.transactions);
    if (!report.oracle_applied) log(Level::warn, "input exceeds oracle budget; exhaustive checks skipped");
    for (const auto& m : report.mismatches) log(Level::error, "verify: " + m);
    if (!report.ok()) status = Exit::verify_failed;
    manifest.flags["oracle_applied"] = report.oracle_applied;
#else
    log(Level::error, "built without oracles; --verify unavailable");
    return Exit::invalid;
#endif
  }

  const auto result = cycletrace::run_wcd(parsed.transactions);
  const auto residual_rows = cycletrace::to_transactions(result.residual);
  const std::string residual_csv = cycletrace::serialize_ledger(residual_rows);
  const std::string removals = cycletrace::io::to_jsonl(result.removals);
  const std::string residual_dot = cycletrace::io::to_dot(result.residual);

  ensure_dir(g.out);
  const fs::path out = g.out;
  write_file(out / "residual.csv", residual_csv);
  if (dot) write_file(out / "residual.dot", residual_dot);
  write_file(out / "removals.jsonl", removals);
  write_file(out / "stats.json", cycletrace::io::to_json(result.stats).dump(2) + "\n");
  manifest.write();

  if (g.format == "csv") std::cout << residual_csv;
  else if (g.format == "jsonl") std::cout << removals;
  else if (g.format == "dot") std::cout << residual_dot;

  log(Level::info, std::to_string(result.stats.cycles_cancelled) + " cycles cancelled, " +
                       std::to_string(result.stats.edges_surviving) + " edges survive");
  return status;
}

int cmd_gen(const Globals& g, const std::string& config_path) {
  if (g.out.empty()) throw CLI::ValidationError("--out", "gen requires --out");
  const std::string text = read_file(config_path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw cycletrace::Error(cycletrace::Errc::invalid_config, e.what());
  }
  auto config = cycletrace::synth::config_from_json(j);
  if (g.seed) config.seed = *g.seed;
  const auto ledger = cycletrace::synth::generate(config);

  Manifest manifest;
  manifest.command = "gen";
  manifest.input = config_path;
  manifest.input_digest = cycletrace::tools::sha256_hex(text);
  manifest.out_dir = g.out;
  manifest.flags = {{"seed", config.seed}};

  ensure_dir(g.out);
  const fs::path out = g.out;
  write_file(out / "ledger.csv", cycletrace::serialize_ledger(ledger.transactions));
  write_file(out / "labels.csv", cycletrace::synth::labels_csv(ledger.labels));
  write_file(out / "config.json", cycletrace::synth::to_json(config).dump(2) + "\n");
  manifest.write();
  return Exit::ok;
}

int cmd_bench(const Globals& g, const std::vector<std::size_t>& sizes, std::size_t reps,
              const std::string& config_path) {
  if (g.out.empty()) throw CLI::ValidationError("--out", "bench requires --out");
  Manifest manifest;
  manifest.command = "bench";
  auto config = cycletrace::synth::default_bench_config();
  if (!config_path.empty()) {
    const std::string text = read_file(config_path);
    manifest.input = config_path;
    manifest.input_digest = cycletrace::tools::sha256_hex(text);
    try {
      config = cycletrace::synth::config_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw cycletrace::Error(cycletrace::Errc::invalid_config, e.what());
    }
  }
  if (g.seed) config.seed = *g.seed;
  manifest.out_dir = g.out;
  manifest.flags = {{"sizes", sizes}, {"reps", reps}, {"seed", config.seed}};

  const auto table = cycletrace::synth::bench(sizes, config, reps);
  ensure_dir(g.out);
  const fs::path out = g.out;
  write_file(out / "bench.csv", cycletrace::synth::bench_csv(table));
  write_file(out / "bench.svg", cycletrace::synth::bench_svg(table));
  manifest.write();

  for (const auto& [edges, median] : table.medians) {
    std::cout << edges << " edges: median " << median << " s\n";
  }
  if (table.medians.size() >= 2) {
    const double slope = cycletrace::synth::loglog_slope(table.medians);
    std::cout << "log-log slope: " << slope << '\n';
    if (slope > 3.5) log(Level::warn, "runtime growth exceeds the O((m+n) m^2 log n) envelope");
  }
  return Exit::ok;
}

int cmd_report(const Globals& g, const std::string& run_dir) {
  const fs::path dir = run_dir;
  const fs::path out = g.out.empty() ? dir : fs::path(g.out);
  const auto residual = cycletrace::parse_ledger(std::string_view(read_file(dir / "residual.csv")));
  std::istringstream removals_text(read_file(dir / "removals.jsonl"));
  const auto removals = cycletrace::io::parse_removals(removals_text);

  cycletrace::MultiGraph graph;
  for (const auto& t : residual.transactions) graph.add_edge(t);
  const auto totals = cycletrace::aggregate_pairs(graph);
  const auto residual_net = cycletrace::net_tax_position(graph);

  cycletrace::NetPositions cancelled_net;
  for (const auto& r : removals) {
    for (const auto& [dealer, net] : cycletrace::net_tax_position(r)) cancelled_net[dealer] += net;
  }
  std::map<cycletrace::DealerId, std::pair<cycletrace::SignedMoney, cycletrace::SignedMoney>> table;
  for (const auto& [d, n] : residual_net) table[d].first = n;
  for (const auto& [d, n] : cancelled_net) table[d].second = n;

  std::string net_csv = "dealer_id,residual_net_paise,cancelled_net_paise\n";
  for (const auto& [d, pair] : table) {
    net_csv += d.str() + ',' + std::to_string(pair.first.paise()) + ',' + std::to_string(pair.second.paise()) + '\n';
  }

  cycletrace::Money cancelled_total;
  for (const auto& r : removals) cancelled_total += r.subtracted * static_cast<std::int64_t>(r.edges.size());

  std::ostringstream md;
  md << "# Cycle deletion report\n\n";
  md << "- Cycles cancelled: " << removals.size() << "\n";
  md << "- Flow cancelled: " << cycletrace::format_inr(cancelled_total) << "\n";
  md << "- Residual transactions: " << residual.transactions.size() << "\n";
  md << "- Dealer pairs in residual: " << totals.size() << "\n\n";
  md << "## Residual totals per dealer pair\n\n| Seller | Buyer | Total tax |\n|---|---|---:|\n";
  for (const auto& [pair, total] : totals) {
    md << "| " << pair.first.str() << " | " << pair.second.str() << " | " << cycletrace::format_inr(total) << " |\n";
  }
  md << "\n## Net tax position per dealer\n\n| Dealer | Residual | Cancelled |\n|---|---:|---:|\n";
  for (const auto& [d, pair] : table) {
    md << "| " << d.str() << " | " << cycletrace::format_inr(pair.first) << " | "
       << cycletrace::format_inr(pair.second) << " |\n";
  }

  ensure_dir(out);
  write_file(out / "aggregated.dot", cycletrace::io::to_dot(totals));
  write_file(out / "net_tax.csv", net_csv);
  write_file(out / "summary.md", md.str());
  return Exit::ok;
}

int cmd_widest_path(const std::string& input, const std::string& from, const std::string& to, bool lenient) {
  const auto parsed = load_ledger(read_file(input), lenient);
  cycletrace::MultiGraph graph;
  for (const auto& t : parsed.transactions) graph.add_edge(t);
  const auto path = cycletrace::max_min_path(graph, cycletrace::DealerId(from), cycletrace::DealerId(to));
  Json keys = Json::array();
  if (path) {
    for (const auto& e : path->edges) keys.push_back(cycletrace::io::to_json(e.key()));
  }
  std::cout << keys.dump() << '\n';
  return Exit::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular-trading cycle detection over taxed sales ledgers"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed override (gen, bench)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Also print the primary output to stdout")
      ->check(CLI::IsMember({"csv", "jsonl", "dot"}));

  std::string input;
  bool verify = false, dot = false, lenient = false;
  auto* detect = app.add_subcommand("detect", "Cancel cycles and write residual DAG + removal ledger");
  detect->add_option("input", input, "Ledger CSV")->required();
  detect->add_flag("--verify", verify, "Cross-check against brute-force oracles");
  detect->add_flag("--dot", dot, "Also write residual.dot");
  detect->add_flag("--lenient", lenient, "Skip invalid rows instead of failing");

  std::string config_path;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic ledger with ground-truth labels");
  gen->add_option("config", config_path, "Synthetic config JSON")->required();

  std::vector<std::size_t> sizes;
  std::size_t reps = 3;
  std::string bench_config;
  auto* bench = app.add_subcommand("bench", "Time cycle deletion over ledger sizes");
  bench->add_option("--sizes", sizes, "Edge counts")->delimiter(',')->required();
  bench->add_option("--reps", reps, "Repetitions per size");
  bench->add_option("--config", bench_config, "Synthetic config template JSON");

  std::string run_dir;
  auto* report = app.add_subcommand("report", "Aggregate a detect run into DOT, net-tax CSV and summary");
  report->add_option("run_dir", run_dir, "Directory written by detect")->required();

  std::string from, to;
  auto* widest = app.add_subcommand("widest-path", "Print the widest path between two dealers as JSON");
  widest->add_option("input", input, "Ledger CSV")->required();
  widest->add_option("--from", from)->required();
  widest->add_option("--to", to)->required();
  widest->add_flag("--lenient", lenient);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : Exit::invalid;
  }

  try {
    if (*detect) return cmd_detect(g, input, verify, dot, lenient);
    if (*gen) return cmd_gen(g, config_path);
    if (*bench) return cmd_bench(g, sizes, reps, bench_config);
    if (*report) return cmd_report(g, run_dir);
    if (*widest) return cmd_widest_path(input, from, to, lenient);
  } catch (const IoError& e) {
    log(Level::error, e.what());
    return Exit::io_failure;
  } catch (const cycletrace::Error& e) {
    std::string where = e.row() ? "row " + std::to_string(*e.row()) + ": " : "";
    log(Level::error, where + std::string(cycletrace::to_string(e.code())) + ": " + e.what());
    return Exit::invalid;
  } catch (const CLI::ValidationError& e) {
    log(Level::error, e.what());
    return Exit::invalid;
  } catch (const nlohmann::json::exception& e) {
    log(Level::error, e.what());
    return Exit::invalid;
  }
  return Exit::invalid;
}
