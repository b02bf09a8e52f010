#include "cycletrace/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace cycletrace::synth {

using Json = nlohmann::ordered_json;

SynthConfig default_bench_config() {
  SynthConfig c;
  c.dealers = 200;
  c.legit_edges = 0;
  for (std::size_t size : {2, 3, 4, 5, 6, 7, 8, 3, 4, 5}) {
    c.rings.push_back({size, Money::from_rupees(100000), Money::from_rupees(1000), 1});
  }
  return c;
}

void validate(const SynthConfig& c) {
  auto fail = [](const std::string& why) { throw Error(Errc::invalid_config, why); };
  if (c.dealers < 2) fail("need at least 2 dealers");
  std::size_t members = 0;
  for (const auto& r : c.rings) {
    if (r.size < 2 || r.size > 8) fail("ring size must be in [2, 8]");
    if (r.base_value.is_zero()) fail("ring base_value must be positive");
    if (r.jitter >= r.base_value) fail("ring jitter must be below base_value");
    if (r.rounds == 0) fail("ring rounds must be positive");
    members += r.size;
  }
  if (members > c.dealers) fail("rings need more dealers than configured");
  if (c.legit_min.is_zero() || c.legit_min > c.legit_max) fail("legit value range is empty");
  if (c.legit_edges > 0 && c.isolate_rings && members == c.dealers) {
    fail("isolated rings leave no dealer to buy legitimate goods");
  }
}

namespace {

Money money_field(const Json& j, const char* key, Money fallback) {
  if (!j.contains(key)) return fallback;
  return Money::from_paise(j.at(key).get<std::int64_t>());
}

}  // namespace

SynthConfig config_from_json(const Json& j) {
  SynthConfig c;
  try {
    c.dealers = j.value("dealers", c.dealers);
    c.legit_edges = j.value("legit_edges", c.legit_edges);
    c.seed = j.value("seed", c.seed);
    c.isolate_rings = j.value("isolate_rings", c.isolate_rings);
    c.legit_min = money_field(j, "legit_min_paise", c.legit_min);
    c.legit_max = money_field(j, "legit_max_paise", c.legit_max);
    if (j.contains("start")) {
      const auto t = Timestamp::parse(j.at("start").get<std::string>());
      if (!t) throw Error(Errc::invalid_config, "bad start time");
      c.start = *t;
    }
    for (const auto& r : j.value("rings", Json::array())) {
      RingSpec spec;
      spec.size = r.value("size", spec.size);
      spec.base_value = money_field(r, "base_paise", spec.base_value);
      spec.jitter = money_field(r, "jitter_paise", spec.jitter);
      spec.rounds = r.value("rounds", spec.rounds);
      c.rings.push_back(spec);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_config, e.what());
  } catch (const Error& e) {
    throw Error(Errc::invalid_config, e.what());
  }
  validate(c);
  return c;
}

Json to_json(const SynthConfig& c) {
  Json rings = Json::array();
  for (const auto& r : c.rings) {
    rings.push_back({{"size", r.size},
                     {"base_paise", r.base_value.paise()},
                     {"jitter_paise", r.jitter.paise()},
                     {"rounds", r.rounds}});
  }
  return Json{{"dealers", c.dealers},
              {"legit_edges", c.legit_edges},
              {"rings", std::move(rings)},
              {"seed", c.seed},
              {"isolate_rings", c.isolate_rings},
              {"legit_min_paise", c.legit_min.paise()},
              {"legit_max_paise", c.legit_max.paise()},
              {"start", c.start.iso()}};
}

SynthLedger generate(const SynthConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);

  const int width = static_cast<int>(std::to_string(config.dealers).size());
  std::vector<DealerId> pool;
  for (std::size_t i = 1; i <= config.dealers; ++i) {
    std::ostringstream name;
    name << 'D' << std::setw(width) << std::setfill('0') << i;
    pool.emplace_back(name.str());
  }
  std::shuffle(pool.begin(), pool.end(), rng);

  // pool[0, members) are ring dealers, partitioned ring by ring; the rest is
  // legitimate-only traffic. The pool order doubles as the DAG rank.
  struct Hop {
    DealerId seller, buyer;
    Money value;
    std::string label;
  };
  std::vector<std::vector<Hop>> ring_streams;
  std::size_t members = 0;
  for (std::size_t r = 0; r < config.rings.size(); ++r) {
    const auto& spec = config.rings[r];
    std::uniform_int_distribution<std::int64_t> jitter(-spec.jitter.paise(), spec.jitter.paise());
    std::vector<Hop> stream;
    for (std::size_t round = 0; round < spec.rounds; ++round) {
      for (std::size_t k = 0; k < spec.size; ++k) {
        const auto value = Money::from_paise(spec.base_value.paise() + jitter(rng));
        stream.push_back({pool[members + k], pool[members + (k + 1) % spec.size], value,
                          "ring:" + std::to_string(r)});
      }
    }
    members += spec.size;
    ring_streams.push_back(std::move(stream));
  }

  std::uniform_int_distribution<std::int64_t> legit_value(config.legit_min.paise() / 100,
                                                          config.legit_max.paise() / 100);
  std::vector<Hop> legit;
  const std::size_t n = pool.size();
  for (std::size_t i = 0; i < config.legit_edges; ++i) {
    std::size_t a = 0;
    std::size_t b = 0;
    if (config.isolate_rings) {
      // Buyer is never a ring dealer; seller ranks strictly below buyer.
      std::uniform_int_distribution<std::size_t> buyer_pick(std::max<std::size_t>(members, 1), n - 1);
      b = buyer_pick(rng);
      std::uniform_int_distribution<std::size_t> seller_pick(0, b - 1);
      a = seller_pick(rng);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      a = pick(rng);
      do b = pick(rng); while (b == a);
    }
    auto value = Money::from_rupees(legit_value(rng));
    if (value.is_zero()) value = config.legit_min;
    legit.push_back({pool[a], pool[b], value, "legit"});
  }

  // Interleave streams, keeping each ring's hops in order.
  std::vector<std::size_t> tokens(legit.size(), 0);
  for (std::size_t r = 0; r < ring_streams.size(); ++r) tokens.insert(tokens.end(), ring_streams[r].size(), r + 1);
  std::shuffle(tokens.begin(), tokens.end(), rng);

  SynthLedger out;
  std::vector<std::size_t> cursor(ring_streams.size() + 1, 0);
  std::uniform_int_distribution<int> gap(1, 600);
  Timestamp now = config.start;
  for (std::size_t token : tokens) {
    const Hop& hop = token == 0 ? legit[cursor[0]++] : ring_streams[token - 1][cursor[token]++];
    now = now + std::chrono::seconds(gap(rng));
    const Transaction t{out.transactions.size() + 1, hop.seller, hop.buyer, now, hop.value};
    out.labels.push_back({EdgeKey{t.seller, t.buyer, t.time}, hop.label});
    out.transactions.push_back(t);
  }
  return out;
}

std::string labels_csv(const std::vector<Label>& labels) {
  std::string out = "seller_id,buyer_id,time,label\n";
  for (const auto& l : labels) {
    out += l.key.seller.str() + ',' + l.key.buyer.str() + ',' + l.key.time.iso() + ',' + l.label + '\n';
  }
  return out;
}

DetectionScore score_detection(std::span<const RemovalRecord> removals, const std::vector<Label>& labels) {
  std::set<EdgeKey> flagged;
  for (const auto& r : removals) flagged.insert(r.edges.begin(), r.edges.end());
  std::set<EdgeKey> truth;
  for (const auto& l : labels) {
    if (l.label != "legit") truth.insert(l.key);
  }
  std::size_t hit = 0;
  for (const auto& k : flagged) hit += truth.contains(k);

  DetectionScore s;
  s.flagged = flagged.size();
  s.ring_edges = truth.size();
  s.precision = flagged.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(flagged.size());
  s.recall = truth.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(truth.size());
  return s;
}

BenchTable bench(const std::vector<std::size_t>& sizes, const SynthConfig& config_template,
                 std::size_t repetitions) {
  BenchTable table;
  std::size_t ring_edges = 0;
  for (const auto& r : config_template.rings) ring_edges += r.size * r.rounds;

  for (std::size_t size : sizes) {
    SynthConfig config = config_template;
    config.legit_edges = size > ring_edges ? size - ring_edges : 0;
    const auto ledger = generate(config);

    std::vector<double> times;
    for (std::size_t run = 0; run < repetitions; ++run) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto result = run_wcd(ledger.transactions);
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      table.rows.push_back({ledger.transactions.size(), run, dt.count()});
      times.push_back(dt.count());
    }
    if (times.empty()) continue;
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    const double median = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    table.medians.emplace_back(ledger.transactions.size(), median);
  }
  return table;
}

double loglog_slope(const std::vector<std::pair<std::size_t, double>>& points) {
  if (points.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [edges, seconds] : points) {
    const double x = std::log(static_cast<double>(edges));
    const double y = std::log(std::max(seconds, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

std::string bench_csv(const BenchTable& table) {
  std::ostringstream out;
  out << "edges,run,seconds\n";
  out << std::setprecision(9);
  for (const auto& r : table.rows) out << r.edges << ',' << r.run << ',' << r.seconds << '\n';
  return out.str();
}

std::string bench_svg(const BenchTable& table) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 20, B = 50;
  double max_x = 1, max_y = 1e-6;
  for (const auto& r : table.rows) {
    max_x = std::max(max_x, static_cast<double>(r.edges));
    max_y = std::max(max_y, r.seconds);
  }
  auto px = [&](double x) { return L + (W - L - R) * x / max_x; };
  auto py = [&](double y) { return H - B - (H - T - B) * y / max_y; };

  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">edges</text>\n";
  out << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
      << ")\" text-anchor=\"middle\">seconds</text>\n";
  out << "<text x=\"" << W - R << "\" y=\"" << H - B + 20 << "\" text-anchor=\"end\">" << max_x << "</text>\n";
  out << "<text x=\"" << L - 5 << "\" y=\"" << T + 5 << "\" text-anchor=\"end\">" << std::setprecision(4) << max_y
      << "</text>\n";
  out << std::setprecision(2);
  for (const auto& r : table.rows) {
    out << "<circle cx=\"" << px(static_cast<double>(r.edges)) << "\" cy=\"" << py(r.seconds)
        << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  if (!table.medians.empty()) {
    out << "<polyline fill=\"none\" stroke=\"firebrick\" points=\"";
    for (const auto& [edges, seconds] : table.medians) {
      out << px(static_cast<double>(edges)) << ',' << py(seconds) << ' ';
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cycletrace::synth
