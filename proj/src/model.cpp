#include "cycletrace/model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <tuple>

namespace cycletrace {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_row: return "MalformedRow";
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge_key: return "DuplicateEdgeKey";
    case Errc::negative_value: return "NegativeValue";
    case Errc::missing_edge: return "MissingEdge";
    case Errc::unknown_vertex: return "UnknownVertex";
    case Errc::no_cycle_through_edge: return "NoCycleThroughEdge";
    case Errc::empty_candidate_set: return "EmptyCandidateSet";
    case Errc::inconsistent_state: return "InconsistentState";
    case Errc::unsorted_ledger: return "UnsortedLedger";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::contract_violation: return "ContractViolation";
  }
  return "Unknown";
}

DealerId::DealerId(std::string id) : id_(std::move(id)) {
  if (id_.empty()) throw Error(Errc::malformed_row, "empty dealer id");
  if (id_.find_first_of(",\r\n") != std::string::npos) {
    throw Error(Errc::malformed_row, "dealer id contains a separator: " + id_);
  }
}

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c >> 5) == 0x6) len = 2;
    else if ((c >> 4) == 0xE) len = 3;
    else if ((c >> 3) == 0x1E) len = 4;
    else return false;
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    i += len;
  }
  return true;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Transaction parse_row(std::string_view line, std::size_t row) {
  if (!valid_utf8(line)) throw Error(Errc::malformed_row, "row is not valid UTF-8", row);
  const auto fields = split_fields(line);
  if (fields.size() != 5) {
    throw Error(Errc::malformed_row,
                "expected 5 columns, found " + std::to_string(fields.size()), row);
  }

  Transaction t;
  const auto serial = fields[0];
  auto [ptr, ec] = std::from_chars(serial.data(), serial.data() + serial.size(), t.serial);
  if (ec != std::errc{} || ptr != serial.data() + serial.size() || t.serial == 0) {
    throw Error(Errc::malformed_row, "serial must be a positive integer", row);
  }

  try {
    t.seller = DealerId(std::string(fields[1]));
    t.buyer = DealerId(std::string(fields[2]));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), row);
  }
  if (t.seller == t.buyer) {
    throw Error(Errc::self_loop, "seller equals buyer (" + t.seller.str() + ")", row);
  }

  const auto time = Timestamp::parse(fields[3]);
  if (!time) throw Error(Errc::malformed_row, "unparsable time: " + std::string(fields[3]), row);
  t.time = *time;

  try {
    t.value = parse_rupees(fields[4]);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), row);
  }
  if (t.value.is_zero()) throw Error(Errc::malformed_row, "value must be positive", row);
  return t;
}

}  // namespace

ParsedLedger parse_ledger(std::istream& source, const ParseOptions& options) {
  ParsedLedger out;
  std::string line;
  std::size_t row = 0;

  if (!std::getline(source, line)) throw Error(Errc::malformed_row, "missing header row", 1);
  ++row;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (line != kLedgerHeader) {
    throw Error(Errc::malformed_row, "header must be '" + std::string(kLedgerHeader) + "'", 1);
  }

  using Key = std::tuple<DealerId, DealerId, Timestamp>;
  std::set<Key> seen;
  while (std::getline(source, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      Transaction t = parse_row(line, row);
      if (!seen.emplace(t.seller, t.buyer, t.time).second) {
        throw Error(Errc::duplicate_edge_key,
                    "duplicate (seller, buyer, time): " + t.seller.str() + "," + t.buyer.str() +
                        "," + t.time.iso(),
                    row);
      }
      out.transactions.push_back(std::move(t));
    } catch (const Error& e) {
      if (!options.lenient) throw;
      out.skipped.push_back({row, e.code(), e.what()});
    }
  }

  std::stable_sort(out.transactions.begin(), out.transactions.end(),
                   [](const Transaction& a, const Transaction& b) {
                     return std::tie(a.time, a.serial) < std::tie(b.time, b.serial);
                   });
  return out;
}

ParsedLedger parse_ledger(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_ledger(in, options);
}

void serialize_ledger(std::ostream& out, std::span<const Transaction> transactions) {
  out << kLedgerHeader << '\n';
  for (const auto& t : transactions) {
    out << t.serial << ',' << t.seller.str() << ',' << t.buyer.str() << ',' << t.time.iso() << ','
        << to_rupee_string(t.value) << '\n';
  }
}

std::string serialize_ledger(std::span<const Transaction> transactions) {
  std::ostringstream out;
  serialize_ledger(out, transactions);
  return out.str();
}

SignedMoney tax_payable(Money output_tax, Money input_tax) {
  return SignedMoney(output_tax) - SignedMoney(input_tax);
}

}  // namespace cycletrace
