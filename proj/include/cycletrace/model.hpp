#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cycletrace/error.hpp"
#include "cycletrace/money.hpp"
#include "cycletrace/timestamp.hpp"

namespace cycletrace {

/// Opaque dealer token ("a", "m", a GSTIN, ...). Never empty, never contains
/// a field separator or line break.
class DealerId {
 public:
  DealerId() = default;
  explicit DealerId(std::string id);

  const std::string& str() const noexcept { return id_; }

  auto operator<=>(const DealerId&) const = default;

 private:
  std::string id_;
};

struct Transaction {
  std::uint64_t serial = 0;
  DealerId seller;
  DealerId buyer;
  Timestamp time;
  Money value;  // tax paid by buyer to seller

  bool operator==(const Transaction&) const = default;
};

enum class LedgerFormat { csv };

inline constexpr std::string_view kLedgerHeader = "serial,seller_id,buyer_id,time,value_rupees";

struct ParseOptions {
  LedgerFormat format = LedgerFormat::csv;
  /// Skip invalid rows and report them instead of failing on the first one.
  bool lenient = false;
};

struct RowDiagnostic {
  std::size_t row = 0;  // 1-based line number, header is row 1
  Errc code = Errc::malformed_row;
  std::string message;
};

struct ParsedLedger {
  std::vector<Transaction> transactions;  // sorted by (time, serial)
  std::vector<RowDiagnostic> skipped;     // only populated in lenient mode
};

ParsedLedger parse_ledger(std::istream& source, const ParseOptions& options = {});
ParsedLedger parse_ledger(std::string_view text, const ParseOptions& options = {});

/// Header plus one row per transaction, times in ISO-8601, values as rupees.
void serialize_ledger(std::ostream& out, std::span<const Transaction> transactions);
std::string serialize_ledger(std::span<const Transaction> transactions);

/// Output tax received minus input tax paid; negative means credit carry forward.
SignedMoney tax_payable(Money output_tax, Money input_tax);

}  // namespace cycletrace

template <>
struct std::hash<cycletrace::DealerId> {
  std::size_t operator()(const cycletrace::DealerId& d) const noexcept {
    return std::hash<std::string>{}(d.str());
  }
};
