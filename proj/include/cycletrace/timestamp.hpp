#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace cycletrace {

/// Calendar date-time with second precision (no time zone; ledger local time).
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::chrono::sys_seconds instant) : instant_(instant) {}

  /// Throws Error{malformed_row} when a component is out of range.
  static Timestamp from_civil(int year, unsigned month, unsigned day, unsigned hour,
                              unsigned minute, unsigned second);

  /// Accepts "YYYY/MM/DD/HH:MM:SS" (ledger exports) and "YYYY-MM-DDTHH:MM:SS".
  static std::optional<Timestamp> parse(std::string_view text);

  /// "YYYY-MM-DDTHH:MM:SS"
  std::string iso() const;

  constexpr std::chrono::sys_seconds instant() const noexcept { return instant_; }

  Timestamp operator+(std::chrono::seconds d) const { return Timestamp(instant_ + d); }

  constexpr auto operator<=>(const Timestamp&) const = default;

 private:
  std::chrono::sys_seconds instant_{};
};

}  // namespace cycletrace
