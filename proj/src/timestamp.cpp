#include "cycletrace/timestamp.hpp"

#include <array>
#include <cstdio>

#include "cycletrace/error.hpp"

namespace cycletrace {

namespace {

std::optional<unsigned> digits(std::string_view s) {
  unsigned v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

}  // namespace

Timestamp Timestamp::from_civil(int year, unsigned month, unsigned day, unsigned hour,
                                unsigned minute, unsigned second) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
    throw Error(Errc::malformed_row, "invalid calendar time");
  }
  return Timestamp(sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second});
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  if (text.size() != 19) return std::nullopt;
  // Separator layout: either YYYY/MM/DD/HH:MM:SS or YYYY-MM-DDTHH:MM:SS.
  const bool slashed = text[4] == '/' && text[7] == '/' && text[10] == '/';
  const bool iso = text[4] == '-' && text[7] == '-' && text[10] == 'T';
  if ((!slashed && !iso) || text[13] != ':' || text[16] != ':') return std::nullopt;

  const auto y = digits(text.substr(0, 4));
  const auto mo = digits(text.substr(5, 2));
  const auto d = digits(text.substr(8, 2));
  const auto h = digits(text.substr(11, 2));
  const auto mi = digits(text.substr(14, 2));
  const auto s = digits(text.substr(17, 2));
  if (!y || !mo || !d || !h || !mi || !s) return std::nullopt;
  try {
    return from_civil(static_cast<int>(*y), *mo, *d, *h, *mi, *s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string Timestamp::iso() const {
  using namespace std::chrono;
  const auto day_start = floor<days>(instant_);
  const year_month_day ymd{day_start};
  const hh_mm_ss hms{instant_ - day_start};
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02uT%02ld:%02ld:%02lld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf.data();
}

}  // namespace cycletrace
