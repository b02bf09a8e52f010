#include "cycletrace/money.hpp"

#include <charconv>
#include <limits>

#include "cycletrace/error.hpp"

namespace cycletrace {

namespace {

[[noreturn]] void overflow(const char* op) {
  throw Error(Errc::contract_violation, std::string("money overflow in ") + op);
}

}  // namespace

Money Money::from_paise(std::int64_t paise) {
  if (paise < 0) {
    throw Error(Errc::contract_violation, "money cannot be negative: " + std::to_string(paise));
  }
  Money m;
  m.paise_ = paise;
  return m;
}

Money Money::from_rupees(std::int64_t rupees) {
  std::int64_t paise = 0;
  if (__builtin_mul_overflow(rupees, std::int64_t{100}, &paise)) overflow("from_rupees");
  return from_paise(paise);
}

Money Money::operator+(Money rhs) const {
  std::int64_t out = 0;
  if (__builtin_add_overflow(paise_, rhs.paise_, &out)) overflow("+");
  return from_paise(out);
}

Money Money::operator-(Money rhs) const {
  if (rhs.paise_ > paise_) {
    throw Error(Errc::contract_violation, "money subtraction below zero: " + std::to_string(paise_) +
                                              " - " + std::to_string(rhs.paise_));
  }
  return from_paise(paise_ - rhs.paise_);
}

Money Money::operator*(std::int64_t factor) const {
  std::int64_t out = 0;
  if (factor < 0 || __builtin_mul_overflow(paise_, factor, &out)) overflow("*");
  return from_paise(out);
}

SignedMoney SignedMoney::operator+(SignedMoney rhs) const {
  std::int64_t out = 0;
  if (__builtin_add_overflow(paise_, rhs.paise_, &out)) overflow("+");
  return SignedMoney(out);
}

SignedMoney SignedMoney::operator-(SignedMoney rhs) const {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(paise_, rhs.paise_, &out)) overflow("-");
  return SignedMoney(out);
}

SignedMoney SignedMoney::operator-() const {
  if (paise_ == std::numeric_limits<std::int64_t>::min()) overflow("negate");
  return SignedMoney(-paise_);
}

Money parse_rupees(std::string_view text) {
  if (text.empty()) throw Error(Errc::malformed_row, "empty value");
  if (text.front() == '-') throw Error(Errc::negative_value, "negative value: " + std::string(text));

  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  auto all_digits = [](std::string_view s) {
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if (whole.empty() || !all_digits(whole) || !all_digits(frac) || frac.size() > 2 ||
      (dot != std::string_view::npos && frac.empty())) {
    throw Error(Errc::malformed_row, "unparsable rupee amount: " + std::string(text));
  }

  std::int64_t rupees = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), rupees);
  if (ec != std::errc{} || ptr != whole.data() + whole.size()) {
    throw Error(Errc::malformed_row, "rupee amount out of range: " + std::string(text));
  }
  std::int64_t paise = 0;
  for (std::size_t i = 0; i < 2; ++i) paise = paise * 10 + (i < frac.size() ? frac[i] - '0' : 0);
  return Money::from_rupees(rupees) + Money::from_paise(paise);
}

std::string to_rupee_string(Money m) {
  std::string out = std::to_string(m.paise() / 100);
  const auto rem = m.paise() % 100;
  if (rem != 0) {
    out += '.';
    out += static_cast<char>('0' + rem / 10);
    out += static_cast<char>('0' + rem % 10);
  }
  return out;
}

std::string format_inr(SignedMoney m) {
  const bool negative = m.paise() < 0;
  // Work in unsigned space so INT64_MIN renders.
  const std::uint64_t mag = negative ? 0 - static_cast<std::uint64_t>(m.paise())
                                     : static_cast<std::uint64_t>(m.paise());
  const std::string digits = std::to_string(mag / 100);

  // Last three digits form one group, every two digits above that another.
  std::string grouped;
  const std::size_t n = digits.size();
  for (std::size_t i = 0; i < n; ++i) {
    grouped += digits[i];
    const std::size_t left = n - i - 1;
    if (left > 0 && (left == 3 || (left > 3 && (left - 3) % 2 == 0))) grouped += ',';
  }

  std::string out = negative ? "-₹" : "₹";
  out += grouped;
  if (const auto rem = mag % 100; rem != 0) {
    out += '.';
    out += static_cast<char>('0' + rem / 10);
    out += static_cast<char>('0' + rem % 10);
  }
  return out;
}

}  // namespace cycletrace
