#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cycletrace {

/// Non-negative amount of Indian rupees held as integer paise (1 rupee = 100 paise).
///
/// Cycle cancellation subtracts amounts until an edge reaches exactly zero, so
/// the representation is integral. Overflow and subtraction below zero throw
/// Error{Errc::contract_violation}.
class Money {
 public:
  constexpr Money() = default;

  static Money from_paise(std::int64_t paise);
  static Money from_rupees(std::int64_t rupees);

  constexpr std::int64_t paise() const noexcept { return paise_; }
  constexpr bool is_zero() const noexcept { return paise_ == 0; }

  Money operator+(Money rhs) const;
  Money operator-(Money rhs) const;
  Money operator*(std::int64_t factor) const;
  Money& operator+=(Money rhs) { return *this = *this + rhs; }
  Money& operator-=(Money rhs) { return *this = *this - rhs; }

  constexpr auto operator<=>(const Money&) const = default;

 private:
  std::int64_t paise_ = 0;
};

/// Signed paise amount: tax payable, net positions. Negative means credit.
class SignedMoney {
 public:
  constexpr SignedMoney() = default;
  constexpr explicit SignedMoney(std::int64_t paise) : paise_(paise) {}
  constexpr SignedMoney(Money m) : paise_(m.paise()) {}

  constexpr std::int64_t paise() const noexcept { return paise_; }

  SignedMoney operator+(SignedMoney rhs) const;
  SignedMoney operator-(SignedMoney rhs) const;
  SignedMoney operator-() const;
  SignedMoney& operator+=(SignedMoney rhs) { return *this = *this + rhs; }
  SignedMoney& operator-=(SignedMoney rhs) { return *this = *this - rhs; }

  constexpr auto operator<=>(const SignedMoney&) const = default;

 private:
  std::int64_t paise_ = 0;
};

/// Parses a non-negative rupee decimal with at most two fraction digits
/// ("15000", "12.5", "0.05"). Throws Error{negative_value} on a leading '-',
/// Error{malformed_row} otherwise.
Money parse_rupees(std::string_view text);

/// Machine rendering, the inverse of parse_rupees: "15000" or "15000.50".
std::string to_rupee_string(Money m);

/// Human rendering with Indian digit grouping: "₹1,00,000", "-₹12,345.67".
std::string format_inr(SignedMoney m);

}  // namespace cycletrace
