#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cycletrace/model.hpp"
#include "support.hpp"

using namespace cycletrace;
using test::rs;

namespace {

const std::string kTable1 =
    "serial,seller_id,buyer_id,time,value_rupees\n"
    "1,m,n,2015/01/14/10:30:44,10000\n"
    "2,a,b,2015/01/14/13:01:54,15000\n"
    "3,x,y,2015/01/15/09:02:52,12000\n"
    "4,y,m,2015/01/15/10:09:11,14000\n"
    "5,b,k,2015/01/16/10:10:10,10000\n";

Errc parse_error(const std::string& body, std::optional<std::size_t>* row = nullptr) {
  try {
    parse_ledger(std::string(kLedgerHeader) + "\n" + body);
  } catch (const Error& e) {
    if (row) *row = e.row();
    return e.code();
  }
  FAIL("expected a parse error");
  return Errc::contract_violation;
}

}  // namespace

TEST_CASE("Table I row 2 parses into a transaction") {
  const auto parsed = parse_ledger(std::string(kLedgerHeader) + "\n2,a,b,2015/01/14/13:01:54,15000\n");
  REQUIRE(parsed.transactions.size() == 1);
  const auto& t = parsed.transactions.front();
  CHECK(t.serial == 2);
  CHECK(t.seller == DealerId("a"));
  CHECK(t.buyer == DealerId("b"));
  CHECK(t.time == Timestamp::from_civil(2015, 1, 14, 13, 1, 54));
  CHECK(t.time.iso() == "2015-01-14T13:01:54");
  CHECK(t.value == rs(15000));
}

TEST_CASE("full Table I ledger keeps chronological serial order") {
  const auto parsed = parse_ledger(kTable1);
  REQUIRE(parsed.transactions.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(parsed.transactions[i].serial == i + 1);
  CHECK(parsed.transactions == test::table1_ledger());
}

TEST_CASE("row-level validation errors") {
  std::optional<std::size_t> row;
  CHECK(parse_error("1,m,m,2015/01/14/10:30:44,10000\n", &row) == Errc::self_loop);
  CHECK(row == 2);
  CHECK(parse_error("1,a,b,2015/01/14/10:30:44,10\n2,a,b,2015-01-14T10:30:44,11\n", &row) ==
        Errc::duplicate_edge_key);
  CHECK(row == 3);
  CHECK(parse_error("1,a,b,2015/01/14/10:30:44,-5\n") == Errc::negative_value);
  CHECK(parse_error("1,a,b,2015/01/14/10:30:44\n", &row) == Errc::malformed_row);
  CHECK(row == 2);
  CHECK(parse_error("1,a,b,2015/02/30/10:30:44,5\n") == Errc::malformed_row);
  CHECK(parse_error("1,a,b,2015/01/14 10:30:44,5\n") == Errc::malformed_row);
  CHECK(parse_error("1,a,b,2015/01/14/10:30:44,5.123\n") == Errc::malformed_row);
  CHECK(parse_error("0,a,b,2015/01/14/10:30:44,5\n") == Errc::malformed_row);
  CHECK(parse_error("x,a,b,2015/01/14/10:30:44,5\n") == Errc::malformed_row);
  CHECK(parse_error("1,,b,2015/01/14/10:30:44,5\n") == Errc::malformed_row);
  CHECK(parse_error("1,a,b,2015/01/14/10:30:44,0\n") == Errc::malformed_row);
  CHECK(parse_error("1,a,b,2015/01/14/10:30:44,\xff\n") == Errc::malformed_row);
}

TEST_CASE("header must match the schema") {
  CHECK_THROWS_AS(parse_ledger("serial,seller,buyer,time,value\n"), Error);
  CHECK_THROWS_AS(parse_ledger(""), Error);
  // CRLF and BOM are tolerated.
  CHECK(parse_ledger("\xEF\xBB\xBF" + std::string(kLedgerHeader) + "\r\n1,a,b,2015/01/14/10:30:44,5\r\n")
            .transactions.size() == 1);
}

TEST_CASE("same (seller, buyer, time) in the other direction is a distinct key") {
  const auto parsed = parse_ledger(std::string(kLedgerHeader) +
                                   "\n1,a,b,2015/01/14/10:30:44,5\n2,b,a,2015/01/14/10:30:44,5\n");
  CHECK(parsed.transactions.size() == 2);
}

TEST_CASE("lenient mode skips and reports bad rows") {
  const auto parsed = parse_ledger(std::string(kLedgerHeader) +
                                       "\n1,a,b,2015/01/14/10:30:44,5\n2,m,m,2015/01/14/10:30:45,5\n"
                                       "3,a,b,2015/01/14/10:30:44,6\n4,c,d,garbage,1\n",
                                   {LedgerFormat::csv, true});
  REQUIRE(parsed.transactions.size() == 1);
  REQUIRE(parsed.skipped.size() == 3);
  CHECK(parsed.skipped[0].row == 3);
  CHECK(parsed.skipped[0].code == Errc::self_loop);
  CHECK(parsed.skipped[1].code == Errc::duplicate_edge_key);
  CHECK(parsed.skipped[2].code == Errc::malformed_row);
  CHECK(parsed.skipped[2].row == 5);
}

TEST_CASE("equal timestamps across pairs are ordered by serial") {
  const auto parsed = parse_ledger(std::string(kLedgerHeader) +
                                   "\n9,c,d,2015/01/14/10:30:44,1\n3,a,b,2015/01/14/10:30:44,1\n"
                                   "1,e,f,2015/01/15/00:00:00,1\n");
  REQUIRE(parsed.transactions.size() == 3);
  CHECK(parsed.transactions[0].serial == 3);
  CHECK(parsed.transactions[1].serial == 9);
  CHECK(parsed.transactions[2].serial == 1);
}

TEST_CASE("timestamps accept both layouts and render ISO-8601") {
  const auto a = Timestamp::parse("2016/02/29/23:59:59");
  const auto b = Timestamp::parse("2016-02-29T23:59:59");
  REQUIRE(a);
  REQUIRE(b);
  CHECK(*a == *b);
  CHECK(a->iso() == "2016-02-29T23:59:59");
  CHECK_FALSE(Timestamp::parse("2015-02-29T00:00:00"));
  CHECK_FALSE(Timestamp::parse("2015-01-01T24:00:00"));
  CHECK_FALSE(Timestamp::parse("2015-01-01 00:00:00"));
  CHECK(*Timestamp::parse("2015-01-01T00:00:00") < *Timestamp::parse("2015-01-01T00:00:01"));
}

TEST_CASE("rupee amounts parse to paise and render back") {
  CHECK(parse_rupees("15000").paise() == 1500000);
  CHECK(parse_rupees("12.5").paise() == 1250);
  CHECK(parse_rupees("0.05").paise() == 5);
  CHECK_THROWS_AS(parse_rupees("1."), Error);
  CHECK_THROWS_AS(parse_rupees(".5"), Error);
  CHECK_THROWS_AS(parse_rupees("99999999999999999999"), Error);
  CHECK(to_rupee_string(Money::from_paise(1250)) == "12.50");
  CHECK(to_rupee_string(rs(15000)) == "15000");
}

TEST_CASE("Indian digit grouping") {
  CHECK(format_inr(rs(100000)) == "₹1,00,000");
  CHECK(format_inr(rs(10000000)) == "₹1,00,00,000");
  CHECK(format_inr(rs(999)) == "₹999");
  CHECK(format_inr(rs(1000)) == "₹1,000");
  CHECK(format_inr(Money::from_paise(123456789)) == "₹12,34,567.89");
  CHECK(format_inr(SignedMoney(-20000)) == "-₹200");
}

TEST_CASE("money arithmetic refuses to go negative or overflow") {
  CHECK_THROWS_AS(rs(1) - rs(2), Error);
  CHECK_THROWS_AS(Money::from_paise(-1), Error);
  CHECK_THROWS_AS(Money::from_paise(INT64_MAX) + Money::from_paise(1), Error);
  CHECK((rs(3) - rs(3)).is_zero());
}

TEST_CASE("tax payable") {
  CHECK(tax_payable(rs(180), rs(120)) == SignedMoney(rs(60)));
  CHECK(tax_payable(rs(200), rs(180)) == SignedMoney(rs(20)));
  CHECK(tax_payable(rs(0), rs(0)) == SignedMoney(0));
  CHECK(tax_payable(rs(100), rs(150)).paise() == -5000);  // credit carry forward

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> paise(0, 1'000'000'000);
  for (int i = 0; i < 1000; ++i) {
    const auto a = Money::from_paise(paise(rng));
    const auto b = Money::from_paise(paise(rng));
    CHECK(tax_payable(a, b) == -tax_payable(b, a));
  }
}

TEST_CASE("serialize then parse is the identity on valid ledgers") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    auto ledger = test::random_ledger(rng, 12, 40, 100000);
    std::uniform_int_distribution<int> paise(0, 99);
    for (auto& t : ledger) t.value += Money::from_paise(paise(rng));
    const std::string text = serialize_ledger(ledger);
    const auto parsed = parse_ledger(text);
    REQUIRE(parsed.transactions == ledger);
    CHECK(serialize_ledger(parsed.transactions) == text);
    for (std::size_t i = 1; i < parsed.transactions.size(); ++i) {
      CHECK(parsed.transactions[i - 1].time <= parsed.transactions[i].time);
    }
  }
}
