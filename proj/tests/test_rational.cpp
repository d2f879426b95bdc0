#include "support.hpp"

#include <sstream>
#include <unordered_set>

using namespace testing;
using bellman::DomainError;

TEST_CASE("parse and print in lowest terms") {
  CHECK(Q("6/8").to_string() == "3/4");
  CHECK(Q("-6/8").to_string() == "-3/4");
  CHECK(Q("4/2").to_string() == "2");
  CHECK(Q("0/5").to_string() == "0");
  CHECK(Q("7").to_string() == "7");
  CHECK(Q("+3/4") == Q(3, 4));
  std::ostringstream os;
  os << Q(5, 10);
  CHECK(os.str() == "1/2");
}

TEST_CASE("malformed literals are rejected") {
  for (const char* bad : {"", "1/0", "abc", "1.5", "1/2/3", "/2", "2/", "0x10", "3/-4", "-"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Q(bad), DomainError);
  }
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("arithmetic and ordering are exact") {
  CHECK(Q("1/3") + Q("1/6") == Q("1/2"));
  CHECK(Q("1/3") - Q("1/2") == Q("-1/6"));
  CHECK(Q("2/3") * Q("9/4") == Q("3/2"));
  CHECK(Q("2/3") / Q("4/9") == Q("3/2"));
  CHECK(-Q("1/2") == Q("-1/2"));
  CHECK(Q("1/3") < Q("1/2"));
  CHECK(Q("-1/2") < Q("-1/3"));
  CHECK(bellman::min(Q("1/3"), Q("1/4")) == Q("1/4"));
  CHECK(bellman::max(Q("1/3"), Q("1/4")) == Q("1/3"));
  CHECK(Q("-5/2").abs() == Q("5/2"));
  CHECK_THROWS_AS(Q("1") / Q("0"), DomainError);
}

TEST_CASE("powers of two and dyadic structure") {
  CHECK(Rational::pow2(3) == Q("8"));
  CHECK(Rational::pow2(-3) == Q("1/8"));
  CHECK(Rational::pow2(0) == Q("1"));
  CHECK(Rational::pow2(-70) * Rational::pow2(70) == Q("1"));
  CHECK(Q("3/8").is_dyadic());
  CHECK(Q("3/8").dyadic_exponent() == 3);
  CHECK(Q("5").dyadic_exponent() == 0);
  CHECK_FALSE(Q("1/3").is_dyadic());
  CHECK_THROWS_AS(Q("1/3").dyadic_exponent(), DomainError);
}

TEST_CASE("floor, ceil and integer extraction") {
  CHECK(Q("7/2").floor() == 3);
  CHECK(Q("7/2").ceil() == 4);
  CHECK(Q("-7/2").floor() == -4);
  CHECK(Q("-7/2").ceil() == -3);
  CHECK(Q("4").ceil() == 4);
  CHECK(Q("-9/4").numerator_i64() == -9);
  CHECK(Q("-9/4").denominator_i64() == 4);
  CHECK_THROWS_AS((Rational::pow2(70)).numerator_i64(), DomainError);
}

TEST_CASE("hash agrees with equality") {
  std::unordered_set<Rational> seen{Q("1/2"), Q("2/4"), Q("3/6"), Q("1/3")};
  CHECK(seen.size() == 2);
}
