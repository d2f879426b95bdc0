// Compares the library against values frozen by tests/oracle/candidate_oracle.py.

#include "bellman/candidate.hpp"

#include "support.hpp"

#include <json.hpp>

#include <fstream>

using namespace testing;
using namespace bellman::candidate;

namespace {

const nlohmann::json& oracle() {
  static const nlohmann::json data = [] {
    std::ifstream in(data_path("oracle_values.json"));
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
  }();
  return data;
}

}  // namespace

TEST_CASE("f matches the oracle") {
  std::size_t compared = 0;
  for (const auto& row : oracle().at("f")) {
    const Rational x = Q(row[0].get<std::string>().c_str()), lambda = Q(row[1].get<std::string>().c_str());
    if (lambda.sign() <= 0) continue;
    CAPTURE(x);
    CAPTURE(lambda);
    CHECK(f_eval(x, lambda) == Q(row[2].get<std::string>().c_str()));
    ++compared;
  }
  CHECK(compared > 2000);
}

TEST_CASE("g matches the oracle") {
  std::size_t compared = 0;
  for (const auto& row : oracle().at("g")) {
    const Rational x = Q(row[0].get<std::string>().c_str()), lambda = Q(row[1].get<std::string>().c_str());
    if (lambda.sign() <= 0) continue;
    CAPTURE(x);
    CAPTURE(lambda);
    CHECK(g_eval(x, lambda) == Q(row[2].get<std::string>().c_str()));
    ++compared;
  }
  CHECK(compared > 2000);
}

TEST_CASE("B and its regions match the oracle") {
  std::size_t compared = 0;
  for (const auto& row : oracle().at("B")) {
    const Rational x = Q(row[0].get<std::string>().c_str());
    const Rational A = Q(row[1].get<std::string>().c_str());
    const Rational lambda = Q(row[2].get<std::string>().c_str());
    CAPTURE(x);
    CAPTURE(A);
    CAPTURE(lambda);
    const auto r = B_evaluate(x, A, lambda);
    CHECK(r.value == Q(row[3].get<std::string>().c_str()));
    const std::string region = row[4].get<std::string>();
    if (!region.empty()) CHECK(r.region.to_string() == region);
    ++compared;
  }
  CHECK(compared == 864);
}
