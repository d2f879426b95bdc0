#pragma once

#include "bellman/rational.hpp"
#include "bellman/verify.hpp"

#include <doctest.h>

#include <concepts>
#include <ostream>
#include <string>

namespace bellman {

// Lets doctest print Rationals in failure messages.
inline doctest::String toString(const Rational& r) { return r.to_string().c_str(); }

}  // namespace bellman

namespace testing {

using bellman::Rational;

inline Rational Q(const char* s) { return Rational::parse(s); }
template <std::integral N, std::integral D = std::int64_t>
Rational Q(N n, D d = 1) {
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

inline std::string data_path(const std::string& name) { return std::string(BELLMAN_TEST_DATA) + "/" + name; }

}  // namespace testing
