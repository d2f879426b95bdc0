#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bellman {

/// Raised when an operation is called outside of its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact fraction in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every arithmetic result is
/// canonicalized, so structural equality is numeric equality.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p/q" or "p" (optional leading '-'). Throws DomainError.
  static Rational parse(std::string_view text);

  /// 2^k for any integer k, negative included.
  static Rational pow2(int k);

  std::string to_string() const;
  std::string numerator_string() const;
  std::string denominator_string() const;

  bool is_integer() const;
  /// True iff the denominator is a power of two.
  bool is_dyadic() const;
  /// log2 of the denominator; requires is_dyadic().
  int dyadic_exponent() const;

  /// Numerator/denominator as 64-bit integers; throws if they do not fit.
  std::int64_t numerator_i64() const;
  std::int64_t denominator_i64() const;

  std::int64_t floor() const;
  std::int64_t ceil() const;
  int sign() const { return sgn(value_); }
  Rational abs() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;
  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class v);
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace bellman

template <>
struct std::hash<bellman::Rational> {
  std::size_t operator()(const bellman::Rational& r) const noexcept { return r.hash(); }
};
