#include "bellman/rational.hpp"

#include <cctype>
#include <ostream>

namespace bellman {

namespace {

std::int64_t to_i64(const mpz_class& z) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw DomainError("integer does not fit in 64 bits: " + z.get_str());
  return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t()));
}

mpz_class from_i64(std::int64_t n) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(n));
  return z;
}

}  // namespace

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational::Rational(std::int64_t n) : value_(from_i64(n)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  value_ = mpq_class(from_i64(num), from_i64(den));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || (den[0] == '-' || den[0] == '+'))
    throw DomainError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw DomainError("zero denominator in '" + s + "'");
  return Rational(mpq_class(n, d));
}

Rational Rational::pow2(int k) {
  mpz_class p = 1;
  const unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return k >= 0 ? Rational(mpq_class(p, 1)) : Rational(mpq_class(1, p));
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::numerator_string() const { return value_.get_num().get_str(); }
std::string Rational::denominator_string() const { return value_.get_den().get_str(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

bool Rational::is_dyadic() const {
  const mpz_class& d = value_.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

int Rational::dyadic_exponent() const {
  if (!is_dyadic()) throw DomainError("not a dyadic rational: " + to_string());
  return static_cast<int>(mpz_scan1(value_.get_den().get_mpz_t(), 0));
}

std::int64_t Rational::numerator_i64() const { return to_i64(value_.get_num()); }
std::int64_t Rational::denominator_i64() const { return to_i64(value_.get_den()); }

std::int64_t Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num().get_mpz_t(), value_.get_den().get_mpz_t());
  return to_i64(q);
}

std::int64_t Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num().get_mpz_t(), value_.get_den().get_mpz_t());
  return to_i64(q);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (sgn(o.value_) == 0) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::size_t Rational::hash() const {
  const auto h1 = mpz_get_ui(value_.get_num().get_mpz_t()) * 0x9e3779b97f4a7c15ULL;
  const auto h2 = mpz_get_ui(value_.get_den().get_mpz_t());
  return static_cast<std::size_t>(h1 ^ (h2 + (h1 << 6) + (h1 >> 2)) ^ static_cast<std::size_t>(sign() + 1));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace bellman
