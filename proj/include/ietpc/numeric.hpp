#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "ietpc/error.hpp"

namespace ietpc {

// Exact element of Q or Q(sqrt d): value = a + b*sqrt(d).
//
// Rationals carry radicand 0 and b = 0. A surd always has a square-free
// radicand d >= 2 and b != 0; anything else is normalized to a rational.
// Mixing two surds with different radicands throws IncompatibleRadicands.
class Number {
 public:
  Number() = default;
  Number(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Number(mpq_class value);

  static Number rational(const mpz_class& num, const mpz_class& den);
  // a + b*sqrt(d); d must be positive.
  static Number surd(const mpq_class& a, const mpq_class& b, std::int64_t d);
  // (1 + sqrt 5) / 2
  static Number golden_ratio();

  bool is_rational() const { return d_ == 0; }
  bool is_zero() const { return d_ == 0 && sgn(a_) == 0; }
  const mpq_class& rational_part() const { return a_; }
  const mpq_class& surd_part() const { return b_; }
  std::int64_t radicand() const { return d_; }

  int sign() const;
  Number abs() const { return sign() < 0 ? -*this : *this; }

  Number operator-() const;
  Number& operator+=(const Number& rhs);
  Number& operator-=(const Number& rhs);
  Number& operator*=(const Number& rhs);
  Number& operator/=(const Number& rhs);

  friend Number operator+(Number lhs, const Number& rhs) { return lhs += rhs; }
  friend Number operator-(Number lhs, const Number& rhs) { return lhs -= rhs; }
  friend Number operator*(Number lhs, const Number& rhs) { return lhs *= rhs; }
  friend Number operator/(Number lhs, const Number& rhs) { return lhs /= rhs; }

  friend bool operator==(const Number& x, const Number& y);
  friend std::strong_ordering operator<=>(const Number& x, const Number& y);

  // Total size in bits of all stored numerators and denominators.
  std::size_t bit_size() const;

  // Canonical text: "p/q" for rationals, "(a+b*sqrt(d))/c" for surds.
  std::string to_string() const;
  // Accepts the canonical text and, more generally, arithmetic expressions
  // over integers, decimals and sqrt(n).
  static Number parse(std::string_view text);

  // Floating approximation for reporting only; never used for decisions.
  double to_double() const;
  std::string to_decimal(int digits) const;

  std::size_t hash() const;

 private:
  Number(mpq_class a, mpq_class b, std::int64_t d);
  void normalize();
  std::int64_t common_radicand(const Number& rhs) const;

  mpq_class a_{0};
  mpq_class b_{0};
  std::int64_t d_ = 0;
};

enum class Ordering { Less, Equal, Greater };

Ordering compare(const Number& x, const Number& y);

// Square-free part s of d together with r such that d = r*r*s.
std::pair<std::int64_t, std::int64_t> square_free_decomposition(std::int64_t d);

// 2^exponent as an exact rational (exponent may be negative).
mpq_class pow2(long exponent);

std::size_t bit_size(const mpq_class& q);
std::string rational_to_string(const mpq_class& q);
// Decimal expansion of q truncated toward -infinity after `digits` places.
std::string rational_to_decimal(const mpq_class& q, int digits);

}  // namespace ietpc

template <>
struct std::hash<ietpc::Number> {
  std::size_t operator()(const ietpc::Number& x) const noexcept { return x.hash(); }
};
