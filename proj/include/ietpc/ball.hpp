#pragma once

#include <gmpxx.h>

#include <string>

#include "ietpc/numeric.hpp"

namespace ietpc {

// Closed interval [center - radius, center + radius] with dyadic endpoints.
//
// Used wherever the real value is an infinite series (gap sums, the rabbit
// constant) or an orbit has outgrown the exact bit budget. Operations round
// outward, so a Ball built from a value keeps containing it.
class Ball {
 public:
  Ball() = default;
  Ball(mpq_class center, mpq_class radius);
  static Ball exact(const mpq_class& value) { return Ball(value, 0); }
  static Ball from_bounds(const mpq_class& lower, const mpq_class& upper);

  const mpq_class& center() const { return center_; }
  const mpq_class& radius() const { return radius_; }
  mpq_class lower() const { return center_ - radius_; }
  mpq_class upper() const { return center_ + radius_; }

  bool contains(const Number& x) const;
  bool contains(const Ball& other) const;
  bool overlaps(const Ball& other) const;
  // Certified strict orderings; both false means undecided.
  bool certainly_less(const Ball& other) const { return upper() < other.lower(); }
  bool certainly_less(const Number& x) const;
  bool certainly_greater_equal(const Number& x) const;

  Ball operator-() const { return Ball(-center_, radius_); }
  Ball& operator+=(const Ball& rhs);
  Ball& operator-=(const Ball& rhs);
  friend Ball operator+(Ball lhs, const Ball& rhs) { return lhs += rhs; }
  friend Ball operator-(Ball lhs, const Ball& rhs) { return lhs -= rhs; }
  friend Ball operator*(const Ball& lhs, const Ball& rhs);
  friend Ball operator*(const mpq_class& k, const Ball& b);
  Ball inflated(const mpq_class& extra) const { return Ball(center_, radius_ + extra); }

  // Re-centres on the 2^-bits grid, growing the radius by the rounding error.
  Ball rounded(long bits) const;

  double to_double() const { return center_.get_d(); }
  std::string to_string() const;

 private:
  mpq_class center_{0};
  mpq_class radius_{0};
};

// Enclosure of x with radius <= 2^-precision_bits. Dyadic inputs whose
// binary expansion terminates within that precision give radius 0.
Ball to_ball(const Number& x, long precision_bits);

}  // namespace ietpc
