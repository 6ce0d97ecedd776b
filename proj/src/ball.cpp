#include "ietpc/ball.hpp"

namespace ietpc {

Ball::Ball(mpq_class center, mpq_class radius) : center_(std::move(center)), radius_(std::move(radius)) {
  center_.canonicalize();
  radius_.canonicalize();
  if (sgn(radius_) < 0) throw Error(ErrorKind::InvalidArgument, "negative ball radius");
}

Ball Ball::from_bounds(const mpq_class& lower, const mpq_class& upper) {
  if (upper < lower) throw Error(ErrorKind::InvalidArgument, "inverted ball bounds");
  return Ball((lower + upper) / 2, (upper - lower) / 2);
}

bool Ball::contains(const Number& x) const {
  return Number(lower()) <= x && x <= Number(upper());
}

bool Ball::contains(const Ball& other) const {
  return lower() <= other.lower() && other.upper() <= upper();
}

bool Ball::overlaps(const Ball& other) const {
  return lower() <= other.upper() && other.lower() <= upper();
}

bool Ball::certainly_less(const Number& x) const { return Number(upper()) < x; }

bool Ball::certainly_greater_equal(const Number& x) const { return Number(lower()) >= x; }

Ball& Ball::operator+=(const Ball& rhs) {
  center_ += rhs.center_;
  radius_ += rhs.radius_;
  return *this;
}

Ball& Ball::operator-=(const Ball& rhs) {
  center_ -= rhs.center_;
  radius_ += rhs.radius_;
  return *this;
}

Ball operator*(const Ball& lhs, const Ball& rhs) {
  mpq_class center = lhs.center_ * rhs.center_;
  mpq_class radius = abs(lhs.center_) * rhs.radius_ + abs(rhs.center_) * lhs.radius_ +
                     lhs.radius_ * rhs.radius_;
  return Ball(std::move(center), std::move(radius));
}

Ball operator*(const mpq_class& k, const Ball& b) {
  return Ball(k * b.center_, abs(k) * b.radius_);
}

Ball Ball::rounded(long bits) const {
  const mpq_class scaled = center_ * pow2(bits);
  mpz_class floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpq_class new_center = mpq_class(floor_value) * pow2(-bits);
  mpq_class error = center_ - new_center;
  return Ball(std::move(new_center), radius_ + error);
}

std::string Ball::to_string() const {
  return rational_to_string(center_) + " +/- " + rational_to_string(radius_);
}

Ball to_ball(const Number& x, long precision_bits) {
  if (precision_bits < 1) throw Error(ErrorKind::InvalidArgument, "precision_bits must be >= 1");
  const mpq_class unit = pow2(-precision_bits);
  if (x.is_rational()) {
    const mpq_class scaled = x.rational_part() * pow2(precision_bits);
    if (scaled.get_den() == 1) return Ball::exact(x.rational_part());
    mpz_class c;
    mpz_fdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return Ball(mpq_class(c) * unit, unit);
  }
  // floor(x * 2^bits) starting from an integer-sqrt estimate, then corrected
  // with exact comparisons.
  const mpq_class scale = pow2(precision_bits);
  const Number scaled_x = x * Number(scale);
  const mpq_class a = x.rational_part() * scale;
  const mpq_class b = x.surd_part() * scale;
  mpz_class floor_a;
  mpz_fdiv_q(floor_a.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  const mpq_class b2d = b * b * x.radicand();
  mpz_class b2d_floor;
  mpz_fdiv_q(b2d_floor.get_mpz_t(), b2d.get_num_mpz_t(), b2d.get_den_mpz_t());
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), b2d_floor.get_mpz_t());
  mpz_class c = sgn(b) > 0 ? mpz_class(floor_a + root) : mpz_class(floor_a - root - 1);
  while (Number(mpq_class(c)) > scaled_x) --c;
  while (Number(mpq_class(c + 1)) <= scaled_x) ++c;
  return Ball(mpq_class(c) * unit, unit);
}

std::string Number::to_decimal(int digits) const {
  if (is_rational()) return rational_to_decimal(a_, digits);
  // 4 bits per decimal digit plus guard bits; the ball lies inside one
  // truncation cell unless x sits within 2^-bits of a cell boundary.
  const Ball ball = to_ball(*this, 4L * digits + 16);
  return rational_to_decimal(ball.center(), digits);
}

}  // namespace ietpc
