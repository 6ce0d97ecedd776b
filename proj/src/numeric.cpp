#include "ietpc/numeric.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace ietpc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IncompatibleRadicands: return "IncompatibleRadicands";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::PrefixTooShort: return "PrefixTooShort";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BadAlphabet: return "BadAlphabet";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::OrbitHitsBreakpoint: return "OrbitHitsBreakpoint";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotContracting: return "NotContracting";
    case ErrorKind::ImageEscapes: return "ImageEscapes";
    case ErrorKind::DenominatorBlowup: return "DenominatorBlowup";
    case ErrorKind::PeriodicOrbit: return "PeriodicOrbit";
    case ErrorKind::InsufficientVisits: return "InsufficientVisits";
    case ErrorKind::NotTransitiveEvidence: return "NotTransitiveEvidence";
    case ErrorKind::InterceptMismatch: return "InterceptMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::pair<std::int64_t, std::int64_t> square_free_decomposition(std::int64_t d) {
  if (d <= 0) throw Error(ErrorKind::InvalidArgument, "radicand must be positive");
  std::int64_t root = 1;
  std::int64_t rest = d;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      root *= p;
    }
  }
  return {rest, root};
}

mpq_class pow2(long exponent) {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) return mpq_class(power);
  mpq_class q(mpz_class(1), power);
  q.canonicalize();
  return q;
}

std::size_t bit_size(const mpq_class& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::string rational_to_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rational_to_decimal(const mpq_class& q, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = q.get_num() * scale;
  mpz_class floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  const bool negative = floor_value < 0;
  mpz_class magnitude = abs(floor_value);
  mpz_class int_part = magnitude / scale;
  mpz_class frac_part = magnitude % scale;
  std::string frac = frac_part.get_str();
  if (static_cast<int>(frac.size()) < digits) frac.insert(0, digits - frac.size(), '0');
  std::string out = (negative ? "-" : "") + int_part.get_str();
  if (digits > 0) out += "." + frac;
  return out;
}

Number::Number(mpq_class value) : a_(std::move(value)) { a_.canonicalize(); }

Number::Number(mpq_class a, mpq_class b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  normalize();
}

Number Number::rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Number(std::move(q));
}

Number Number::surd(const mpq_class& a, const mpq_class& b, std::int64_t d) {
  auto [free_part, root] = square_free_decomposition(d);
  mpq_class coeff = b * root;
  if (free_part == 1) return Number(mpq_class(a + coeff));
  return Number(a, coeff, free_part);
}

Number Number::golden_ratio() { return surd(mpq_class(1, 2), mpq_class(1, 2), 5); }

void Number::normalize() {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 0 || sgn(b_) == 0) {
    b_ = 0;
    d_ = 0;
  }
}

std::int64_t Number::common_radicand(const Number& rhs) const {
  if (d_ == 0) return rhs.d_;
  if (rhs.d_ == 0 || rhs.d_ == d_) return d_;
  throw Error(ErrorKind::IncompatibleRadicands,
              "sqrt(" + std::to_string(d_) + ") and sqrt(" + std::to_string(rhs.d_) + ")");
}

int Number::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and b^2 d wins. They never tie since
  // d is square-free and b != 0.
  mpq_class lhs = a_ * a_;
  mpq_class rhs = b_ * b_ * d_;
  return cmp(lhs, rhs) > 0 ? sa : sb;
}

Number Number::operator-() const { return Number(-a_, -b_, d_); }

Number& Number::operator+=(const Number& rhs) {
  d_ = common_radicand(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  normalize();
  return *this;
}

Number& Number::operator-=(const Number& rhs) {
  d_ = common_radicand(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  normalize();
  return *this;
}

Number& Number::operator*=(const Number& rhs) {
  const std::int64_t d = common_radicand(rhs);
  mpq_class a = a_ * rhs.a_ + b_ * rhs.b_ * d;
  mpq_class b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

Number& Number::operator/=(const Number& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  const std::int64_t d = common_radicand(rhs);
  if (rhs.d_ == 0) {
    a_ /= rhs.a_;
    b_ /= rhs.a_;
    d_ = d;
    normalize();
    return *this;
  }
  // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
  mpq_class norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * d;
  Number conj(rhs.a_ / norm, -rhs.b_ / norm, d);
  return *this *= conj;
}

bool operator==(const Number& x, const Number& y) {
  return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

std::strong_ordering operator<=>(const Number& x, const Number& y) {
  if (x.d_ == 0 && y.d_ == 0) {
    const int c = cmp(x.a_, y.a_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Ordering compare(const Number& x, const Number& y) {
  const auto c = x <=> y;
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

std::size_t Number::bit_size() const {
  std::size_t bits = ietpc::bit_size(a_);
  if (d_ != 0) bits += ietpc::bit_size(b_);
  return bits;
}

std::string Number::to_string() const {
  if (d_ == 0) return rational_to_string(a_);
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
  mpz_class a = a_.get_num() * (den / a_.get_den());
  mpz_class b = b_.get_num() * (den / b_.get_den());
  std::ostringstream out;
  out << "(" << a.get_str() << "+" << b.get_str() << "*sqrt(" << d_ << "))/" << den.get_str();
  return out.str();
}

std::size_t Number::hash() const {
  auto mix = [](std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  };
  auto hash_z = [](const mpz_class& z) -> std::size_t {
    const std::size_t n = mpz_size(z.get_mpz_t());
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    for (std::size_t i = 0; i < n; ++i)
      h = h * 1099511628211ULL ^ static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i));
    return h;
  };
  std::size_t h = hash_z(a_.get_num());
  h = mix(h, hash_z(a_.get_den()));
  if (d_ != 0) {
    h = mix(h, hash_z(b_.get_num()));
    h = mix(h, hash_z(b_.get_den()));
    h = mix(h, static_cast<std::size_t>(d_));
  }
  return h;
}

double Number::to_double() const {
  if (d_ == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

namespace {

// Recursive-descent parser over the scalar expression grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := number | 'sqrt' '(' expr ')' | '(' expr ')'
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Number parse() {
    Number value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Number expr() {
    Number value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  Number term() {
    Number value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        value /= unary();
      } else {
        return value;
      }
    }
  }

  Number unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  Number primary() {
    skip_space();
    if (accept('(')) {
      Number value = expr();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      Number arg = expr();
      if (!accept(')')) fail("expected ')'");
      if (!arg.is_rational() || arg.rational_part().get_den() != 1 || arg.sign() < 0)
        fail("sqrt expects a non-negative integer");
      const mpz_class n = arg.rational_part().get_num();
      if (n == 0) return Number(0);
      if (!n.fits_slong_p()) fail("radicand too large");
      return Number::surd(0, 1, n.get_si());
    }
    return literal();
  }

  Number literal() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    mpz_class int_part(std::string(text_.substr(start, pos_ - start)));
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      const std::size_t frac_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string frac(text_.substr(frac_start, pos_ - frac_start));
      if (frac.empty()) return Number(mpq_class(int_part));
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      return Number::rational(int_part * scale + mpz_class(frac), scale);
    }
    return Number(mpq_class(int_part));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Number Number::parse(std::string_view text) { return ScalarParser(text).parse(); }

}  // namespace ietpc
