#include <gtest/gtest.h>

#include <random>

#include "ietpc/construct.hpp"
#include "ietpc/pc.hpp"

using namespace ietpc;

namespace {

const Number half = Number::rational(1, 2);

PiecewiseContraction one_piece() { return PiecewiseContraction({Number(0), Number(1)}, {half}, {Number::rational(1, 3)}); }

PiecewiseContraction two_piece() {
  return PiecewiseContraction({Number(0), half, Number(1)}, {half, half},
                              {Number::rational(3, 4), Number::rational(-1, 4)});
}

std::optional<PiecewiseContraction> random_pc(std::mt19937_64& rng) {
  auto q = [&](long den) {
    mpq_class v(static_cast<long>(rng() % static_cast<unsigned long>(den)), den);
    v.canonicalize();
    return Number(v);
  };
  const Number x1 = q(97);
  if (x1.is_zero()) return std::nullopt;
  try {
    return PiecewiseContraction({Number(0), x1, Number(1)}, {half, half}, {q(101), q(103) - x1 * half});
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(Pc, Construction) {
  EXPECT_NO_THROW(two_piece());
  const PiecewiseContraction f = one_piece();
  EXPECT_EQ(f.eval(Number::rational(2, 3)), Number::rational(2, 3));
  EXPECT_EQ(f.lambda(), half);
  auto kind = [](auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind([] { PiecewiseContraction({Number(0), half, Number(1)}, {half, half}, {Number(0), Number::rational(-1, 4)}); }),
            ErrorKind::NotInjective);
  EXPECT_EQ(kind([] { PiecewiseContraction({Number(0), Number(1)}, {Number(1)}, {Number(0)}); }), ErrorKind::NotContracting);
  EXPECT_EQ(kind([] { PiecewiseContraction({Number(0), Number(1)}, {half}, {Number::rational(3, 4)}); }),
            ErrorKind::ImageEscapes);
  EXPECT_EQ(kind([] { PiecewiseContraction({Number(0), Number(1)}, {Number(0)}, {Number(0)}); }), ErrorKind::NotInjective);
}

TEST(Pc, Coding) {
  EXPECT_EQ(coding(one_piece(), Number(0), 5).word.to_text(), "11111");
  EXPECT_EQ(coding(two_piece(), Number(0), 12).word.to_text(), "121212121212");
  // Rational stand-in delta = 1/3: x/2 + 1/3 on one piece.
  const PcCoding c = coding(rotation_contraction(Number::rational(1, 3)), Number(0), 10);
  EXPECT_TRUE(detect_eventual_period(c.word));
  const PcCoding d = coding(rotation_contraction(Number::rational(5, 8)), Number(0), 64);
  EXPECT_TRUE(detect_eventual_period(d.word));
}

TEST(Pc, BlowupAndBallMode) {
  const PiecewiseContraction f = rotation_contraction(Number::rational(2, 3));
  OrbitOptions tight;
  tight.max_bits = 40;
  try {
    coding(f, Number::rational(1, 7), 100, tight);
    FAIL();
  } catch (const OrbitError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DenominatorBlowup);
  }
  tight.ball_fallback = true;
  const PcCoding approx = coding(f, Number::rational(1, 7), 100, tight);
  EXPECT_TRUE(approx.approximate);
  const PcCoding exact = coding(f, Number::rational(1, 7), 100);
  EXPECT_FALSE(exact.approximate);
  EXPECT_EQ(approx.word, exact.word);
}

TEST(Pc, Certify) {
  const auto c1 = certify_periodic(one_piece(), Number(0), 50);
  ASSERT_TRUE(c1);
  EXPECT_EQ(c1->preperiod, 0u);
  EXPECT_EQ(c1->period, 1u);
  EXPECT_EQ(c1->cylinder, Interval::half_open(Number(0), Number(1)));
  EXPECT_EQ(c1->image, Interval::half_open(Number::rational(1, 3), Number::rational(5, 6)));
  EXPECT_TRUE(validate_certificate(one_piece(), Number(0), *c1));

  const auto c2 = certify_periodic(two_piece(), Number(0), 50);
  ASSERT_TRUE(c2);
  EXPECT_EQ(c2->period, 2u);
  EXPECT_EQ(c2->word.to_text(), "12");
  EXPECT_EQ(c2->slope, Number::rational(1, 4));
  // f^2(t) = t/4 + 1/8 on the cylinder; fixed point 1/6.
  EXPECT_TRUE(c2->cylinder.contains(Number::rational(1, 6)));
  EXPECT_TRUE(validate_certificate(two_piece(), Number(0), *c2));

  PeriodicCertificate broken = *c2;
  broken.image.hi = Number::rational(3, 4);
  EXPECT_FALSE(validate_certificate(two_piece(), Number(0), broken));
}

TEST(PcProperty, Contraction) {
  std::mt19937_64 rng(10);
  int checked = 0;
  while (checked < 50) {
    const auto f = random_pc(rng);
    if (!f) continue;
    ++checked;
    for (int i = 0; i < 20; ++i) {
      mpq_class a(static_cast<long>(rng() % 1000), 1000), b(static_cast<long>(rng() % 1000), 1000);
      a.canonicalize();
      b.canonicalize();
      const Number x(a), y(b);
      if (f->piece_of(x) != f->piece_of(y)) continue;
      EXPECT_LE((f->eval(x) - f->eval(y)).abs(), f->lambda() * (x - y).abs());
    }
  }
}

TEST(PcProperty, CertificateSoundness) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 40) {
    const auto f = random_pc(rng);
    if (!f) continue;
    ++checked;
    const Number x = Number::rational(static_cast<long>(rng() % 89), 89);
    const auto cert = certify_periodic(*f, x, 2000);
    if (!cert) continue;
    EXPECT_TRUE(validate_certificate(*f, x, *cert));
    const Word w = coding(*f, x, cert->preperiod + 10 * cert->period).word;
    for (std::size_t r = 0; r < 10; ++r) {
      for (std::size_t j = 0; j < cert->period; ++j)
        EXPECT_EQ(w[cert->preperiod + r * cert->period + j], cert->word[j]);
    }
    // The candidate detector agrees up to phase and multiples.
    const auto candidate = detect_eventual_period(coding(*f, x, cert->preperiod + 40 * cert->period).word);
    ASSERT_TRUE(candidate);
    EXPECT_EQ(cert->period % candidate->period, 0u);
    EXPECT_LE(candidate->preperiod, cert->preperiod);
  }
}

TEST(PcProperty, Genericity) {
  std::mt19937_64 rng(12);
  int tried = 0;
  int certified = 0;
  while (tried < 100) {
    const auto f = random_pc(rng);
    if (!f) continue;
    ++tried;
    if (certify_periodic(*f, Number(0), 5000)) ++certified;
  }
  EXPECT_GE(certified, 90);
}

TEST(Pc, EmpiricalFactorRejectsPeriodic) {
  try {
    empirical_factor(one_piece(), Number(0), 1000, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PeriodicOrbit);
  }
  // Rotation by 1/4 coded from 1/8 has a rational delta.
  const Number quarter = Number::rational(1, 4);
  const Word theta = Iet::rotation(quarter).coding(Number::rational(1, 8), 64);
  const RotationPc rot = rotation_pc(theta);
  try {
    empirical_factor(rotation_contraction(Number(rot.delta.center())), Number(0), 1000, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PeriodicOrbit);
  }
  EXPECT_THROW(empirical_factor(two_piece(), Number(0), 10, 10), Error);
}

TEST(PcProperty, EmpiricalFactorMonotone) {
  const Number alpha = Number(2) - Number::golden_ratio();
  const RotationPc rot = rotation_pc(Iet::rotation(alpha).coding(alpha, 8192));
  const PiecewiseContraction f = rotation_contraction(Number(rot.delta.center()));
  // Balls coarser than delta collapse the orbit onto a short cycle.
  OrbitOptions opts;
  opts.max_bits = 4096;
  opts.ball_fallback = true;
  opts.ball_precision = 8192;
  const EmpiricalFactor small = empirical_factor(f, Number(0), 4000, 200, opts);
  const EmpiricalFactor large = empirical_factor(f, Number(0), 8000, 200, opts);
  for (std::size_t i = 1; i < small.cdf.size(); ++i) EXPECT_LE(small.cdf[i - 1], small.cdf[i]);
  for (std::size_t i = 1; i < large.breakpoints.size(); ++i) EXPECT_LT(large.breakpoints[i - 1], large.breakpoints[i]);
  EXPECT_LE(large.residual, small.residual);
}
