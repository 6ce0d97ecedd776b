#include <gtest/gtest.h>

#include "ietpc/construct.hpp"

using namespace ietpc;

namespace {

const Number phi = Number::golden_ratio();
const Number alpha = Number(2) - phi;
// Printed value of the rabbit constant, truncated after 19 digits.
const mpq_class kRabbitPrinted("7098034428612913146/10000000000000000000");

Iet golden() { return Iet::rotation(alpha); }

// First piece reversed; the seed orbit avoids the breakpoints well past depth 200.
Iet flipped_iet() {
  return Iet::from_permutation({Number::parse("(10-3*sqrt(5))/8"), Number::parse("(8-3*sqrt(5))/12"),
                                Number::parse("(11-4*sqrt(5))/8"), Number::parse("(-55+27*sqrt(5))/24")},
                               {3, 2, 4, 1}, {-1, 1, 1, 1});
}

// The truncated digits leave R in [printed, printed + 10^-19].
Ball printed_rabbit() {
  const mpq_class half_ulp("1/20000000000000000000");
  return Ball(kRabbitPrinted + half_ulp, half_ulp);
}

}  // namespace

TEST(GapSystem, Basics) {
  const GapSystem gaps = build_gap_system(golden(), alpha, 64);
  EXPECT_EQ(gaps.depth(), 64u);
  EXPECT_EQ(gaps.point(1), alpha);
  EXPECT_EQ(gaps.total_measure(), 1 - pow2(-64));
  for (std::size_t k = 1; k <= 64; ++k) {
    const Ball width = gaps.sup_gap(k) - gaps.inf_gap(k);
    EXPECT_TRUE(width.contains(Number(pow2(-static_cast<long>(k)))));
    EXPECT_LE(gaps.inf_gap(k).radius(), pow2(-64));
  }
  EXPECT_THROW(build_gap_system(golden(), alpha, 8), Error);
  try {
    build_gap_system(golden(), Number(0), 32);
    FAIL();
  } catch (const OrbitError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrbitHitsBreakpoint);
    EXPECT_EQ(e.step(), 1u);
  }
  // Periodic orbit: built anyway, every piece visited.
  const GapSystem third = build_gap_system(Iet::rotation(Number::rational(1, 3)), Number::rational(1, 6), 32);
  EXPECT_FALSE(third.not_transitive());
  EXPECT_EQ(third.point(4), Number::rational(1, 6));
}

TEST(GapSystem, OrderingEquivalence) {
  const GapSystem gaps = build_gap_system(golden(), alpha, 64);
  const OrderingReport r = check_ordering(gaps);
  EXPECT_EQ(r.pairs, 64u * 63u);
  EXPECT_EQ(r.contradictions, 0u);
  EXPECT_GT(r.decided, r.pairs * 9 / 10);
  const OrderingReport deep = check_ordering(build_gap_system(golden(), alpha, 160), 64);
  EXPECT_EQ(deep.pairs, r.pairs);
  EXPECT_EQ(deep.contradictions, 0u);
  EXPECT_EQ(deep.decided, deep.pairs);
  EXPECT_THROW(check_ordering(gaps, 65), Error);
}

TEST(GapSystem, GapMeasureIdentity) {
  for (const Iet& t : {golden(), flipped_iet()}) {
    const std::size_t depth = 80;
    const GapSystem gaps = build_gap_system(t, default_seed(t, depth), depth);
    for (std::size_t i = 0; i < t.size(); ++i) {
      mpq_class measure = 0;
      for (std::size_t k = 1; k <= depth; ++k) {
        if (gaps.piece_of_point(k) == i) measure += pow2(-static_cast<long>(k));
      }
      const Ball width = gaps.breakpoints()[i + 1] - gaps.breakpoints()[i];
      EXPECT_TRUE(width.inflated(pow2(-static_cast<long>(depth) + 1)).contains(Number(measure)));
    }
  }
}

TEST(GapSystem, MonotoneExtension) {
  const GapSystem gaps = build_gap_system(golden(), alpha, 64);
  std::vector<std::size_t> order(64);
  for (std::size_t k = 0; k < 64; ++k) order[k] = k + 1;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return gaps.inf_gap(a).center() < gaps.inf_gap(b).center(); });
  for (std::size_t r = 1; r < order.size(); ++r) EXPECT_LT(gaps.point(order[r - 1]), gaps.point(order[r]));
}

TEST(Construct, GoldenRotation) {
  const ConstructedPc cpc = build_pc_from_iet(golden(), 64);
  EXPECT_EQ(cpc.seed, alpha);
  ASSERT_EQ(cpc.map.size(), 2u);
  for (const Number& s : cpc.map.slopes()) EXPECT_EQ(s, Number::rational(1, 2));
  const Ball r = rabbit_constant(80);
  EXPECT_TRUE(cpc.breakpoints[1].contains(r));
  const Ball delta = Ball::exact(1) - mpq_class(1, 2) * r;
  EXPECT_TRUE(cpc.intercepts[0].value.overlaps(delta));
  EXPECT_TRUE(cpc.intercepts[1].value.overlaps(delta - Ball::exact(1)));
  EXPECT_LE(cpc.error_bound, pow2(-60));
  // The exact stand-in stays within its bound of the enclosures.
  EXPECT_TRUE(cpc.breakpoints[1].inflated(cpc.error_bound).contains(cpc.map.breakpoints()[1]));
}

TEST(Construct, SlopeAndInterceptLaws) {
  for (const Iet& t : {golden(), flipped_iet(), Iet::from_permutation({Number::rational(1, 4), phi / Number(2) - Number::rational(3, 4), Number::rational(3, 2) - phi / Number(2)}, {3, 2, 1})}) {
    const ConstructedPc cpc = build_pc_from_iet(t, 72);
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_EQ(cpc.map.slopes()[i], Number(t.signs()[i]) * Number::rational(1, 2));
      EXPECT_TRUE(cpc.intercepts[i].value.overlaps(cpc.intercepts[i].second_value));
      EXPECT_TRUE(cpc.intercepts[i].value.inflated(cpc.error_bound).contains(cpc.map.intercepts()[i]));
    }
  }
}

TEST(Construct, FlippedPieceReversesGaps) {
  const Iet t = flipped_iet();
  const ConstructedPc cpc = build_pc_from_iet(t, 72);
  EXPECT_EQ(cpc.map.slopes()[0], Number::rational(-1, 2));
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k < 72 && ks.size() < 3; ++k) {
    if (cpc.gaps.piece_of_point(k) == 0) ks.push_back(k);
  }
  ASSERT_EQ(ks.size(), 3u);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      if (a == b) continue;
      const bool before = cpc.gaps.inf_gap(ks[a]).center() < cpc.gaps.inf_gap(ks[b]).center();
      const bool after = cpc.gaps.inf_gap(ks[a] + 1).center() < cpc.gaps.inf_gap(ks[b] + 1).center();
      EXPECT_NE(before, after);
      const Number ya = Number(cpc.gaps.midpoint(ks[a]).center());
      const Number yb = Number(cpc.gaps.midpoint(ks[b]).center());
      EXPECT_EQ(ya < yb, cpc.map.eval(ya) > cpc.map.eval(yb));
    }
  }
  const SemiconjugacyReport report = verify_semiconjugacy(cpc, t, 40, 20);
  EXPECT_EQ(report.disagree, 0u);
}

TEST(Construct, Refusals) {
  const Iet id({Number(0), Number(1)}, {1}, {Number(0)});
  for (const Number& seed : {Number::rational(1, 3), Number(0)}) {
    try {
      build_pc_from_iet(id, seed, 32);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotTransitiveEvidence);
    }
  }
  try {
    build_pc_from_iet(golden(), Number::rational(1, 10), 32);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Construct, RotationPc) {
  const RotationPc g = rotation_pc(golden().coding(alpha, 200));
  EXPECT_FALSE(g.degenerate);
  EXPECT_LE(g.delta.radius(), pow2(-199));
  EXPECT_TRUE(g.delta.overlaps(Ball(mpq_class("6450982785693543427/10000000000000000000"), mpq_class(1, 1000000000))));
  EXPECT_TRUE(g.breakpoint.overlaps(Ball::exact(2) - mpq_class(2) * g.delta));

  const RotationPc twos = rotation_pc(Word(std::vector<Letter>(40, 2), 2));
  EXPECT_TRUE(twos.delta.contains(Number(1)));
  EXPECT_TRUE(twos.degenerate);
  const RotationPc ones = rotation_pc(Word(std::vector<Letter>(40, 1), 2));
  EXPECT_TRUE(ones.delta.contains(Number::rational(1, 2)));
  try {
    rotation_pc(Word::parse("12312312"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadAlphabet);
  }
}

TEST(Construct, RabbitConstant) {
  const Ball r60 = rabbit_constant(60);
  EXPECT_LE(r60.radius(), pow2(-60));
  EXPECT_TRUE(r60.overlaps(printed_rabbit()));
  const Ball r8 = rabbit_constant(8);
  const Ball r16 = rabbit_constant(16);
  EXPECT_TRUE(r8.contains(r16));
  EXPECT_TRUE(r16.contains(r60));
  const RotationPc g = rotation_pc(golden().coding(alpha, 200));
  EXPECT_TRUE(g.delta.overlaps(Ball::exact(1) - mpq_class(1, 2) * r60));
}

TEST(Construct, RotationConsistency) {
  const ConstructedPc cpc = build_pc_from_iet(golden(), 96);
  const RotationPc rot = rotation_pc(golden().coding(alpha, 96));
  EXPECT_TRUE(cpc.intercepts[0].value.overlaps(rot.delta));
  EXPECT_TRUE(cpc.breakpoints[1].overlaps(rot.breakpoint));
}

TEST(Construct, Semiconjugacy) {
  const ConstructedPc cpc = build_pc_from_iet(golden(), 64);
  const SemiconjugacyReport r = verify_semiconjugacy(cpc, golden(), 64, 20);
  EXPECT_EQ(r.samples, 20u);
  EXPECT_EQ(r.disagree, 0u);
  EXPECT_LT(r.undecided * 20, r.samples * r.length);
  EXPECT_TRUE(r.isomorphic);

  const SemiconjugacyReport one = verify_semiconjugacy(cpc, golden(), 1, 5);
  EXPECT_EQ(one.agree, 5u);

  const SemiconjugacyReport mutated = verify_semiconjugacy(cpc, golden(), 20, 20, mpq_class(1, 1000));
  EXPECT_GT(mutated.disagree, 0u);
}
