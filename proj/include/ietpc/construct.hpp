#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "ietpc/ball.hpp"
#include "ietpc/iet.hpp"
#include "ietpc/numeric.hpp"
#include "ietpc/pc.hpp"
#include "ietpc/words.hpp"

namespace ietpc {

// Truncated gap system of a T-orbit p_1, ..., p_N.
//
// G_k = [S(p_k), S(p_k) + 2^-k] with S(y) = sum of 2^-l over all l >= 1 with
// p_l < y. Only the first N orbit points are known, so S is enclosed as
// [S_N(y), S_N(y) + 2^-N].
class GapSystem {
 public:
  GapSystem(const Iet& t, const Number& seed, std::size_t depth);

  std::size_t depth() const { return orbit_.size(); }
  // p_k, 1-based.
  const Number& point(std::size_t k) const { return orbit_.at(k - 1); }
  const std::vector<Number>& orbit() const { return orbit_; }
  // 0-based IET piece of p_k.
  std::size_t piece_of_point(std::size_t k) const { return pieces_.at(k - 1); }

  // Sum of 2^-l over l <= limit with p_l < y (p_l <= y when inclusive).
  mpq_class partial_sum(const Number& y, bool inclusive = false) const;
  mpq_class partial_sum(const Number& y, bool inclusive, std::size_t limit) const;

  Ball inf_gap(std::size_t k) const;
  Ball sup_gap(std::size_t k) const;
  Ball midpoint(std::size_t k) const;
  // Enclosure of S(y) for y outside the known orbit.
  Ball sum_ball(const Number& y) const;

  const std::vector<Ball>& breakpoints() const { return breakpoints_; }
  const std::vector<std::size_t>& visits() const { return visits_; }
  // Some IET piece was never visited in N steps.
  bool not_transitive() const { return not_transitive_; }
  // sum_{k <= N} |G_k|
  mpq_class total_measure() const { return 1 - pow2(-static_cast<long>(depth())); }
  mpq_class tail() const { return pow2(-static_cast<long>(depth())); }

 private:
  std::vector<Number> orbit_;
  std::vector<std::size_t> pieces_;
  std::vector<Number> sorted_;
  std::vector<std::size_t> sorted_index_;  // 1-based orbit index of sorted_[r]
  std::vector<mpq_class> prefix_;          // prefix_[r] = sum of weights of sorted_[0..r)
  std::vector<Ball> breakpoints_;
  std::vector<std::size_t> visits_;
  bool not_transitive_ = false;
};

// Requires N >= 16; throws OrbitHitsBreakpoint when p_k equals some y_i.
GapSystem build_gap_system(const Iet& t, const Number& seed, std::size_t depth);

struct OrderingReport {
  std::size_t pairs = 0;
  std::size_t decided = 0;
  std::size_t contradictions = 0;
};

// For all k != j up to `limit` (default: the depth): p_k < p_j must match
// sup G_k < inf G_j wherever the balls decide it. Gaps adjacent at depth N
// are separated only by deeper terms, so a deeper system decides more pairs.
OrderingReport check_ordering(const GapSystem& gaps, std::size_t limit = 0);

// Seed T(y_j) for the first j in 1..n-1, then j = 0, whose orbit avoids the
// breakpoints for `depth` steps.
Number default_seed(const Iet& t, std::size_t depth);

struct PieceIntercept {
  Ball value;
  std::size_t gap = 0;         // earliest k with p_k in the piece
  std::size_t second_gap = 0;  // cross-check index
  Ball second_value;
};

struct ConstructedPc {
  // Exact stand-in: the missing tail of the gap sums is spread uniformly,
  // x'_i = S_{N-1}(y_i) + 2^{-(N-1)} y_i. Within 2^{-(N-1)} of the real map.
  PiecewiseContraction map;
  std::vector<Ball> breakpoints;
  std::vector<PieceIntercept> intercepts;
  std::vector<int> signs;
  Number seed;
  GapSystem gaps;
  mpq_class error_bound;
};

// Seed must be the image T(y_j) of a left piece endpoint so that G_1, the
// only gap outside the image of f, sits between piece images.
ConstructedPc build_pc_from_iet(const Iet& t, const Number& seed, std::size_t depth);
ConstructedPc build_pc_from_iet(const Iet& t, std::size_t depth);

struct RotationPc {
  Ball delta;
  Ball breakpoint;
  bool degenerate = false;  // delta not certainly inside (1/2, 1)
};

// delta = 1/4 sum theta_l 2^-l for theta over {1,2}, breakpoint 2 - 2 delta.
RotationPc rotation_pc(const Word& theta);

// f(x) = x/2 + delta mod 1; single piece when delta <= 1/2.
PiecewiseContraction rotation_contraction(const Number& delta);

// R = 1 - sum (f_l) 2^-(l+1) over the Fibonacci word f, radius <= 2^-bits.
Ball rabbit_constant(long precision_bits);

struct SemiconjugacyReport {
  std::size_t samples = 0;
  std::size_t length = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t undecided = 0;
  bool isomorphic = true;
  std::optional<std::size_t> first_disagreement_gap;
  std::optional<std::size_t> first_disagreement_step;

  bool passed() const { return disagree == 0; }
};

// Codes the midpoint of G_k under the ball-valued f_T and p_k under T for
// k = 1..samples. `intercept_shift` perturbs every intercept, for mutation
// tests.
SemiconjugacyReport verify_semiconjugacy(const ConstructedPc& cpc, const Iet& t, std::size_t length,
                                         std::size_t samples, const mpq_class& intercept_shift = 0);

}  // namespace ietpc
