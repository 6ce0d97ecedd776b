#pragma once

#include <cstddef>
#include <vector>

#include "ietpc/interval.hpp"
#include "ietpc/numeric.hpp"
#include "ietpc/words.hpp"

namespace ietpc {

// Interval exchange transformation of [0,1) with exact parameters.
//
// Piece i (0-based) is [x_i, x_{i+1}) and maps by t -> sign_i * t + b_i.
// Flipped pieces (sign -1) have images open on the left and closed on the
// right; such maps are bijective only up to finitely many endpoints, which
// are counted in point_defects(). Letters in codings are 1-based.
class Iet {
 public:
  Iet(std::vector<Number> breakpoints, std::vector<int> signs, std::vector<Number> translations);

  // x -> x + alpha (mod 1), pieces [0, 1-alpha) and [1-alpha, 1).
  static Iet rotation(const Number& alpha);
  // Pieces of the given lengths, laid out in the image in `image_order`
  // (1-based piece labels, bottom to top). `signs` defaults to all +1.
  static Iet from_permutation(const std::vector<Number>& lengths, const std::vector<int>& image_order,
                              std::vector<int> signs = {});

  std::size_t size() const { return signs_.size(); }
  const std::vector<Number>& breakpoints() const { return breakpoints_; }
  const std::vector<int>& signs() const { return signs_; }
  const std::vector<Number>& translations() const { return translations_; }
  const std::vector<Interval>& images() const { return images_; }
  Interval piece(std::size_t i) const { return Interval::half_open(breakpoints_[i], breakpoints_[i + 1]); }
  bool is_standard() const;
  std::size_t point_defects() const { return point_defects_; }

  // 0-based index of the piece containing x; OutOfDomain outside [0,1).
  std::size_t piece_of(const Number& x) const;
  bool is_breakpoint(const Number& x) const;

  Number eval(const Number& x) const;
  // Inverse through the first image (in piece order) containing y.
  Number eval_inverse(const Number& y) const;

  Word coding(const Number& x, std::size_t length) const;

  // False iff some proper prefix union of pieces is mapped into itself.
  bool irreducible() const;

 private:
  std::vector<Number> breakpoints_;
  std::vector<int> signs_;
  std::vector<Number> translations_;
  std::vector<Interval> images_;
  std::size_t point_defects_ = 0;
};

struct IdocCertificate {
  enum class Verdict { PassedToDepth, FailedDisjoint, FailedFinite };

  Verdict verdict = Verdict::PassedToDepth;
  std::size_t depth = 0;
  // 1-based discontinuity indices and orbit steps:
  //   FailedFinite(i, k):        T^k(x_i) repeats an earlier point of its own orbit
  //   FailedDisjoint(i, j, k, l): T^k(x_i) == T^l(x_j)
  int i = 0;
  int j = 0;
  std::size_t k = 0;
  std::size_t l = 0;

  bool passed() const { return verdict == Verdict::PassedToDepth; }
};

// Finite-depth check of the infinite distinct orbit condition. Passing is a
// certificate to depth K, not a proof.
IdocCertificate idoc_check(const Iet& t, std::size_t depth);

struct RefinementComplexity {
  ComplexityTable table;
  // new_points[l] = number of new division points contributed by the l-th
  // backward image of the discontinuities.
  std::vector<long> new_points;
  bool nonincreasing = true;
};

// Counts the atoms of the refined partition P v T^-1 P v ... v T^-(k-1) P
// through the backward orbits of the discontinuities. x_regular must have a
// forward orbit avoiding x_0..x_{n-1} for k_max steps.
RefinementComplexity refinement_complexity(const Iet& t, const Number& x_regular, int k_max);

}  // namespace ietpc
