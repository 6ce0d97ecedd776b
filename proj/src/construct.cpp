#include "ietpc/construct.hpp"

#include <algorithm>
#include <numeric>

namespace ietpc {

namespace {

mpq_class weight(std::size_t k) { return pow2(-static_cast<long>(k)); }

Ball tail_ball(const mpq_class& partial, std::size_t depth) {
  const mpq_class half_tail = pow2(-static_cast<long>(depth) - 1);
  return Ball(partial + half_tail, half_tail);
}

}  // namespace

GapSystem::GapSystem(const Iet& t, const Number& seed, std::size_t depth) {
  if (depth < 16) throw Error(ErrorKind::InvalidArgument, "gap system depth must be >= 16");
  orbit_.reserve(depth);
  visits_.assign(t.size(), 0);
  Number p = seed;
  for (std::size_t k = 1; k <= depth; ++k) {
    if (t.is_breakpoint(p))
      throw OrbitError(ErrorKind::OrbitHitsBreakpoint, k, "p_" + std::to_string(k) + " = " + p.to_string() +
                                                              " is a breakpoint");
    const std::size_t i = t.piece_of(p);
    orbit_.push_back(p);
    pieces_.push_back(i);
    ++visits_[i];
    if (k < depth) p = t.eval(p);
  }
  not_transitive_ = std::any_of(visits_.begin(), visits_.end(), [](std::size_t v) { return v == 0; });

  sorted_index_.resize(depth);
  std::iota(sorted_index_.begin(), sorted_index_.end(), std::size_t{1});
  std::stable_sort(sorted_index_.begin(), sorted_index_.end(),
                   [&](std::size_t a, std::size_t b) { return orbit_[a - 1] < orbit_[b - 1]; });
  sorted_.reserve(depth);
  prefix_.assign(depth + 1, 0);
  for (std::size_t r = 0; r < depth; ++r) {
    sorted_.push_back(orbit_[sorted_index_[r] - 1]);
    prefix_[r + 1] = prefix_[r] + weight(sorted_index_[r]);
  }

  for (const Number& y : t.breakpoints()) breakpoints_.push_back(sum_ball(y));
  breakpoints_.front() = Ball::exact(0);
  breakpoints_.back() = Ball::exact(1);
}

mpq_class GapSystem::partial_sum(const Number& y, bool inclusive) const {
  const auto it = inclusive ? std::upper_bound(sorted_.begin(), sorted_.end(), y)
                            : std::lower_bound(sorted_.begin(), sorted_.end(), y);
  return prefix_[static_cast<std::size_t>(it - sorted_.begin())];
}

mpq_class GapSystem::partial_sum(const Number& y, bool inclusive, std::size_t limit) const {
  mpq_class sum = partial_sum(y, inclusive);
  for (std::size_t l = limit + 1; l <= depth(); ++l) {
    const auto c = orbit_[l - 1] <=> y;
    if (c < 0 || (inclusive && c == 0)) sum -= weight(l);
  }
  return sum;
}

Ball GapSystem::inf_gap(std::size_t k) const { return tail_ball(partial_sum(point(k)), depth()); }

Ball GapSystem::sup_gap(std::size_t k) const { return inf_gap(k) + Ball::exact(weight(k)); }

Ball GapSystem::midpoint(std::size_t k) const { return inf_gap(k) + Ball::exact(weight(k + 1)); }

Ball GapSystem::sum_ball(const Number& y) const { return tail_ball(partial_sum(y), depth()); }

GapSystem build_gap_system(const Iet& t, const Number& seed, std::size_t depth) { return GapSystem(t, seed, depth); }

OrderingReport check_ordering(const GapSystem& gaps, std::size_t limit) {
  OrderingReport report;
  if (limit > gaps.depth()) throw Error(ErrorKind::InvalidArgument, "limit exceeds depth");
  const std::size_t n = limit == 0 ? gaps.depth() : limit;
  std::vector<Ball> inf(n + 1);
  std::vector<Ball> sup(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    inf[k] = gaps.inf_gap(k);
    sup[k] = gaps.sup_gap(k);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (j == k) continue;
      ++report.pairs;
      const bool orbit_less = gaps.point(k) < gaps.point(j);
      const bool gap_less = sup[k].certainly_less(inf[j]);
      const bool gap_not_less = inf[j].upper() < sup[k].lower();
      if (!gap_less && !gap_not_less) continue;
      ++report.decided;
      if (orbit_less != gap_less) ++report.contradictions;
    }
  }
  return report;
}

Number default_seed(const Iet& t, std::size_t depth) {
  std::vector<std::size_t> order;
  for (std::size_t j = 1; j < t.size(); ++j) order.push_back(j);
  order.push_back(0);
  std::optional<OrbitError> last;
  std::optional<Error> escaped;
  for (const std::size_t j : order) {
    const Number y = t.breakpoints()[j];
    const Number candidate = Number(t.signs()[j]) * y + t.translations()[j];
    try {
      GapSystem probe(t, candidate, depth);
      return candidate;
    } catch (const OrbitError& e) {
      last = e;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutOfDomain) throw;
      escaped = e;
    }
  }
  if (last) throw *last;
  throw *escaped;
}

ConstructedPc build_pc_from_iet(const Iet& t, const Number& seed, std::size_t depth) {
  const std::size_t n = t.size();
  if (n == 1) throw Error(ErrorKind::NotTransitiveEvidence, "a 1-IET is the identity and has no dense orbit");
  const auto& y = t.breakpoints();
  std::optional<std::size_t> seed_piece;
  for (std::size_t j = 0; j < n && !seed_piece; ++j) {
    if (Number(t.signs()[j]) * y[j] + t.translations()[j] == seed) seed_piece = j;
  }
  if (!seed_piece)
    throw Error(ErrorKind::InvalidArgument, "seed " + seed.to_string() + " is not the image of a piece's left end");

  GapSystem gaps(t, seed, depth);
  if (gaps.not_transitive())
    throw Error(ErrorKind::NotTransitiveEvidence, "some piece is never visited in " + std::to_string(depth) + " steps");

  // Exact stand-in.
  const long nn = static_cast<long>(depth);
  const Number spread_domain(pow2(-(nn - 1)));
  const Number spread_image(pow2(-nn));
  std::vector<Number> breakpoints;
  for (std::size_t i = 0; i <= n; ++i)
    breakpoints.push_back(Number(gaps.partial_sum(y[i], false, depth - 1)) + spread_domain * y[i]);
  std::vector<Number> slopes;
  std::vector<Number> intercepts;
  const Number half = Number::rational(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const int sigma = t.signs()[i];
    const Number left_image = Number(sigma) * y[i] + t.translations()[i];
    const Number at_left = Number(gaps.partial_sum(left_image, sigma > 0)) + spread_image * left_image;
    slopes.push_back(Number(sigma) * half);
    intercepts.push_back(at_left - slopes.back() * breakpoints[i]);
  }

  std::vector<PieceIntercept> balls;
  std::vector<int> signs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> ks;
    for (std::size_t k = 1; k < depth && ks.size() < 2; ++k) {
      if (gaps.piece_of_point(k) == i) ks.push_back(k);
    }
    if (ks.size() < 2)
      throw Error(ErrorKind::NotTransitiveEvidence,
                  "piece " + std::to_string(i + 1) + " has fewer than two gap pairs within depth");
    const int sigma = t.signs()[i];
    auto intercept = [&](std::size_t k) {
      const mpq_class h = sigma > 0 ? mpq_class(-1, 2) : mpq_class(1, 2);
      return gaps.inf_gap(k + 1) + h * (sigma > 0 ? gaps.inf_gap(k) : gaps.sup_gap(k));
    };
    PieceIntercept pi{intercept(ks[0]), ks[0], ks[1], intercept(ks[1])};
    if (!pi.value.overlaps(pi.second_value))
      throw Error(ErrorKind::InterceptMismatch, "piece " + std::to_string(i + 1) + ": gaps " +
                                                    std::to_string(ks[0]) + " and " + std::to_string(ks[1]) +
                                                    " give " + pi.value.to_string() + " vs " +
                                                    pi.second_value.to_string());
    balls.push_back(std::move(pi));
    signs.push_back(sigma);
  }

  PiecewiseContraction map(breakpoints, slopes, intercepts);
  mpq_class error = 0;
  const long precision = nn + 16;
  auto account = [&](const Ball& b, const Number& exact) {
    const Ball e = to_ball(exact, precision);
    mpq_class d = b.center() - e.center();
    if (d < 0) d = -d;
    const mpq_class bound = d + b.radius() + e.radius();
    if (bound > error) error = bound;
  };
  for (std::size_t i = 0; i <= n; ++i) account(gaps.breakpoints()[i], breakpoints[i]);
  for (std::size_t i = 0; i < n; ++i) account(balls[i].value, intercepts[i]);

  std::vector<Ball> ball_breakpoints = gaps.breakpoints();
  return ConstructedPc{std::move(map), std::move(ball_breakpoints), std::move(balls), std::move(signs),
                       seed, std::move(gaps), error};
}

ConstructedPc build_pc_from_iet(const Iet& t, std::size_t depth) {
  return build_pc_from_iet(t, default_seed(t, depth), depth);
}

RotationPc rotation_pc(const Word& theta) {
  if (theta.size() < 8) throw Error(ErrorKind::InvalidArgument, "rotation_pc needs at least 8 letters");
  mpq_class partial = 0;
  for (std::size_t l = 0; l < theta.size(); ++l) {
    const Letter s = theta[l];
    if (s != 1 && s != 2)
      throw Error(ErrorKind::BadAlphabet, "letter " + std::to_string(s) + " at position " + std::to_string(l) +
                                              " is not in {1,2}");
    partial += s * pow2(-static_cast<long>(l) - 2);
  }
  // Tail 1/4 sum_{l >= L} theta_l 2^-l lies in [2^-(L+1), 2^-L].
  const long len = static_cast<long>(theta.size());
  RotationPc out;
  out.delta = Ball(partial + 3 * pow2(-len - 2), pow2(-len - 2));
  out.breakpoint = Ball::exact(2) - mpq_class(2) * out.delta;
  out.degenerate = !(out.delta.lower() > mpq_class(1, 2) && out.delta.upper() < 1);
  return out;
}

PiecewiseContraction rotation_contraction(const Number& delta) {
  const Number half = Number::rational(1, 2);
  if (delta.sign() < 0 || !(delta < Number(1)))
    throw Error(ErrorKind::InvalidArgument, "delta must lie in [0,1)");
  if (delta <= half) return PiecewiseContraction({Number(0), Number(1)}, {half}, {delta});
  const Number x1 = Number(2) - Number(2) * delta;
  return PiecewiseContraction({Number(0), x1, Number(1)}, {half, half}, {delta, delta - Number(1)});
}

Ball rabbit_constant(long precision_bits) {
  if (precision_bits < 8) throw Error(ErrorKind::InvalidArgument, "rabbit_constant needs precision >= 8 bits");
  const long terms = precision_bits + 2;
  const Word fib = fibonacci_word(static_cast<std::size_t>(terms));
  mpq_class partial = 0;
  for (long l = 0; l < terms; ++l) {
    if (fib[static_cast<std::size_t>(l)] == 1) partial += pow2(-l - 1);
  }
  // Tail lies in [0, 2^-terms].
  const mpq_class half_tail = pow2(-terms - 1);
  return Ball(1 - partial - half_tail, half_tail);
}

SemiconjugacyReport verify_semiconjugacy(const ConstructedPc& cpc, const Iet& t, std::size_t length,
                                         std::size_t samples, const mpq_class& intercept_shift) {
  SemiconjugacyReport report;
  report.length = length;
  const std::size_t n = cpc.signs.size();
  const long precision = static_cast<long>(cpc.gaps.depth()) + 32;
  const auto& bp = cpc.breakpoints;
  std::vector<Ball> intercepts;
  for (const auto& pi : cpc.intercepts) intercepts.push_back(pi.value + Ball::exact(intercept_shift));

  const std::size_t count = std::min(samples, cpc.gaps.depth() - 1);
  for (std::size_t k = 1; k <= count; ++k) {
    ++report.samples;
    const Word reference = t.coding(cpc.gaps.point(k), length);
    std::vector<Letter> letters;
    Ball y = cpc.gaps.midpoint(k);
    bool lost = false;
    for (std::size_t step = 0; step < length; ++step) {
      std::size_t piece = 0;
      while (piece + 1 < n && !(y.center() < bp[piece + 1].center())) ++piece;
      const bool above = piece == 0 || y.lower() >= bp[piece].upper();
      const bool below = piece + 1 == n || y.upper() < bp[piece + 1].lower();
      lost = lost || !(above && below);
      letters.push_back(static_cast<Letter>(piece) + 1);
      if (lost) {
        ++report.undecided;
      } else if (letters.back() == reference[step]) {
        ++report.agree;
      } else {
        ++report.disagree;
        if (!report.first_disagreement_gap) {
          report.first_disagreement_gap = k;
          report.first_disagreement_step = step;
        }
      }
      const mpq_class slope(cpc.signs[piece], 2);
      y = (slope * y + intercepts[piece]).rounded(precision);
    }
    const Word coded(std::move(letters), static_cast<int>(n));
    if (!isomorphic(coded, reference)) report.isomorphic = false;
  }
  return report;
}

}  // namespace ietpc
