#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ietpc/ball.hpp"
#include "ietpc/interval.hpp"
#include "ietpc/numeric.hpp"
#include "ietpc/words.hpp"

namespace ietpc {

// Injective piecewise affine contraction of [0,1).
//
// Piece i (0-based) is [x_i, x_{i+1}) with f(t) = slope_i * t + intercept_i,
// 0 < |slope_i| < 1. lambda() is the largest |slope_i|.
class PiecewiseContraction {
 public:
  PiecewiseContraction(std::vector<Number> breakpoints, std::vector<Number> slopes, std::vector<Number> intercepts);

  std::size_t size() const { return slopes_.size(); }
  const std::vector<Number>& breakpoints() const { return breakpoints_; }
  const std::vector<Number>& slopes() const { return slopes_; }
  const std::vector<Number>& intercepts() const { return intercepts_; }
  const std::vector<Interval>& images() const { return images_; }
  const Number& lambda() const { return lambda_; }
  std::size_t point_defects() const { return point_defects_; }

  Interval piece(std::size_t i) const { return Interval::half_open(breakpoints_[i], breakpoints_[i + 1]); }
  std::size_t piece_of(const Number& x) const { return find_piece(breakpoints_, x); }

  Number eval(const Number& x) const;
  Number eval_on_piece(std::size_t i, const Number& x) const { return slopes_[i] * x + intercepts_[i]; }

 private:
  std::vector<Number> breakpoints_;
  std::vector<Number> slopes_;
  std::vector<Number> intercepts_;
  std::vector<Interval> images_;
  Number lambda_;
  std::size_t point_defects_ = 0;
};

// Exact orbits grow denominators (slope 1/2 adds a bit per step). Past
// `max_bits` per point the orbit either fails with DenominatorBlowup or, with
// `ball_fallback`, continues in outward-rounded ball arithmetic and every
// result is flagged approximate.
struct OrbitOptions {
  std::size_t max_bits = std::size_t{1} << 17;
  bool ball_fallback = false;
  long ball_precision = 256;
};

struct OrbitPoint {
  std::size_t piece = 0;      // 0-based
  bool decided = true;        // false when a ball straddles a breakpoint
  const Number* exact = nullptr;
  const Ball* ball = nullptr;  // set once in ball mode
};

struct OrbitSummary {
  bool approximate = false;
  std::size_t undecided = 0;
  std::size_t switched_at = 0;  // first step in ball mode, if approximate
};

// Visits x, f(x), ..., f^(count-1)(x) in order.
OrbitSummary walk_orbit(const PiecewiseContraction& f, const Number& x, std::size_t count,
                        const OrbitOptions& options, const std::function<void(std::size_t, const OrbitPoint&)>& visit);

struct PcCoding {
  Word word;
  bool approximate = false;
  std::size_t undecided = 0;
};

PcCoding coding(const PiecewiseContraction& f, const Number& x, std::size_t length, const OrbitOptions& options = {});

// Proof object for an ultimately periodic coding: every point of `cylinder`
// follows the itinerary `word` for `period` steps and f^period maps the
// cylinder into itself, so the coding of f^preperiod(x) is word^infinity.
struct PeriodicCertificate {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  Interval cylinder;
  Interval image;             // f^period(cylinder)
  Number slope;               // slope of f^period on the cylinder
  Number contraction_bound;   // lambda^period
  Word word;
};

std::optional<PeriodicCertificate> certify_periodic(const PiecewiseContraction& f, const Number& x,
                                                    std::size_t budget, const OrbitOptions& options = {});

// Recomputes the certificate forward from scratch: f^q(x) lies in the
// cylinder, each of the p steps stays inside one piece, and the final image
// lies in the cylinder.
bool validate_certificate(const PiecewiseContraction& f, const Number& x, const PeriodicCertificate& cert);

struct EmpiricalFactor {
  std::size_t samples = 0;
  std::vector<double> grid;                  // t_j = j / grid_size
  std::vector<double> cdf;                   // h(t_j)
  std::vector<std::size_t> pieces;           // 1-based PC pieces kept in the factor
  std::vector<std::size_t> visits;           // visits per PC piece
  std::vector<double> breakpoints;           // 0 = y_0 < ... < y_m = 1
  std::vector<double> translations;          // per factor piece
  std::vector<int> signs;                    // per factor piece
  double residual = 0;                       // max |h(f(s)) - T(h(s))|
  bool approximate = false;
};

// Empirical-measure estimate of the factor interval exchange: h is the CDF
// of the first m orbit points. Throws PeriodicOrbit when a periodic
// certificate exists, InsufficientVisits when fewer than two pieces are
// visited at least log2(m) times.
EmpiricalFactor empirical_factor(const PiecewiseContraction& f, const Number& x, std::size_t m,
                                 std::size_t grid_size, const OrbitOptions& options = {});

}  // namespace ietpc
