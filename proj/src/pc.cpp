#include "ietpc/pc.hpp"

#include <algorithm>
#include <cmath>

namespace ietpc {

PiecewiseContraction::PiecewiseContraction(std::vector<Number> breakpoints, std::vector<Number> slopes,
                                           std::vector<Number> intercepts)
    : breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)), intercepts_(std::move(intercepts)) {
  validate_partition(breakpoints_);
  const std::size_t n = breakpoints_.size() - 1;
  if (slopes_.size() != n || intercepts_.size() != n)
    throw Error(ErrorKind::BadPartition, "expected " + std::to_string(n) + " slopes and intercepts");
  bool has_reversal = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (slopes_[i].is_zero()) throw Error(ErrorKind::NotInjective, "piece " + std::to_string(i + 1) + " is constant");
    const Number magnitude = slopes_[i].abs();
    if (!(magnitude < Number(1)))
      throw Error(ErrorKind::NotContracting, "piece " + std::to_string(i + 1) + " has |slope| >= 1");
    if (i == 0 || magnitude > lambda_) lambda_ = magnitude;
    has_reversal = has_reversal || slopes_[i].sign() < 0;
  }
  images_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) images_.push_back(piece(i).affine_image(slopes_[i], intercepts_[i]));
  const ImageCheck check = check_images(images_, has_reversal);
  if (check.defect == ImageDefect::Escape)
    throw Error(ErrorKind::ImageEscapes, "image of piece " + std::to_string(check.first + 1) + " " +
                                             images_[check.first].to_string() + " leaves [0,1)");
  if (check.defect == ImageDefect::Overlap)
    throw Error(ErrorKind::NotInjective, "images of pieces " + std::to_string(check.first + 1) + " and " +
                                             std::to_string(check.second + 1) + " overlap");
  point_defects_ = check.point_defects;
}

Number PiecewiseContraction::eval(const Number& x) const {
  Number y = eval_on_piece(piece_of(x), x);
  if (y < Number(0) || !(y < Number(1)))
    throw Error(ErrorKind::OutOfDomain, "image of " + x.to_string() + " leaves [0,1)");
  return y;
}

OrbitSummary walk_orbit(const PiecewiseContraction& f, const Number& x, std::size_t count,
                        const OrbitOptions& options, const std::function<void(std::size_t, const OrbitPoint&)>& visit) {
  OrbitSummary summary;
  if (count == 0) return summary;
  Number point = x;
  f.piece_of(point);  // domain check

  std::size_t k = 0;
  for (; k < count; ++k) {
    if (point.bit_size() > options.max_bits) break;
    OrbitPoint p;
    p.piece = f.piece_of(point);
    p.exact = &point;
    visit(k, p);
    if (k + 1 < count) point = f.eval(point);
  }
  if (k == count) return summary;
  if (!options.ball_fallback)
    throw OrbitError(ErrorKind::DenominatorBlowup, k,
                     "orbit point " + std::to_string(k) + " exceeds " + std::to_string(options.max_bits) + " bits");

  summary.approximate = true;
  summary.switched_at = k;
  const long precision = options.ball_precision;
  std::vector<Ball> slopes;
  std::vector<Ball> intercepts;
  for (std::size_t i = 0; i < f.size(); ++i) {
    slopes.push_back(to_ball(f.slopes()[i], precision + 8));
    intercepts.push_back(to_ball(f.intercepts()[i], precision + 8));
  }
  Ball ball = to_ball(point, precision);
  const auto& bp = f.breakpoints();
  for (; k < count; ++k) {
    const Number lower(ball.lower());
    const Number upper(ball.upper());
    const Number center(ball.center());
    std::size_t piece = 0;
    if (center >= bp.back()) {
      piece = f.size() - 1;
    } else if (center >= bp.front()) {
      piece = f.piece_of(center);
    }
    OrbitPoint p;
    p.piece = piece;
    p.ball = &ball;
    p.decided = lower >= bp[piece] && upper < bp[piece + 1];
    if (!p.decided) ++summary.undecided;
    visit(k, p);
    if (k + 1 < count) ball = (slopes[piece] * ball + intercepts[piece]).rounded(precision);
  }
  return summary;
}

PcCoding coding(const PiecewiseContraction& f, const Number& x, std::size_t length, const OrbitOptions& options) {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "coding length must be >= 1");
  std::vector<Letter> symbols;
  symbols.reserve(length);
  const OrbitSummary summary = walk_orbit(f, x, length, options, [&](std::size_t, const OrbitPoint& p) {
    symbols.push_back(static_cast<Letter>(p.piece) + 1);
  });
  return PcCoding{Word(std::move(symbols), static_cast<int>(f.size()), "pc orbit of " + x.to_string()),
                  summary.approximate, summary.undecided};
}

namespace {

// Maximal interval around orbit point `start` following `letters` for
// letters.size() steps, with f^p restricted to it as slope*t + intercept.
struct Cylinder {
  Interval domain;
  Number slope{1};
  Number intercept{0};
};

Cylinder pull_back_cylinder(const PiecewiseContraction& f, std::span<const Letter> letters) {
  Cylinder c;
  c.domain = f.piece(static_cast<std::size_t>(letters[0] - 1));
  for (const Letter letter : letters) {
    const std::size_t i = static_cast<std::size_t>(letter - 1);
    const Interval image = c.domain.affine_image(c.slope, c.intercept);
    const Interval allowed = intersect(image, f.piece(i));
    c.domain = allowed.affine_preimage(c.slope, c.intercept);
    c.intercept = f.slopes()[i] * c.intercept + f.intercepts()[i];
    c.slope = f.slopes()[i] * c.slope;
  }
  return c;
}

std::optional<PeriodicCertificate> try_certificate(const PiecewiseContraction& f, const std::vector<Number>& orbit,
                                                   const Word& word, std::size_t q, std::size_t p) {
  const std::span<const Letter> letters = word.view().subspan(q, p);
  const Cylinder c = pull_back_cylinder(f, letters);
  if (c.domain.empty() || !c.domain.contains(orbit[q])) return std::nullopt;
  const Interval image = c.domain.affine_image(c.slope, c.intercept);
  if (!subset(image, c.domain)) return std::nullopt;
  Number bound(1);
  for (std::size_t j = 0; j < p; ++j) bound *= f.lambda();
  return PeriodicCertificate{q,
                             p,
                             c.domain,
                             image,
                             c.slope,
                             bound,
                             Word({letters.begin(), letters.end()}, static_cast<int>(f.size()), "periodic itinerary")};
}

}  // namespace

std::optional<PeriodicCertificate> certify_periodic(const PiecewiseContraction& f, const Number& x,
                                                    std::size_t budget, const OrbitOptions& options) {
  if (budget < 1) throw Error(ErrorKind::InvalidArgument, "budget must be >= 1");
  OrbitOptions exact = options;
  exact.ball_fallback = false;
  std::vector<Number> orbit;
  std::vector<Letter> letters;
  orbit.reserve(budget);
  walk_orbit(f, x, budget, exact, [&](std::size_t, const OrbitPoint& p) {
    orbit.push_back(*p.exact);
    letters.push_back(static_cast<Letter>(p.piece) + 1);
  });
  const Word word(std::move(letters), static_cast<int>(f.size()));

  for (const EventualPeriod& candidate : eventual_period_candidates(word.view())) {
    const std::size_t p = candidate.period;
    // The cylinder around f^q(x) contains the attracting cycle once the orbit
    // is close enough to it, so later starting points are tried too.
    for (std::size_t step = 0, q = candidate.preperiod; q + p <= word.size();
         step = step == 0 ? 1 : 2 * step, q = candidate.preperiod + step * p) {
      if (auto cert = try_certificate(f, orbit, word, q, p)) return cert;
      // An orientation-reversing return map may need two turns to nest.
      if (q + 2 * p <= word.size()) {
        if (auto cert = try_certificate(f, orbit, word, q, 2 * p)) return cert;
      }
    }
  }
  return std::nullopt;
}

bool validate_certificate(const PiecewiseContraction& f, const Number& x, const PeriodicCertificate& cert) {
  if (cert.period < 1 || cert.word.size() != cert.period || cert.cylinder.empty()) return false;
  Number point = x;
  for (std::size_t k = 0; k < cert.preperiod; ++k) point = f.eval(point);
  if (!cert.cylinder.contains(point)) return false;
  Interval current = cert.cylinder;
  for (std::size_t j = 0; j < cert.period; ++j) {
    const std::size_t i = static_cast<std::size_t>(cert.word[j] - 1);
    if (i >= f.size() || !subset(current, f.piece(i))) return false;
    current = current.affine_image(f.slopes()[i], f.intercepts()[i]);
  }
  return subset(current, cert.cylinder) && current == cert.image;
}

EmpiricalFactor empirical_factor(const PiecewiseContraction& f, const Number& x, std::size_t m,
                                 std::size_t grid_size, const OrbitOptions& options) {
  if (m < 1000) throw Error(ErrorKind::InvalidArgument, "empirical_factor needs m >= 1000");
  if (grid_size < 1) throw Error(ErrorKind::InvalidArgument, "grid_size must be >= 1");
  std::optional<PeriodicCertificate> cert;
  try {
    cert = certify_periodic(f, x, std::min<std::size_t>(m, 2000), options);
  } catch (const OrbitError& e) {
    // Exact orbit too large to certify; treated as inconclusive.
    if (e.kind() != ErrorKind::DenominatorBlowup) throw;
  }
  if (cert) {
    throw Error(ErrorKind::PeriodicOrbit, "orbit is certified periodic with period " + std::to_string(cert->period) +
                                              " after " + std::to_string(cert->preperiod) + " steps");
  }

  EmpiricalFactor out;
  out.samples = m;
  // Sort keys are exact dyadics; orbit points crowd against breakpoints
  // closer than a double can resolve.
  std::vector<mpq_class> keys(m + 1);
  std::vector<std::size_t> pieces(m + 1);
  OrbitOptions walk = options;
  walk.ball_fallback = true;
  const long key_bits = options.ball_precision + 64;
  const OrbitSummary summary = walk_orbit(f, x, m + 1, walk, [&](std::size_t k, const OrbitPoint& p) {
    if (p.exact == nullptr) {
      keys[k] = p.ball->center();
    } else if (p.exact->is_rational()) {
      keys[k] = p.exact->rational_part();
    } else {
      keys[k] = to_ball(*p.exact, key_bits).center();
    }
    pieces[k] = p.piece;
  });
  out.approximate = summary.approximate;

  std::vector<mpq_class> sorted(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(sorted.begin(), sorted.end());
  const double scale = 1.0 / static_cast<double>(m);
  auto h = [&](const mpq_class& t) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin()) * scale;
  };

  for (std::size_t j = 0; j <= grid_size; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(grid_size);
    out.grid.push_back(t);
    out.cdf.push_back(h(mpq_class(t)));
  }

  out.visits.assign(f.size(), 0);
  for (std::size_t k = 0; k < m; ++k) ++out.visits[pieces[k]];
  const double threshold = std::log2(static_cast<double>(m));
  std::vector<long> factor_index(f.size(), -1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (static_cast<double>(out.visits[i]) >= threshold) {
      factor_index[i] = static_cast<long>(out.pieces.size());
      out.pieces.push_back(i + 1);
      out.signs.push_back(f.slopes()[i].sign());
    }
  }
  if (out.pieces.size() < 2)
    throw Error(ErrorKind::InsufficientVisits, "fewer than two pieces visited at least log2(m) times");

  // h at the left end of a kept piece counts the samples in earlier pieces.
  std::vector<std::size_t> before(f.size() + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) before[i + 1] = before[i] + out.visits[i];
  out.breakpoints.push_back(0.0);
  for (std::size_t l = 0; l + 1 < out.pieces.size(); ++l)
    out.breakpoints.push_back(static_cast<double>(before[out.pieces[l]]) * scale);
  out.breakpoints.push_back(1.0);

  // Per-piece translation: median of h(f(s)) - sign * h(s).
  std::vector<std::vector<double>> shifts(out.pieces.size());
  for (std::size_t k = 0; k < m; ++k) {
    const long l = factor_index[pieces[k]];
    if (l < 0) continue;
    shifts[l].push_back(h(keys[k + 1]) - out.signs[l] * h(keys[k]));
  }
  for (auto& s : shifts) {
    std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(s.size() / 2), s.end());
    out.translations.push_back(s[s.size() / 2]);
  }
  for (std::size_t k = 0; k < m; ++k) {
    const long l = factor_index[pieces[k]];
    if (l < 0) continue;
    const double predicted = out.signs[l] * h(keys[k]) + out.translations[l];
    out.residual = std::max(out.residual, std::abs(h(keys[k + 1]) - predicted));
  }
  return out;
}

}  // namespace ietpc
