#include "ietpc/iet.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ietpc {

Iet::Iet(std::vector<Number> breakpoints, std::vector<int> signs, std::vector<Number> translations)
    : breakpoints_(std::move(breakpoints)), signs_(std::move(signs)), translations_(std::move(translations)) {
  validate_partition(breakpoints_);
  const std::size_t n = breakpoints_.size() - 1;
  if (signs_.size() != n || translations_.size() != n)
    throw Error(ErrorKind::BadPartition, "expected " + std::to_string(n) + " signs and translations");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error(ErrorKind::InvalidArgument, "signs must be +1 or -1");
  }
  images_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) images_.push_back(piece(i).affine_image(Number(signs_[i]), translations_[i]));
  const ImageCheck check = check_images(images_, !is_standard());
  if (check.defect == ImageDefect::Escape)
    throw Error(ErrorKind::NotBijective, "image of piece " + std::to_string(check.first + 1) + " " +
                                             images_[check.first].to_string() + " leaves [0,1)");
  if (check.defect == ImageDefect::Overlap)
    throw Error(ErrorKind::NotBijective, "images of pieces " + std::to_string(check.first + 1) + " and " +
                                             std::to_string(check.second + 1) + " overlap");
  // Disjoint images of total length 1 inside [0,1) tile it.
  point_defects_ = check.point_defects;
}

Iet Iet::rotation(const Number& alpha) {
  if (!(Number(0) < alpha) || !(alpha < Number(1)))
    throw Error(ErrorKind::InvalidArgument, "rotation angle must lie in (0,1)");
  return Iet({Number(0), Number(1) - alpha, Number(1)}, {1, 1}, {alpha, alpha - Number(1)});
}

Iet Iet::from_permutation(const std::vector<Number>& lengths, const std::vector<int>& image_order,
                          std::vector<int> signs) {
  const std::size_t n = lengths.size();
  if (image_order.size() != n) throw Error(ErrorKind::BadPartition, "permutation size mismatch");
  if (signs.empty()) signs.assign(n, 1);
  std::vector<Number> breakpoints{Number(0)};
  for (const Number& len : lengths) breakpoints.push_back(breakpoints.back() + len);
  std::vector<Number> translations(n);
  std::vector<bool> used(n, false);
  Number start(0);
  for (int label : image_order) {
    if (label < 1 || static_cast<std::size_t>(label) > n || used[label - 1])
      throw Error(ErrorKind::BadPartition, "image_order is not a permutation");
    const std::size_t i = static_cast<std::size_t>(label - 1);
    used[i] = true;
    translations[i] = signs[i] > 0 ? start - breakpoints[i] : start + breakpoints[i + 1];
    start += lengths[i];
  }
  return Iet(std::move(breakpoints), std::move(signs), std::move(translations));
}

bool Iet::is_standard() const {
  return std::all_of(signs_.begin(), signs_.end(), [](int s) { return s > 0; });
}

std::size_t Iet::piece_of(const Number& x) const { return find_piece(breakpoints_, x); }

bool Iet::is_breakpoint(const Number& x) const {
  return std::binary_search(breakpoints_.begin(), breakpoints_.end() - 1, x);
}

Number Iet::eval(const Number& x) const {
  const std::size_t i = piece_of(x);
  Number y = signs_[i] > 0 ? x + translations_[i] : translations_[i] - x;
  if (y < Number(0) || !(y < Number(1)))
    throw Error(ErrorKind::OutOfDomain, "orbit leaves [0,1) at the flipped endpoint " + x.to_string());
  return y;
}

Number Iet::eval_inverse(const Number& y) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (images_[i].contains(y)) return signs_[i] > 0 ? y - translations_[i] : translations_[i] - y;
  }
  throw Error(ErrorKind::OutOfDomain, "point " + y.to_string() + " has no preimage");
}

Word Iet::coding(const Number& x, std::size_t length) const {
  if (length < 1) throw Error(ErrorKind::InvalidArgument, "coding length must be >= 1");
  std::vector<Letter> symbols;
  symbols.reserve(length);
  Number point = x;
  for (std::size_t k = 0; k < length; ++k) {
    symbols.push_back(static_cast<Letter>(piece_of(point)) + 1);
    if (k + 1 < length) point = eval(point);
  }
  return Word(std::move(symbols), static_cast<int>(size()), "iet orbit of " + x.to_string());
}

bool Iet::irreducible() const {
  for (std::size_t j = 1; j < size(); ++j) {
    const Interval prefix_union = Interval{Number(0), breakpoints_[j], true, true};
    bool invariant = true;
    for (std::size_t i = 0; i < j && invariant; ++i) {
      Interval closure = images_[i];
      closure.lo_closed = closure.hi_closed = true;
      invariant = subset(closure, prefix_union);
    }
    if (invariant) return false;
  }
  return true;
}

IdocCertificate idoc_check(const Iet& t, std::size_t depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  IdocCertificate cert;
  cert.depth = depth;
  const std::size_t n = t.size();
  struct Visit {
    int i;
    std::size_t k;
  };
  std::unordered_map<Number, Visit> seen;
  std::vector<Number> current;
  for (std::size_t i = 1; i < n; ++i) {
    current.push_back(t.breakpoints()[i]);
    seen.emplace(t.breakpoints()[i], Visit{static_cast<int>(i), 0});
  }
  for (std::size_t k = 1; k <= depth; ++k) {
    for (std::size_t idx = 0; idx < current.size(); ++idx) {
      const int i = static_cast<int>(idx) + 1;
      try {
        current[idx] = t.eval(current[idx]);
      } catch (const Error&) {
        // The orbit left [0,1) through a flipped endpoint: it is finite.
        cert.verdict = IdocCertificate::Verdict::FailedFinite;
        cert.i = i;
        cert.k = k;
        return cert;
      }
      const auto [it, inserted] = seen.emplace(current[idx], Visit{i, k});
      if (inserted) continue;
      if (it->second.i == i) {
        cert.verdict = IdocCertificate::Verdict::FailedFinite;
        cert.i = i;
        cert.k = k;
      } else {
        cert.verdict = IdocCertificate::Verdict::FailedDisjoint;
        cert.i = i;
        cert.j = it->second.i;
        cert.k = k;
        cert.l = it->second.k;
      }
      return cert;
    }
  }
  return cert;
}

RefinementComplexity refinement_complexity(const Iet& t, const Number& x_regular, int k_max) {
  if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
  Number point = x_regular;
  for (int step = 0; step <= k_max; ++step) {
    if (t.is_breakpoint(point))
      throw OrbitError(ErrorKind::OrbitHitsBreakpoint, static_cast<std::size_t>(step),
                       "orbit of " + x_regular.to_string() + " hits a breakpoint at step " + std::to_string(step));
    point = t.eval(point);
  }

  RefinementComplexity result;
  std::unordered_set<Number> division_points;
  std::vector<Number> current(t.breakpoints().begin() + 1, t.breakpoints().end() - 1);
  const Number zero(0);
  long total = 1;
  for (int level = 0; level < k_max; ++level) {
    if (level > 0) {
      for (Number& p : current) p = t.eval_inverse(p);
    }
    long fresh = 0;
    for (const Number& p : current) {
      // 0 is an end of [0,1), never a cut between atoms.
      if (p != zero && division_points.insert(p).second) ++fresh;
    }
    result.new_points.push_back(fresh);
    total += fresh;
    result.table.values.push_back(total);
  }
  for (std::size_t l = 1; l < result.new_points.size(); ++l) {
    if (result.new_points[l] > result.new_points[l - 1]) result.nonincreasing = false;
  }
  result.table.fit = fit_affine_tail(result.table.values);
  return result;
}

}  // namespace ietpc
