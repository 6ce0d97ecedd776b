#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ietpc/numeric.hpp"

namespace ietpc {

// Interval of the real line with explicit open/closed ends.
struct Interval {
  Number lo;
  Number hi;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval half_open(Number lo, Number hi) { return {std::move(lo), std::move(hi), true, false}; }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Number& x) const {
    const auto c_lo = x <=> lo;
    const auto c_hi = x <=> hi;
    return (c_lo > 0 || (c_lo == 0 && lo_closed)) && (c_hi < 0 || (c_hi == 0 && hi_closed));
  }
  Number length() const { return hi - lo; }

  // Image under t -> slope*t + intercept; slope must be non-zero.
  Interval affine_image(const Number& slope, const Number& intercept) const;
  // Preimage under t -> slope*t + intercept.
  Interval affine_preimage(const Number& slope, const Number& intercept) const;

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval intersect(const Interval& a, const Interval& b);
// a is a subset of b (both non-empty).
bool subset(const Interval& a, const Interval& b);

enum class ImageDefect { None, Overlap, Escape };

struct ImageCheck {
  ImageDefect defect = ImageDefect::None;
  std::size_t first = 0;
  std::size_t second = 0;
  // Single points shared by two images, or a closed end at 1; tolerated only
  // when the caller allows orientation-reversing pieces.
  std::size_t point_defects = 0;
};

// Breakpoints must run strictly increasing from 0 to 1; throws BadPartition.
void validate_partition(const std::vector<Number>& breakpoints);
// 0-based index i with breakpoints[i] <= x < breakpoints[i+1]; OutOfDomain
// outside [0,1).
std::size_t find_piece(const std::vector<Number>& breakpoints, const Number& x);

// Checks that the images lie in [0,1) and are pairwise disjoint.
ImageCheck check_images(const std::vector<Interval>& images, bool allow_point_defects);

}  // namespace ietpc
