#include "ietpc/interval.hpp"

#include <algorithm>

namespace ietpc {

Interval Interval::affine_image(const Number& slope, const Number& intercept) const {
  if (slope.is_zero()) throw Error(ErrorKind::InvalidArgument, "affine image with zero slope");
  if (slope.sign() > 0) return {slope * lo + intercept, slope * hi + intercept, lo_closed, hi_closed};
  return {slope * hi + intercept, slope * lo + intercept, hi_closed, lo_closed};
}

Interval Interval::affine_preimage(const Number& slope, const Number& intercept) const {
  const Number inverse_slope = Number(1) / slope;
  return affine_image(inverse_slope, -intercept * inverse_slope);
}

std::string Interval::to_string() const {
  return std::string(lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() + (hi_closed ? "]" : ")");
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval out;
  const auto c_lo = a.lo <=> b.lo;
  if (c_lo > 0) {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed;
  } else if (c_lo < 0) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed && b.lo_closed;
  }
  const auto c_hi = a.hi <=> b.hi;
  if (c_hi < 0) {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed;
  } else if (c_hi > 0) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed && b.hi_closed;
  }
  return out;
}

bool subset(const Interval& a, const Interval& b) {
  const auto c_lo = a.lo <=> b.lo;
  const bool lo_ok = c_lo > 0 || (c_lo == 0 && (b.lo_closed || !a.lo_closed));
  const auto c_hi = a.hi <=> b.hi;
  const bool hi_ok = c_hi < 0 || (c_hi == 0 && (b.hi_closed || !a.hi_closed));
  return lo_ok && hi_ok;
}

void validate_partition(const std::vector<Number>& breakpoints) {
  if (breakpoints.size() < 2) throw Error(ErrorKind::BadPartition, "need at least breakpoints 0 and 1");
  if (breakpoints.front() != Number(0) || breakpoints.back() != Number(1))
    throw Error(ErrorKind::BadPartition, "breakpoints must run from 0 to 1");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw Error(ErrorKind::BadPartition, "breakpoints must be strictly increasing");
  }
}

std::size_t find_piece(const std::vector<Number>& breakpoints, const Number& x) {
  if (x < breakpoints.front() || !(x < breakpoints.back()))
    throw Error(ErrorKind::OutOfDomain, "point " + x.to_string() + " outside [0,1)");
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

ImageCheck check_images(const std::vector<Interval>& images, bool allow_point_defects) {
  ImageCheck result;
  auto fail = [&](ImageDefect defect, std::size_t i, std::size_t j) {
    result.defect = defect;
    result.first = i;
    result.second = j;
    return result;
  };
  const Number zero(0);
  const Number one(1);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Interval& im = images[i];
    if (im.lo < zero || im.hi > one) return fail(ImageDefect::Escape, i, i);
    if (im.hi == one && im.hi_closed) {
      if (!allow_point_defects) return fail(ImageDefect::Escape, i, i);
      ++result.point_defects;
    }
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const Interval common = intersect(images[i], images[j]);
      if (common.empty()) continue;
      if (common.lo < common.hi) return fail(ImageDefect::Overlap, i, j);
      if (!allow_point_defects) return fail(ImageDefect::Overlap, i, j);
      ++result.point_defects;
    }
  }
  return result;
}

}  // namespace ietpc
