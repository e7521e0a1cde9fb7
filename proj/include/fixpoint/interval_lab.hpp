#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fixpoint/error.hpp"

namespace fixpoint::interval {

/// Exact rational, always reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "a/b" or "a".
Rational parse_rational(const std::string& text);

/// Renders as "num/den", denominator always present.
std::string to_string(const Rational& q);

Rational abs(const Rational& q);

struct ClosedInterval {
  Rational lo;
  Rational hi;

  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// Sorted, pairwise disjoint, non-touching closed intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  /// Sorts and merges overlapping or touching intervals.
  explicit IntervalSet(std::vector<ClosedInterval> parts);

  const std::vector<ClosedInterval>& intervals() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  bool contains(const Rational& x) const;
  /// The single point of a one-point set.
  std::optional<Rational> singleton() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<ClosedInterval> parts_;
};

/// "[a/b, c/d] ∪ …", or "∅".
std::string to_string(const IntervalSet& s);

/// Continuous piecewise-linear function through (breakpoint, value) pairs,
/// extended constantly beyond the first and last breakpoints.
class PiecewiseLinear {
 public:
  /// Throws OutOfDomain unless breakpoints strictly increase and the two
  /// lists have equal nonzero length.
  PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Rational> values);

  /// f(x) = slope * x + intercept on [lo, hi].
  static PiecewiseLinear affine(const Rational& slope, const Rational& intercept,
                                const Rational& lo = 0, const Rational& hi = 1);

  const std::vector<Rational>& breakpoints() const noexcept { return xs_; }
  const std::vector<Rational>& values() const noexcept { return ys_; }
  Rational lo() const { return xs_.front(); }
  Rational hi() const { return xs_.back(); }

  Rational operator()(const Rational& x) const;
  Rational slope(std::size_t segment) const;
  std::size_t segments() const noexcept { return xs_.size() - 1; }

  /// Points where f(x) = x, computed segment by segment.
  IntervalSet fixed_points() const;

 private:
  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

/// sup |f - g| over the union of both domains, attained on the merged
/// breakpoint grid.
Rational sup_distance(const PiecewiseLinear& f, const PiecewiseLinear& g);

/// The family f_t on X = [0, 3] for t in T = [0, 2]: 1 below t, rising with
/// slope one from (t, 1) to (t + 1, 2), then 2.
Rational family_f(const Rational& t, const Rational& x);

/// f_t as a piecewise-linear function on [0, 3].
PiecewiseLinear family_slice(const Rational& t);

/// Fixed points of f_t from the diagonal crossings of its linear pieces.
IntervalSet fixed_point_set(const Rational& t);

/// Grid on which no_selection_certificate samples t.
std::vector<Rational> certificate_grid();

/// Limits (2, 1) of the unique fixed point as t approaches 1 from below and
/// above; throws VerificationFailure if the sampled fixed-point sets deviate.
std::pair<Rational, Rational> no_selection_certificate();

/// lambda(t) = 1 on [0,1], 2 - t on [1,2], 0 on [2,3].
Rational lambda(const Rational& t);

struct RadialResult {
  std::vector<Rational> point;
  /// Bound on the distance of each coordinate from the exact value;
  /// zero when the norm was rational.
  Rational error_bound;
  bool exact = true;
};

/// Fractional bits used for irrational norms in the middle band.
inline constexpr unsigned kNormPrecisionBits = 64;

/// x -> lambda(|x|) x for x in R^n, 1 <= n <= 3. Points flagged as outside
/// the chart map to the origin; otherwise |x| >= 3 is OutOfDomain.
RadialResult radial_retraction(std::span<const Rational> x, bool outside_chart = false);

/// Unique fixed point of a K-contraction of [0, 1]. Throws NotAContraction
/// when a slope exceeds K in absolute value, when K is not in [0, 1), or when
/// f does not map [0, 1] into itself.
Rational banach_fixed_point(const PiecewiseLinear& f, const Rational& k);

struct StabilityGap {
  Rational lhs;  // |p(f) - p(g)|
  Rational rhs;  // sup |f - g| / (1 - K)
};

StabilityGap banach_stability_gap(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                  const Rational& k);

}  // namespace fixpoint::interval
