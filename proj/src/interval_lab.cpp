#include "fixpoint/interval_lab.hpp"

#include <algorithm>

namespace fixpoint::interval {

using boost::multiprecision::cpp_int;

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty number in '" + text + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
    }
    return cpp_int(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  cpp_int num = parse_int(text.substr(0, slash));
  cpp_int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

IntervalSet::IntervalSet(std::vector<ClosedInterval> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
  for (auto& iv : parts) {
    if (iv.hi < iv.lo) throw Error(ErrorCode::OutOfDomain, "interval with hi < lo");
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(std::move(iv));
    }
  }
}

bool IntervalSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const ClosedInterval& iv) { return iv.lo <= x && x <= iv.hi; });
}

std::optional<Rational> IntervalSet::singleton() const {
  if (parts_.size() == 1 && parts_[0].lo == parts_[0].hi) return parts_[0].lo;
  return std::nullopt;
}

std::string to_string(const IntervalSet& s) {
  if (s.empty()) return "∅";
  std::string out;
  for (const auto& iv : s.intervals()) {
    if (!out.empty()) out += " ∪ ";
    out += "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]";
  }
  return out;
}

PiecewiseLinear::PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : xs_(std::move(breakpoints)), ys_(std::move(values)) {
  if (xs_.empty() || xs_.size() != ys_.size()) {
    throw Error(ErrorCode::OutOfDomain, "breakpoints and values must be nonempty and match");
  }
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i - 1] < xs_[i])) throw Error(ErrorCode::OutOfDomain, "breakpoints not increasing");
  }
}

PiecewiseLinear PiecewiseLinear::affine(const Rational& slope, const Rational& intercept,
                                        const Rational& lo, const Rational& hi) {
  return PiecewiseLinear({lo, hi}, {slope * lo + intercept, slope * hi + intercept});
}

Rational PiecewiseLinear::operator()(const Rational& x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  return ys_[i] + slope(i) * (x - xs_[i]);
}

Rational PiecewiseLinear::slope(std::size_t segment) const {
  return (ys_[segment + 1] - ys_[segment]) / (xs_[segment + 1] - xs_[segment]);
}

IntervalSet PiecewiseLinear::fixed_points() const {
  std::vector<ClosedInterval> parts;
  if (xs_.size() == 1) {
    if (ys_[0] == xs_[0]) parts.push_back({xs_[0], xs_[0]});
    return IntervalSet(std::move(parts));
  }
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const Rational& a = xs_[i];
    const Rational& b = xs_[i + 1];
    // g = f - id is linear on [a, b].
    const Rational ga = ys_[i] - a;
    const Rational gb = ys_[i + 1] - b;
    if (ga == 0 && gb == 0) {
      parts.push_back({a, b});
    } else if ((ga <= 0 && gb >= 0) || (ga >= 0 && gb <= 0)) {
      const Rational x = a + ga * (b - a) / (ga - gb);
      parts.push_back({x, x});
    }
  }
  return IntervalSet(std::move(parts));
}

Rational sup_distance(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  std::vector<Rational> grid = f.breakpoints();
  grid.insert(grid.end(), g.breakpoints().begin(), g.breakpoints().end());
  Rational best = 0;
  for (const auto& x : grid) best = std::max(best, abs(f(x) - g(x)));
  return best;
}

namespace {

void check_range(const Rational& v, const Rational& lo, const Rational& hi, const char* what) {
  if (v < lo || v > hi) {
    throw Error(ErrorCode::OutOfDomain, std::string(what) + " = " + to_string(v) + " outside [" +
                                            to_string(lo) + ", " + to_string(hi) + "]");
  }
}

}  // namespace

Rational family_f(const Rational& t, const Rational& x) {
  check_range(t, 0, 2, "t");
  check_range(x, 0, 3, "x");
  if (x <= t) return 1;
  if (x <= t + 1) return x - t + 1;
  return 2;
}

PiecewiseLinear family_slice(const Rational& t) {
  check_range(t, 0, 2, "t");
  std::vector<Rational> xs{0};
  for (const Rational& b : {t, Rational(t + 1), Rational(3)}) {
    if (b > xs.back()) xs.push_back(b);
  }
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const auto& x : xs) ys.push_back(family_f(t, x));
  return PiecewiseLinear(std::move(xs), std::move(ys));
}

IntervalSet fixed_point_set(const Rational& t) { return family_slice(t).fixed_points(); }

std::vector<Rational> certificate_grid() {
  std::vector<Rational> grid;
  for (int k = 0; k <= 200; ++k) grid.emplace_back(k, 100);
  cpp_int scale = 1;
  for (int e = 1; e <= 12; ++e) {
    scale *= 10;
    grid.push_back(Rational(1) - Rational(cpp_int(1), scale));
    grid.push_back(Rational(1) + Rational(cpp_int(1), scale));
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::pair<Rational, Rational> no_selection_certificate() {
  std::optional<Rational> left;
  std::optional<Rational> right;
  for (const auto& t : certificate_grid()) {
    const auto fix = fixed_point_set(t);
    if (t == 1) {
      if (fix.intervals().size() != 1) {
        throw Error(ErrorCode::VerificationFailure, "fixed-point set at t = 1 is not an interval");
      }
      continue;
    }
    const auto point = fix.singleton();
    if (!point) {
      throw Error(ErrorCode::VerificationFailure,
                  "fixed point not unique at t = " + to_string(t) + ": " + to_string(fix));
    }
    auto& side = t < 1 ? left : right;
    if (side && *side != *point) {
      throw Error(ErrorCode::VerificationFailure, "fixed point varies on one side of t = 1");
    }
    side = *point;
  }
  if (!left || !right || *left == *right) {
    throw Error(ErrorCode::VerificationFailure, "one-sided fixed points do not separate");
  }
  return {*left, *right};
}

Rational lambda(const Rational& t) {
  check_range(t, 0, 3, "t");
  if (t <= 1) return 1;
  if (t <= 2) return 2 - t;
  return 0;
}

namespace {

std::optional<Rational> exact_sqrt(const Rational& s) {
  const cpp_int num = numerator(s);
  const cpp_int den = denominator(s);
  const cpp_int rn = boost::multiprecision::sqrt(num);
  const cpp_int rd = boost::multiprecision::sqrt(den);
  if (rn * rn == num && rd * rd == den) return Rational(rn, rd);
  return std::nullopt;
}

// Smallest multiple of 2^-bits that is >= sqrt(s).
Rational sqrt_upper(const Rational& s, unsigned bits) {
  const cpp_int scaled = numerator(s) << (2 * bits);
  const cpp_int den = denominator(s);
  const cpp_int q = scaled / den;
  cpp_int r = boost::multiprecision::sqrt(q);
  if (r * r * den != scaled) r += 1;
  return Rational(r, cpp_int(1) << bits);
}

}  // namespace

RadialResult radial_retraction(std::span<const Rational> x, bool outside_chart) {
  if (x.empty() || x.size() > 3) {
    throw Error(ErrorCode::OutOfDomain, "radial retraction is realised for dimensions 1 to 3");
  }
  RadialResult out;
  out.error_bound = 0;
  Rational sq = 0;
  for (const auto& c : x) sq += c * c;
  if (outside_chart) {
    out.point.assign(x.size(), Rational(0));
    return out;
  }
  if (sq >= 9) throw Error(ErrorCode::OutOfDomain, "point lies outside the chart of radius 3");
  if (sq <= 1) {
    out.point.assign(x.begin(), x.end());
    return out;
  }
  if (sq >= 4) {
    out.point.assign(x.size(), Rational(0));
    return out;
  }
  Rational norm;
  if (auto exact = exact_sqrt(sq)) {
    norm = *exact;
  } else {
    // Rounding the norm up keeps the result inside the unit disk.
    norm = sqrt_upper(sq, kNormPrecisionBits);
    out.exact = false;
    Rational biggest = 0;
    for (const auto& c : x) biggest = std::max(biggest, abs(c));
    out.error_bound = biggest / Rational(cpp_int(1) << kNormPrecisionBits);
  }
  const Rational factor = norm >= 2 ? Rational(0) : Rational(2 - norm);
  out.point.reserve(x.size());
  for (const auto& c : x) out.point.push_back(factor * c);
  return out;
}

namespace {

void check_contraction(const PiecewiseLinear& f, const Rational& k) {
  if (k < 0 || k >= 1) {
    throw Error(ErrorCode::NotAContraction, "K = " + to_string(k) + " not in [0, 1)");
  }
  if (f.lo() != 0 || f.hi() != 1) {
    throw Error(ErrorCode::NotAContraction, "domain must be exactly [0, 1]");
  }
  for (const auto& v : f.values()) {
    if (v < 0 || v > 1) {
      throw Error(ErrorCode::NotAContraction, "value " + to_string(v) + " leaves [0, 1]");
    }
  }
  for (std::size_t i = 0; i < f.segments(); ++i) {
    if (abs(f.slope(i)) > k) {
      throw Error(ErrorCode::NotAContraction, "segment " + std::to_string(i) + " has slope " +
                                                  to_string(f.slope(i)) + " above K");
    }
  }
}

}  // namespace

Rational banach_fixed_point(const PiecewiseLinear& f, const Rational& k) {
  check_contraction(f, k);
  const auto fix = f.fixed_points();
  const auto p = fix.singleton();
  if (!p || f(*p) != *p) {
    throw Error(ErrorCode::VerificationFailure, "contraction without a unique fixed point");
  }
  return *p;
}

StabilityGap banach_stability_gap(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                  const Rational& k) {
  const Rational pf = banach_fixed_point(f, k);
  const Rational pg = banach_fixed_point(g, k);
  StabilityGap gap{abs(pf - pg), sup_distance(f, g) / (1 - k)};
  if (gap.lhs > gap.rhs) {
    throw Error(ErrorCode::VerificationFailure,
                "stability bound violated: " + to_string(gap.lhs) + " > " + to_string(gap.rhs));
  }
  return gap;
}

}  // namespace fixpoint::interval
