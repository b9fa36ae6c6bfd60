// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
//
// Only the handful of error-free transforms needed for phase reduction and
// compensated summation live here; this is not a general extended-precision
// type.
#pragma once

#include <cmath>

namespace zlaw {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

// Knuth's TwoSum: s + e == a + b exactly.
inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

// Requires |a| >= |b|.
inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) {
  return a + (-b);
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

namespace dd {

inline constexpr DoubleDouble kPi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DoubleDouble kTwoPi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr DoubleDouble kHalfPi{1.570796326794896558e+00, 6.123233995736766036e-17};

// a - k*2pi with k = nearest integer to a/2pi; result in [-pi, pi] up to rounding.
inline DoubleDouble reduce_two_pi(const DoubleDouble& a) {
  constexpr double kInvTwoPi = 0.15915494309189535;
  const double k = std::nearbyint(a.hi * kInvTwoPi);
  if (k == 0.0) return a;
  const DoubleDouble p = two_prod(k, kTwoPi.hi);
  DoubleDouble r = two_sum(a.hi, -p.hi);
  r.lo += a.lo - p.lo - k * kTwoPi.lo;
  return quick_two_sum(r.hi, r.lo);
}

}  // namespace dd

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace zlaw
