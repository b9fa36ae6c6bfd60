// Minimal RAII layer over MPFR for the oracle path. Every value carries its
// own precision, so concurrent oracle calls never share global state.
#pragma once

#include <mpfr.h>

#include <utility>

#include "zlaw/double_double.hpp"

namespace zlaw::detail {

class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mp(mpfr_prec_t prec, double x) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Mp(const Mp& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mp(Mp&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mp& operator=(const Mp& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mp& operator=(Mp&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  DoubleDouble to_dd() const {
    const double hi = mpfr_get_d(v_, MPFR_RNDN);
    Mp rest(prec());
    mpfr_sub_d(rest.get(), v_, hi, MPFR_RNDN);
    return quick_two_sum(hi, rest.to_double());
  }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t max_prec(const Mp& a, const Mp& b) {
  return a.prec() > b.prec() ? a.prec() : b.prec();
}

inline Mp operator+(const Mp& a, const Mp& b) {
  Mp r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Mp operator-(const Mp& a, const Mp& b) {
  Mp r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Mp operator*(const Mp& a, const Mp& b) {
  Mp r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Mp operator/(const Mp& a, const Mp& b) {
  Mp r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Mp operator+(const Mp& a, double b) {
  Mp r(a.prec());
  mpfr_add_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Mp operator-(const Mp& a, double b) {
  Mp r(a.prec());
  mpfr_sub_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Mp operator*(const Mp& a, double b) {
  Mp r(a.prec());
  mpfr_mul_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Mp operator/(const Mp& a, double b) {
  Mp r(a.prec());
  mpfr_div_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
inline Mp operator-(const Mp& a) {
  Mp r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

template <int (*F)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
inline Mp apply(const Mp& a) {
  Mp r(a.prec());
  F(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline Mp log(const Mp& a) { return apply<mpfr_log>(a); }
inline Mp exp(const Mp& a) { return apply<mpfr_exp>(a); }
inline Mp sqrt(const Mp& a) { return apply<mpfr_sqrt>(a); }
inline Mp cos(const Mp& a) { return apply<mpfr_cos>(a); }
inline Mp sin(const Mp& a) { return apply<mpfr_sin>(a); }
inline Mp abs(const Mp& a) { return apply<mpfr_abs>(a); }

inline Mp atan2(const Mp& y, const Mp& x) {
  Mp r(max_prec(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Mp mp_pi(mpfr_prec_t prec) {
  Mp r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

inline Mp mp_log_ui(mpfr_prec_t prec, unsigned long n) {
  Mp r(prec);
  mpfr_log_ui(r.get(), n, MPFR_RNDN);
  return r;
}

inline double log2_abs(const Mp& a) {
  if (mpfr_zero_p(a.get())) return -1e300;
  return static_cast<double>(mpfr_get_exp(a.get()));
}

struct MpComplex {
  Mp re;
  Mp im;

  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  MpComplex(Mp r, Mp i) : re(std::move(r)), im(std::move(i)) {}

  Mp abs() const {
    Mp r(re.prec());
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
    return r;
  }
};

inline MpComplex operator+(const MpComplex& a, const MpComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline MpComplex operator-(const MpComplex& a, const MpComplex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline MpComplex operator*(const MpComplex& a, const MpComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline MpComplex operator*(const MpComplex& a, const Mp& b) { return {a.re * b, a.im * b}; }
inline MpComplex operator/(const MpComplex& a, const MpComplex& b) {
  const Mp den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline MpComplex operator+(const MpComplex& a, double b) { return {a.re + b, a.im}; }

// Principal branch.
inline MpComplex log(const MpComplex& z) { return {log(z.abs()), atan2(z.im, z.re)}; }

inline MpComplex reciprocal(const MpComplex& z) {
  MpComplex one(z.re.prec());
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  return one / z;
}

}  // namespace zlaw::detail
