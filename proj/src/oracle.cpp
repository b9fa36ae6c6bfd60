// Euler-Maclaurin evaluation of zeta(1/2 + it), rotated onto the real line
// by e^{i theta}. Shares nothing with the Riemann-Siegel path except the
// table of ln n.
//
// Two backends:
//   extended - main sum with double-double phase reduction and x87 extended
//              sin/cos, tail and rotation in MPFR; fast enough for t ~ 1e7.
//   full     - everything in MPFR; used when the extended rounding bound
//              cannot meet the requested digits and the sum is short enough.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "log_table.hpp"
#include "mp.hpp"
#include "oracle_internal.hpp"
#include "zlaw/errors.hpp"
#include "zlaw/special.hpp"

namespace zlaw {
namespace detail {

mpfr_prec_t oracle_precision(double t, int digits) {
  const double bits = digits * 3.3219280948873623 + std::log2(t > 2.0 ? t : 2.0) + 40.0;
  return static_cast<mpfr_prec_t>(std::ceil(bits));
}

Mp bernoulli_over_factorial(unsigned k, mpfr_prec_t prec) {
  Mp zeta(prec);
  mpfr_zeta_ui(zeta.get(), 2 * k, MPFR_RNDN);
  Mp power(prec);
  const Mp two_pi = mp_pi(prec) * 2.0;
  mpfr_pow_ui(power.get(), two_pi.get(), 2 * k, MPFR_RNDN);
  Mp r = zeta * 2.0 / power;
  if (k % 2 == 0) r = -r;
  return r;
}

LogGamma log_gamma_quarter(double t, mpfr_prec_t prec) {
  const double im = 0.5 * t;
  // Shift the argument until the Stirling series reaches 2^-prec.
  const double radius = 0.12 * static_cast<double>(prec) + 10.0;
  unsigned shift = 0;
  while ((0.25 + shift) * (0.25 + shift) + im * im < radius * radius) ++shift;

  const MpComplex z(Mp(prec, 0.25), Mp(prec, im));
  const MpComplex w = z + static_cast<double>(shift);
  const MpComplex log_w = log(w);
  const MpComplex inv_w = reciprocal(w);
  const MpComplex inv_w2 = inv_w * inv_w;

  Mp half_log_two_pi = log(mp_pi(prec) * 2.0) * 0.5;
  MpComplex lg = (w + (-0.5)) * log_w - w;
  lg.re = lg.re + half_log_two_pi;
  MpComplex psi = log_w - inv_w * Mp(prec, 0.5);

  const double cutoff = -(static_cast<double>(prec) - std::log2(t > 2.0 ? t : 2.0) - 8.0);
  MpComplex power = inv_w;  // w^{-(2k-1)}
  Mp factorial(prec);       // (2k-2)!
  mpfr_set_ui(factorial.get(), 1, MPFR_RNDN);
  for (unsigned k = 1; k < 2000; ++k) {
    if (k > 1) mpfr_mul_ui(factorial.get(), factorial.get(), (2 * k - 2) * (2 * k - 3), MPFR_RNDN);
    // B_{2k} / (2k(2k-1)) = (B_{2k}/(2k)!) (2k-2)!
    const Mp coef = bernoulli_over_factorial(k, prec) * factorial;
    const MpComplex term_lg = power * coef;
    const MpComplex term_psi = power * inv_w * (coef * static_cast<double>(2 * k - 1));
    lg = lg + term_lg;
    psi = psi - term_psi;
    if (log2_abs(term_lg.abs()) < cutoff && log2_abs(term_psi.abs()) < cutoff) break;
    power = power * inv_w2;
  }

  for (unsigned j = 0; j < shift; ++j) {
    const MpComplex zj = z + static_cast<double>(j);
    lg = lg - log(zj);
    psi = psi - reciprocal(zj);
  }
  return {lg.im, psi.re};
}

}  // namespace detail

namespace {

constexpr long kMaxFullTerms = 200000;

// A priori rounding estimate of the extended main sum, used to pick the
// backend: sum_k Omega(k) k^{-1/2} ~ 2 sqrt(N) (ln ln N + 1.1).
double extended_rounding_bound(long n_terms) {
  const double nn = static_cast<double>(n_terms);
  const double omega = std::log(std::log(nn > 16.0 ? nn : 16.0)) + 1.1;
  return 9.0 * 0x1p-64 * std::sqrt(2.0) * 2.0 * std::sqrt(nn) * omega + 1e-30 * nn;
}

struct Tail {
  detail::MpComplex value;
  double bound;
};

// N^{1-s}/(s-1) + N^{-s}/2 + sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
Tail euler_maclaurin_tail(double t, long n, double target, mpfr_prec_t prec) {
  using detail::Mp;
  using detail::MpComplex;
  const MpComplex s(Mp(prec, 0.5), Mp(prec, t));
  const Mp log_n = detail::mp_log_ui(prec, static_cast<unsigned long>(n));
  const Mp t_log_n = log_n * Mp(prec, t);
  const Mp inv_sqrt_n = Mp(prec, 1.0) / detail::sqrt(Mp(prec, static_cast<double>(n)));
  const MpComplex n_pow_minus_s(detail::cos(t_log_n) * inv_sqrt_n, -(detail::sin(t_log_n) * inv_sqrt_n));

  const Mp n_mp(prec, static_cast<double>(n));
  MpComplex value = (n_pow_minus_s * n_mp) / (s + (-1.0));
  value = value + n_pow_minus_s * Mp(prec, 0.5);

  const Mp inv_n2 = Mp(prec, 1.0) / (n_mp * n_mp);
  MpComplex rising = s;                   // s(s+1)...(s+2k-2)
  MpComplex power = n_pow_minus_s * (Mp(prec, 1.0) / n_mp);  // N^{-s-2k+1}
  for (unsigned k = 1; k < 1500; ++k) {
    const MpComplex term = rising * power * detail::bernoulli_over_factorial(k, prec);
    const double magnitude = term.abs().to_double();
    // Remainder after k-1 terms is bounded by |s+2k-1|/(sigma+2k-1) times the k-th term.
    const double sk = 2.0 * k - 1.0;
    const double factor = std::hypot(0.5 + sk, t) / (0.5 + sk);
    if (k > 1 && magnitude * factor < target) return {value, magnitude * factor};
    value = value + term;
    const MpComplex a = s + (2.0 * k - 1.0);
    const MpComplex b = s + (2.0 * k);
    rising = rising * a * b;
    power = power * inv_n2;
  }
  throw PrecisionUnreachable("z_oracle: Euler-Maclaurin tail did not converge at t = " + std::to_string(t));
}

}  // namespace

ZValue z_oracle(double t, int digits) {
  if (!(t >= kOracleMin)) {
    throw DomainError("z_oracle: t = " + std::to_string(t) + " below supported range");
  }
  if (digits < 15) throw DomainError("z_oracle: digits must be >= 15");
  if (digits > 30) {
    throw PrecisionUnreachable("z_oracle: " + std::to_string(digits) +
                               " digits exceed the double-double result format");
  }
  const double needed = std::pow(10.0, -digits + 2);
  // t/(2 pi N) <= 1/1.2 keeps the tail geometric for large t; the digit floor
  // pushes the smallest tail term below the target for small t.
  const long n = std::max(3L * (digits + 10), static_cast<long>(std::ceil(1.2 * t / dd::kTwoPi.hi)) + 1);
  const bool extended = extended_rounding_bound(n) <= 0.25 * needed;
  if (!extended && n > kMaxFullTerms) {
    throw PrecisionUnreachable("z_oracle: " + std::to_string(digits) + " digits unreachable at t = " +
                               std::to_string(t));
  }
  const mpfr_prec_t prec = detail::oracle_precision(t, digits);
  const Tail tail = euler_maclaurin_tail(t, n, 0.05 * needed, prec);

  detail::MpComplex zeta(prec);
  double main_bound = 0.0;
  if (extended) {
    // n^{-s} is completely multiplicative: only prime powers p^{-s} need a
    // phase reduction and an extended sin/cos, composites are one product.
    const auto table = detail::oracle_log_table(static_cast<std::size_t>(n));
    thread_local std::vector<long double> pow_re, pow_im;
    thread_local std::vector<std::uint8_t> factors;
    pow_re.resize(static_cast<std::size_t>(n));
    pow_im.resize(static_cast<std::size_t>(n));
    factors.resize(static_cast<std::size_t>(n));
    pow_re[1] = 1.0L;
    pow_im[1] = 0.0L;
    factors[1] = 0;
    long double re = 1.0L, re_c = 0.0L, im = 0.0L, im_c = 0.0L;
    double weighted_factors = 0.0;  // sum Omega(k) k^{-1/2}
    auto add = [](long double& sum, long double& comp, long double x) {
      const long double s = sum + x;
      if (std::fabs(sum) >= std::fabs(x)) {
        comp += (sum - s) + x;
      } else {
        comp += (x - s) + sum;
      }
      sum = s;
    };
    for (long k = 2; k < n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const std::size_t p = table->smallest_prime_factor(ku);
      if (p == ku) {
        const DoubleDouble log_k = (*table)[ku];
        DoubleDouble phase = two_prod(t, log_k.hi);
        phase.lo += t * log_k.lo;
        phase = dd::reduce_two_pi(quick_two_sum(phase.hi, phase.lo));
        const long double x = static_cast<long double>(phase.hi) + static_cast<long double>(phase.lo);
        long double sn = 0.0L, cs = 0.0L;
        sincosl(x, &sn, &cs);
        const long double w = 1.0L / sqrtl(static_cast<long double>(k));
        pow_re[ku] = w * cs;
        pow_im[ku] = -w * sn;
        factors[ku] = 1;
      } else {
        const std::size_t q = ku / p;
        pow_re[ku] = pow_re[p] * pow_re[q] - pow_im[p] * pow_im[q];
        pow_im[ku] = pow_re[p] * pow_im[q] + pow_im[p] * pow_re[q];
        factors[ku] = static_cast<std::uint8_t>(factors[q] + 1);
      }
      add(re, re_c, pow_re[ku]);
      add(im, im_c, pow_im[ku]);
      weighted_factors += factors[ku] / std::sqrt(static_cast<double>(k));
    }
    mpfr_set_ld(zeta.re.get(), re, MPFR_RNDN);
    mpfr_set_ld(zeta.im.get(), im, MPFR_RNDN);
    zeta.re = zeta.re + detail::Mp(prec, static_cast<double>(re_c));
    zeta.im = zeta.im + detail::Mp(prec, static_cast<double>(im_c));
    // Each prime power carries <= 6 ulp (x87, 2^-64) of relative error, each
    // product adds <= 3 ulp; magnitudes are k^{-1/2}.
    main_bound = 9.0 * 0x1p-64 * std::sqrt(2.0) * weighted_factors + 1e-30 * static_cast<double>(n);
  } else {
    const detail::Mp t_mp(prec, t);
    for (long k = 1; k < n; ++k) {
      const detail::Mp phase = detail::mp_log_ui(prec, static_cast<unsigned long>(k)) * t_mp;
      detail::Mp sn(prec), cs(prec), w(prec);
      mpfr_sin_cos(sn.get(), cs.get(), phase.get(), MPFR_RNDN);
      mpfr_set_ui(w.get(), static_cast<unsigned long>(k), MPFR_RNDN);
      mpfr_rec_sqrt(w.get(), w.get(), MPFR_RNDN);
      zeta.re = zeta.re + cs * w;
      zeta.im = zeta.im - sn * w;
    }
    main_bound = std::ldexp(static_cast<double>(n), -static_cast<int>(prec) + static_cast<int>(std::log2(t)) + 8);
  }
  zeta = zeta + tail.value;

  const detail::LogGamma lg = detail::log_gamma_quarter(t, prec);
  const detail::Mp th = lg.im_log_gamma - detail::Mp(prec, 0.5 * t) * detail::log(detail::mp_pi(prec));
  const detail::Mp c = detail::cos(th);
  const detail::Mp s = detail::sin(th);
  const detail::Mp z_re = c * zeta.re - s * zeta.im;
  const detail::Mp z_im = c * zeta.im + s * zeta.re;

  ZValue out;
  out.t = t;
  const DoubleDouble v = z_re.to_dd();
  out.value = v.hi;
  out.value_lo = v.lo;
  out.imag_residual = z_im.to_double();
  out.n_terms = n;
  const double rotation = std::ldexp(1.0 + std::fabs(v.hi), -static_cast<int>(prec) + static_cast<int>(std::log2(t + 2.0)) + 8);
  out.err_bound = main_bound + tail.bound + rotation + 1e-32 * std::fabs(v.hi);
  return out;
}

}  // namespace zlaw
