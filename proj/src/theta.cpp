#include <cmath>
#include <string>

#include "log_table.hpp"
#include "mp.hpp"
#include "oracle_internal.hpp"
#include "zlaw/errors.hpp"
#include "zlaw/special.hpp"

namespace zlaw {
namespace {

const DoubleDouble& log_two_pi() {
  static const DoubleDouble value = detail::log_dd(dd::kTwoPi.hi) + DoubleDouble(dd::kTwoPi.lo / dd::kTwoPi.hi);
  return value;
}

}  // namespace

ThetaValue theta_asymptotic(double t) {
  if (!(t >= kThetaAsymptoticMin)) {
    throw DomainError("theta_asymptotic: t = " + std::to_string(t) + " below 50");
  }
  // theta(t) = t/2 ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760t^3) + ...
  const DoubleDouble log_scaled = detail::log_dd(t) - log_two_pi();
  DoubleDouble v = log_scaled * (0.5 * t);
  v = v - DoubleDouble(0.5 * t) - dd::kPi * 0.125;
  const double r = 1.0 / t;
  const double r2 = r * r;
  const double series =
      r * (1.0 / 48.0 +
           r2 * (7.0 / 5760.0 + r2 * (31.0 / 80640.0 + r2 * (127.0 / 430080.0 + r2 * (511.0 / 1216512.0)))));
  v = v + DoubleDouble(series);
  const double dseries =
      r2 * (1.0 / 48.0 +
            r2 * (7.0 / 1920.0 + r2 * (31.0 / 16128.0 + r2 * (127.0 / 61440.0 + r2 * (511.0 / 135168.0)))));

  ThetaValue out;
  out.t = t;
  out.phase = v;
  out.value = v.to_double();
  out.deriv = 0.5 * log_scaled.to_double() - dseries;
  return out;
}

ThetaValue theta(double t) {
  if (t >= kThetaAsymptoticMin) return theta_asymptotic(t);
  if (!(t >= kThetaMin)) {
    throw DomainError("theta: t = " + std::to_string(t) + " below supported range");
  }
  return theta_oracle(t, 32);
}

ThetaValue theta_oracle(double t, int digits) {
  if (!(t >= kOracleMin)) {
    throw DomainError("theta_oracle: t = " + std::to_string(t) + " below supported range");
  }
  const mpfr_prec_t prec = detail::oracle_precision(t, digits);
  const detail::LogGamma lg = detail::log_gamma_quarter(t, prec);
  const detail::Mp log_pi = detail::log(detail::mp_pi(prec));
  const detail::Mp half_t(prec, 0.5 * t);
  const detail::Mp value = lg.im_log_gamma - half_t * log_pi;
  const detail::Mp deriv = lg.re_digamma * 0.5 - log_pi * 0.5;

  ThetaValue out;
  out.t = t;
  out.phase = value.to_dd();
  out.value = out.phase.to_double();
  out.deriv = deriv.to_double();
  return out;
}

}  // namespace zlaw
