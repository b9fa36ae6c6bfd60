#pragma once

#include "mp.hpp"

namespace zlaw::detail {

/// Working precision in bits for `digits` decimal digits at abscissa t.
mpfr_prec_t oracle_precision(double t, int digits);

/// B_{2k} / (2k)! at the given precision, k >= 1.
Mp bernoulli_over_factorial(unsigned k, mpfr_prec_t prec);

struct LogGamma {
  Mp im_log_gamma;  // Im ln Gamma(1/4 + it/2), continuous branch
  Mp re_digamma;    // Re psi(1/4 + it/2)
};

LogGamma log_gamma_quarter(double t, mpfr_prec_t prec);

}  // namespace zlaw::detail
