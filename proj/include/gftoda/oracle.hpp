#pragma once

// Reference values used by the verification suites: Lanczos log-gamma and
// the classical hypergeometric power series.  These are deliberately
// independent of the contour-quadrature path they are checked against.

#include <complex>

namespace gftoda::oracle {

using cplx = std::complex<double>;

cplx log_gamma(cplx z);
cplx beta(cplx a, cplx b);

// Gauss series sum (a)_m (b)_m / ((c)_m m!) x^m, |x| < 1.
cplx gauss_2f1(cplx a, cplx b, cplx c, cplx x);

// Kummer series sum (a)_m / ((c)_m m!) x^m.
cplx kummer_1f1(cplx a, cplx c, cplx x);

// Bessel function of the first kind, ascending series.
cplx bessel_j(cplx nu, cplx z);

}  // namespace gftoda::oracle
