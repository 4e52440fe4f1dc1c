#include "gftoda/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace gftoda::oracle {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey's table).
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2Pi = 1.8378770664093454836;

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
    return std::log(kPi / std::sin(kPi * z)) - log_gamma(cplx(1) - z);
  }
  z -= cplx(1);
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + cplx(double(i)));
  cplx t = z + cplx(7.5);
  return 0.5 * kLog2Pi + (z + cplx(0.5)) * std::log(t) - t + std::log(x);
}

cplx beta(cplx a, cplx b) { return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b)); }

cplx gauss_2f1(cplx a, cplx b, cplx c, cplx x) {
  if (std::abs(x) >= 1.0) throw std::domain_error("2F1 series: |x| must be < 1");
  cplx term(1), sum(1);
  for (int m = 0; m < 4000; ++m) {
    term *= (a + cplx(double(m))) * (b + cplx(double(m))) /
            ((c + cplx(double(m))) * cplx(double(m + 1))) * x;
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) return sum;
  }
  throw std::runtime_error("2F1 series: no convergence");
}

cplx kummer_1f1(cplx a, cplx c, cplx x) {
  cplx term(1), sum(1);
  for (int m = 0; m < 4000; ++m) {
    term *= (a + cplx(double(m))) / ((c + cplx(double(m))) * cplx(double(m + 1))) * x;
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) return sum;
  }
  throw std::runtime_error("1F1 series: no convergence");
}

cplx bessel_j(cplx nu, cplx z) {
  const cplx zh = z / 2.0;
  const cplx q = -zh * zh;
  cplx term = std::exp(-log_gamma(nu + cplx(1)));
  cplx sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (cplx(double(k)) * (nu + cplx(double(k))));
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)))
      return std::exp(nu * std::log(zh)) * sum;
  }
  throw std::runtime_error("bessel series: no convergence");
}

}  // namespace gftoda::oracle
