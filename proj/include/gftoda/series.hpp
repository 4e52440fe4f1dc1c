#pragma once

// Truncated power-series helpers in one indeterminate T, with coefficients
// in either complex doubles or jets.  Everything is plain convolution; the
// log/exp tails use the standard derivative recurrences so no scalar
// transcendental is applied beyond the constant term.

#include <complex>
#include <stdexcept>
#include <vector>

#include "gftoda/jet.hpp"

namespace gftoda {

namespace series_detail {

inline cplx zero_like(const cplx&) { return cplx(0); }
inline Jet zero_like(const Jet& j) { return Jet(j.shape()); }
inline bool is_invertible(const cplx& v) { return v != cplx(0); }
inline bool is_invertible(const Jet& j) { return j.value() != cplx(0); }
inline cplx recip(const cplx& v) { return cplx(1) / v; }
inline Jet recip(const Jet& j) { return j.inverse(); }

}  // namespace series_detail

// Coefficients of a(T)*b(T) truncated to the shorter length.
template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b) {
  size_t n = std::min(a.size(), b.size());
  std::vector<T> r;
  r.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    T s = series_detail::zero_like(a[0]);
    for (size_t i = 0; i <= k; ++i) s = s + a[i] * b[k - i];
    r.push_back(s);
  }
  return r;
}

// Coefficients psi_k of (y_0 + y_1 T + ...)^{-1}, truncated to y.size().
template <class T>
std::vector<T> series_inv(const std::vector<T>& y) {
  if (y.empty() || !series_detail::is_invertible(y[0]))
    throw std::domain_error("series inverse: vanishing leading coefficient");
  std::vector<T> r;
  r.reserve(y.size());
  T inv0 = series_detail::recip(y[0]);
  r.push_back(inv0);
  for (size_t k = 1; k < y.size(); ++k) {
    T s = series_detail::zero_like(y[0]);
    for (size_t i = 1; i <= k; ++i) s = s + y[i] * r[k - i];
    r.push_back(-(inv0 * s));
  }
  return r;
}

// Tail coefficients theta_k, k >= 1, of log(h_0 + h_1 T + ...); theta_0 is
// the caller's business (it carries the branch).  Uses
// k theta_k = k u_k - sum_{j<k} j theta_j u_{k-j}, with u_k = h_k / h_0.
template <class T>
std::vector<T> series_log_tail(const std::vector<T>& h) {
  if (h.empty() || !series_detail::is_invertible(h[0]))
    throw std::domain_error("series log: vanishing leading coefficient");
  T inv0 = series_detail::recip(h[0]);
  std::vector<T> u;
  u.reserve(h.size());
  for (const auto& hk : h) u.push_back(hk * inv0);
  std::vector<T> th(h.size(), series_detail::zero_like(h[0]));
  for (size_t k = 1; k < h.size(); ++k) {
    T s = u[k] * cplx(double(k));
    for (size_t j = 1; j < k; ++j) s = s - th[j] * cplx(double(j)) * u[k - j];
    th[k] = s * cplx(1.0 / double(k));
  }
  return th;  // th[0] left as zero
}

// exp of a series with zero constant term; E' = theta' E.
template <class T>
std::vector<T> series_exp_tail(const std::vector<T>& th, const T& one) {
  std::vector<T> e(th.size(), series_detail::zero_like(one));
  if (th.empty()) return e;
  e[0] = one;
  for (size_t k = 1; k < th.size(); ++k) {
    T s = series_detail::zero_like(one);
    for (size_t j = 1; j <= k; ++j) s = s + th[j] * cplx(double(j)) * e[k - j];
    e[k] = s * cplx(1.0 / double(k));
  }
  return e;
}

}  // namespace gftoda
