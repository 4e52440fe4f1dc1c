#include <doctest.h>

#include <cmath>

#include "gftoda/contour.hpp"
#include "gftoda/oracle.hpp"
#include "gftoda/quadrature.hpp"

using namespace gftoda;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("log gamma oracle sanity") {
  CHECK(std::abs(std::exp(oracle::log_gamma(cplx(0.5))) - std::sqrt(kPi)) < 1e-13);
  CHECK(std::abs(std::exp(oracle::log_gamma(cplx(5))) - cplx(24)) < 1e-11);
  // recurrence Gamma(z+1) = z Gamma(z) off the real axis
  cplx z(0.7, 0.4);
  CHECK(std::abs(std::exp(oracle::log_gamma(z + cplx(1)) - oracle::log_gamma(z)) - z) < 1e-12);
  CHECK(std::abs(oracle::gauss_2f1(cplx(1), cplx(1), cplx(1), cplx(0.3)) - cplx(1.0 / 0.7)) <
        1e-13);
  CHECK(std::abs(oracle::kummer_1f1(cplx(1), cplx(1), cplx(0.4)) - std::exp(cplx(0.4))) < 1e-13);
}

TEST_CASE("unit integral on a segment") {
  auto r = integrate([](cplx) { return cplx(1); }, Contour::segment(cplx(0), cplx(1)));
  CHECK(std::abs(r.value - cplx(1)) < 1e-14);
  CHECK(r.converged);
}

TEST_CASE("beta integral with endpoint singularities") {
  const cplx a(0.4), c(1.7);
  auto f = [&](const EvalPoint& p) {
    // s = u, 1 - s = one_minus_u on this segment
    return std::exp((a - cplx(1)) * std::log(cplx(p.u)) +
                    (c - a - cplx(1)) * std::log(cplx(p.one_minus_u)));
  };
  QuadOptions opt;
  opt.tol_abs = 1e-13;
  opt.tol_rel = 1e-12;
  auto r = integrate(f, Contour::segment(cplx(0), cplx(1)), opt);
  cplx expect = oracle::beta(a, c - a);
  CHECK(std::abs(r.value - expect) / std::abs(expect) < 1e-10);
}

TEST_CASE("residue on the unit circle") {
  auto r = integrate([](cplx s) { return cplx(1) / s; }, Contour::circle(1.0));
  CHECK(std::abs(r.value - cplx(0, 2 * kPi)) < 1e-13);
}

TEST_CASE("hankel loop reproduces the reciprocal gamma function") {
  // (1/2 pi i) \oint e^s s^{-z} ds over a loop around the negative real axis
  const cplx z(0.6);
  Contour loop = Contour::hankel_loop(1.0, 40.0);
  BranchTracker tracker(loop, {{cplx(0), cplx(1)}});  // w = s
  auto f = [&](const EvalPoint& p) {
    return std::exp(p.s - z * tracker.log(0, p.t, p.s));
  };
  QuadOptions opt;
  opt.tol_abs = 1e-13;
  opt.tol_rel = 1e-11;
  auto r = integrate(f, loop, opt);
  cplx expect = cplx(0, 2 * kPi) * std::exp(-oracle::log_gamma(z));
  CHECK(std::abs(r.value - expect) / std::abs(expect) < 1e-10);
  CHECK(r.endpoint_decay < 1e-12);

  // doubling the truncation radius must not move the value
  Contour loop2 = Contour::hankel_loop(1.0, 80.0);
  BranchTracker tracker2(loop2, {{cplx(0), cplx(1)}});
  auto f2 = [&](const EvalPoint& p) {
    return std::exp(p.s - z * tracker2.log(0, p.t, p.s));
  };
  auto r2 = integrate(f2, loop2, opt);
  CHECK(std::abs(r2.value - r.value) < 1e-10);
}

TEST_CASE("ray pair reproduces the airy function") {
  // (1/2 pi i) int exp(x s - s^3/3) ds from inf e^{-2pi i/3} to inf e^{2pi i/3}
  Contour rays = Contour::ray_pair(-2 * kPi / 3, 2 * kPi / 3, 6.0);
  const cplx x(1.0);
  auto f = [&](cplx s) { return std::exp(x * s - s * s * s / cplx(3)); };
  QuadOptions opt;
  opt.tol_abs = 1e-13;
  opt.tol_rel = 1e-11;
  auto r = integrate(f, rays, opt);
  const double ai1 = 0.13529241631288141552;  // Ai(1)
  CHECK(std::abs(r.value - cplx(0, 2 * kPi) * ai1) < 1e-10);
  CHECK(r.endpoint_decay < 1e-12);

  Contour rays2 = Contour::ray_pair(-2 * kPi / 3, 2 * kPi / 3, 9.0);
  auto r2 = integrate(f, rays2, opt);
  CHECK(std::abs(r2.value - r.value) < 1e-10);
}

TEST_CASE("jet integration differentiates under the integral") {
  // F(x) = int_0^1 e^{x s} ds; F'(1) = int_0^1 s e^s ds = 1
  JetShape shape{1, 1};
  auto f = [&](const EvalPoint& p) {
    Jet x = Jet::variable(shape, 0, cplx(1));
    return (x * p.s).exp();
  };
  Jet F = integrate_jet(f, Contour::segment(cplx(0), cplx(1)), shape);
  MultiIndex m;
  m.e[0] = 1;
  CHECK(std::abs(F.partial(m) - cplx(1)) < 1e-10);
  CHECK(std::abs(F.value() - (std::exp(1.0) - 1.0)) < 1e-12);

  // order-0 jets reproduce plain integration
  JetShape s0{1, 0};
  Jet F0 = integrate_jet(
      [&](const EvalPoint& p) { return Jet::constant(s0, std::exp(p.s)); },
      Contour::segment(cplx(0), cplx(1)), s0);
  CHECK(std::abs(F0.value() - (std::exp(1.0) - 1.0)) < 1e-12);

  // mixed second partial of a bilinear integrand:
  // G(x, y) = int_0^1 s (x + y s) ds, d2G/dxdy = 0; H = int_0^1 (x s)(y s) ds,
  // d2H/dxdy = int_0^1 s^2 ds = 1/3
  JetShape s2{2, 2};
  Jet H = integrate_jet(
      [&](const EvalPoint& p) {
        Jet x = Jet::variable(s2, 0, cplx(0.7));
        Jet y = Jet::variable(s2, 1, cplx(-0.3));
        return (x * p.s) * (y * p.s);
      },
      Contour::segment(cplx(0), cplx(1)), s2);
  MultiIndex mxy;
  mxy.e[0] = 1;
  mxy.e[1] = 1;
  CHECK(std::abs(H.partial(mxy) - cplx(1.0 / 3)) < 1e-10);
}

TEST_CASE("branch tracker stays continuous around a loop") {
  Contour loop = Contour::hankel_loop(0.5, 10.0);
  BranchTracker tracker(loop, {{cplx(0), cplx(1)}});
  // lower lip carries arg -pi, upper lip +pi
  cplx s, d;
  loop.at(0.05, s, d);
  CHECK(tracker.log(0, 0.05, s).imag() == doctest::Approx(-kPi).epsilon(1e-9));
  loop.at(0.95, s, d);
  CHECK(tracker.log(0, 0.95, s).imag() == doctest::Approx(kPi).epsilon(1e-9));
}
