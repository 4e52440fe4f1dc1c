#include <doctest.h>

#include <cmath>

#include "gftoda/jet.hpp"
#include "gftoda/rng.hpp"

using namespace gftoda;

namespace {

MultiIndex mi(std::initializer_list<int> es) {
  MultiIndex m;
  int i = 0;
  for (int e : es) m.e[i++] = std::uint8_t(e);
  return m;
}

Jet random_jet(Rng& rng, JetShape shape) {
  // tails small against the constant term, so high-order powers in the
  // series identities do not amplify roundoff past the checked residual
  Jet j(shape);
  auto cs = j.coeffs();
  for (auto& c : cs) c = rng.box(0.3);
  cs[0] = cplx(1.0, 0) + rng.box(0.35);
  return j;
}

double coeff_diff(const Jet& a, const Jet& b) {
  Jet d = a;
  d -= b;
  return d.max_abs();
}

}  // namespace

TEST_CASE("coordinate jets") {
  JetShape s2{2, 2};
  Jet x = Jet::variable(s2, 0, cplx(3));
  CHECK(x.coeff(mi({0, 0})) == cplx(3));
  CHECK(x.coeff(mi({1, 0})) == cplx(1));
  CHECK(x.coeff(mi({0, 1})) == cplx(0));
  CHECK(x.coeff(mi({2, 0})) == cplx(0));

  JetShape s1{2, 1};
  Jet y = Jet::variable(s1, 1, cplx(0));
  CHECK(y.coeff(mi({0, 0})) == cplx(0));
  CHECK(y.coeff(mi({0, 1})) == cplx(1));
  CHECK(y.coeff(mi({1, 0})) == cplx(0));
}

TEST_CASE("square of coordinate jet") {
  JetShape s{1, 2};
  Jet x = Jet::variable(s, 0, cplx(2));
  Jet f = x * x;
  CHECK(std::abs(f.coeff(mi({0})) - cplx(4)) < 1e-15);
  CHECK(std::abs(f.coeff(mi({1})) - cplx(4)) < 1e-15);
  CHECK(std::abs(f.coeff(mi({2})) - cplx(1)) < 1e-15);  // f''/2!
}

TEST_CASE("product expansion at a point") {
  JetShape s{2, 2};
  Jet x = Jet::variable(s, 0, cplx(2));
  Jet y = Jet::variable(s, 1, cplx(3));
  Jet f = x * y;
  CHECK(std::abs(f.coeff(mi({0, 0})) - cplx(6)) < 1e-15);
  CHECK(std::abs(f.coeff(mi({1, 0})) - cplx(3)) < 1e-15);
  CHECK(std::abs(f.coeff(mi({0, 1})) - cplx(2)) < 1e-15);
  CHECK(std::abs(f.coeff(mi({1, 1})) - cplx(1)) < 1e-15);
  CHECK(std::abs(f.partial(mi({1, 1})) - cplx(1)) < 1e-15);
}

TEST_CASE("inverse and division") {
  Rng rng(11);
  for (JetShape s : {JetShape{2, 12}, JetShape{6, 2}}) {
    for (int rep = 0; rep < 20; ++rep) {
      Jet a = random_jet(rng, s);
      Jet id = Jet::constant(s, cplx(1));
      CHECK(coeff_diff(a * a.inverse(), id) < 1e-13);
      CHECK(coeff_diff(a / a, id) < 1e-14);
    }
  }
}

TEST_CASE("ring axioms on random jets") {
  Rng rng(5);
  for (JetShape s : {JetShape{2, 12}, JetShape{6, 2}}) {
    for (int rep = 0; rep < 25; ++rep) {
      Jet a = random_jet(rng, s);
      Jet b = random_jet(rng, s);
      Jet c = random_jet(rng, s);
      CHECK(coeff_diff((a * b) * c, a * (b * c)) < 1e-13);
      CHECK(coeff_diff(a * (b + c), a * b + a * c) < 1e-13);
      CHECK(coeff_diff(a * b, b * a) < 1e-13);
    }
  }
}

TEST_CASE("transcendental identities") {
  Rng rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    JetShape s{2, 8};
    Jet a = random_jet(rng, s);
    CHECK(coeff_diff(a.log().exp(), a) < 1e-12);

    // brute-force oracle: pow(a, 2) must be the convolution square
    CHECK(coeff_diff(a.pow(cplx(2)), a * a) < 1e-12);

    cplx mu = rng.box(1.0);
    Jet p = a.pow(mu) * a.pow(-mu);
    CHECK(coeff_diff(p, Jet::constant(s, cplx(1))) < 1e-12);
  }

  Jet c = Jet::constant(JetShape{2, 4}, cplx(2.5, 0.5));
  Jet lc = c.log();
  CHECK(std::abs(lc.value() - std::log(cplx(2.5, 0.5))) < 1e-15);
  Jet lc_tail = lc;
  lc_tail -= lc.value();
  CHECK(lc_tail.max_abs() < 1e-15);
}

TEST_CASE("partial extraction") {
  JetShape s{1, 5};
  Jet x = Jet::variable(s, 0, cplx(0));
  Jet f = x.exp();
  CHECK(std::abs(f.partial(mi({3})) - cplx(1)) < 1e-14);  // all exp derivatives are 1 at 0

  Jet c = Jet::constant(s, cplx(4.2));
  CHECK(std::abs(c.partial(mi({2}))) == 0.0);

  JetShape s2{2, 2};
  Jet xy = Jet::variable(s2, 0, cplx(1.3)) * Jet::variable(s2, 1, cplx(-0.4));
  CHECK(std::abs(xy.partial(mi({1, 1})) - cplx(1)) < 1e-14);
}

TEST_CASE("chain consistency against central finite differences") {
  // f(x) = exp(x) (x^2 + 1) / (x + 3), evaluated as scalars and as jets
  auto f_scalar = [](cplx x) { return std::exp(x) * (x * x + cplx(1)) / (x + cplx(3)); };
  auto f_jet = [](const Jet& x) {
    return x.exp() * (x * x + cplx(1)) / (x + cplx(3));
  };
  Rng rng(3);
  const double step = 1e-4;
  for (int rep = 0; rep < 10; ++rep) {
    cplx x0 = rng.box(0.8);
    JetShape s{2, 4};  // univariate-in-x inside a 2-var shape
    Jet fx = f_jet(Jet::variable(s, 0, x0));
    cplx deriv = fx.partial(mi({1, 0}));
    cplx fd = (f_scalar(x0 + step) - f_scalar(x0 - step)) / (2 * step);
    CHECK(std::abs(deriv - fd) < 1e-6);
  }
}

TEST_CASE("derive and truncate") {
  JetShape s{2, 6};
  Jet x = Jet::variable(s, 0, cplx(0.7));
  Jet y = Jet::variable(s, 1, cplx(-0.2));
  Jet f = (x * y).exp();
  Jet fx = f.derive(0);
  // d/dx exp(xy) = y exp(xy)
  Jet expect = (y * f).truncate(5);
  CHECK(coeff_diff(fx, expect) < 1e-12);

  CHECK_THROWS(f.coeff(mi({7, 0})));
  CHECK_THROWS((void)Jet::variable(s, 2, cplx(0)));
}

TEST_CASE("compose substitutes inner jets") {
  // outer: F(p, q) = p^2 q around (p0, q0); inner: p = x + y^2, q = x y
  JetShape inner_shape{2, 3};
  Jet x = Jet::variable(inner_shape, 0, cplx(0.4));
  Jet y = Jet::variable(inner_shape, 1, cplx(1.1));
  Jet p = x + y * y;
  Jet q = x * y;

  JetShape outer_shape{2, 3};
  Jet P = Jet::variable(outer_shape, 0, p.value());
  Jet Q = Jet::variable(outer_shape, 1, q.value());
  Jet outer = P * P * Q;

  Jet composed = jet_compose(outer, std::array<Jet, 2>{p, q});
  Jet direct = p * p * q;
  CHECK(coeff_diff(composed, direct) < 1e-12);
}
