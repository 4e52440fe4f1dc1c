#include <doctest.h>

#include <cmath>

#include "gftoda/laplace.hpp"
#include "gftoda/rng.hpp"

using namespace gftoda;

namespace {

const cplx kAlpha(0.37, 0.11);
const cplx kBeta(0.81, -0.07);

FieldPoint random_point(Rng& rng) {
  // keep x - y away from zero
  cplx x = cplx(1.5, 0) + rng.box(0.4);
  cplx y = cplx(-0.8, 0) + rng.box(0.4);
  return {x, y};
}

Jet random_field_jet(Rng& rng, int order) {
  Jet j(JetShape{2, order});
  auto cs = j.coeffs();
  for (auto& c : cs) c = rng.box(0.5);
  cs[0] = cplx(1.1, 0) + rng.box(0.3);
  return j;
}

// log-smooth conjugation gauge F = c1 x + c2 y + c3 x y
ScalarField random_gauge(Rng& rng) {
  ScalarField X = ScalarField::coord_x(), Y = ScalarField::coord_y();
  return rng.box(0.6) * X + rng.box(0.6) * Y + rng.box(0.4) * (X * Y);
}

// fill mixed coefficients so that M u = 0 holds to the jet order
Jet manufacture_solution(const HyperOp& M, FieldPoint pt, int order, Rng& rng) {
  Jet u(JetShape{2, order});
  for (int p = 0; p <= order; ++p)
    for (int q = 0; p + q <= order; ++q) {
      MultiIndex m;
      m.e[0] = std::uint8_t(p);
      m.e[1] = std::uint8_t(q);
      u.set_coeff(m, (p == 0 || q == 0) ? rng.box(0.8) : cplx(0));
    }
  for (int d = 2; d <= order; ++d)
    for (int p = 1; p < d; ++p) {
      const int q = d - p;
      if (q > order - p) continue;
      Jet res = hyperop_apply(M, u, pt);
      MultiIndex low;
      low.e[0] = std::uint8_t(p - 1);
      low.e[1] = std::uint8_t(q - 1);
      MultiIndex tgt;
      tgt.e[0] = std::uint8_t(p);
      tgt.e[1] = std::uint8_t(q);
      u.set_coeff(tgt, u.coeff(tgt) - res.coeff(low) / double(p * q));
    }
  return u;
}

}  // namespace

TEST_CASE("invariants of simple operators") {
  HyperOp wave{ScalarField::constant(0), ScalarField::constant(0), ScalarField::constant(0), {}};
  auto inv = invariants(wave, {cplx(0.3), cplx(-0.2)}, 3);
  CHECK(inv.h.max_abs() == 0.0);
  CHECK(inv.k.max_abs() == 0.0);

  // EPD operator: h = -beta(alpha+1)/(x-y)^2, k = -alpha(beta+1)/(x-y)^2
  auto fam = epd_family(kAlpha, kBeta);
  Rng rng(51);
  for (int rep = 0; rep < 5; ++rep) {
    FieldPoint pt = random_point(rng);
    auto iv = invariants(fam.m0, pt, 2);
    const cplx d2 = (pt.x - pt.y) * (pt.x - pt.y);
    CHECK(std::abs(iv.h.value() + kBeta * (kAlpha + 1.0) / d2) < 1e-12);
    CHECK(std::abs(iv.k.value() + kAlpha * (kBeta + 1.0) / d2) < 1e-12);
  }
}

TEST_CASE("conjugation preserves invariants") {
  auto fam = epd_family(kAlpha, kBeta);
  Rng rng(52);
  for (int rep = 0; rep < 5; ++rep) {
    HyperOp M2 = conjugate(fam.m0, random_gauge(rng));
    FieldPoint pt = random_point(rng);
    auto i1 = invariants(fam.m0, pt, 2);
    auto i2 = invariants(M2, pt, 2);
    Jet dh = i1.h - i2.h, dk = i1.k - i2.k;
    CHECK(dh.max_abs() < 1e-10);
    CHECK(dk.max_abs() < 1e-10);
  }
}

TEST_CASE("laplace transform invariant recurrences") {
  auto fam = epd_family(kAlpha, kBeta);
  HyperOp up = laplace_up(fam.m0);
  HyperOp down = laplace_down(fam.m0);
  Rng rng(53);
  for (int rep = 0; rep < 5; ++rep) {
    FieldPoint pt = random_point(rng);
    auto iv = invariants(fam.m0, pt, 3);
    auto ivu = invariants(up, pt, 1);
    auto ivd = invariants(down, pt, 1);
    // h_+ = 2h - k - dxdy log h, k_+ = h
    cplx mix_h = iv.h.log().derive(0).derive(1).value();
    CHECK(std::abs(ivu.h.value() - (2.0 * iv.h.value() - iv.k.value() - mix_h)) < 1e-9);
    CHECK(std::abs(ivu.k.value() - iv.h.value()) < 1e-10);
    // h_- = k, k_- = 2k - h - dxdy log k
    cplx mix_k = iv.k.log().derive(0).derive(1).value();
    CHECK(std::abs(ivd.h.value() - iv.k.value()) < 1e-10);
    CHECK(std::abs(ivd.k.value() - (2.0 * iv.k.value() - iv.h.value() - mix_k)) < 1e-9);
  }

  // up-down invariant roundtrip: h of up(down(M)) equals h of M
  HyperOp around = laplace_up(laplace_down(fam.m0));
  FieldPoint pt = random_point(rng);
  CHECK(std::abs(invariants(around, pt, 0).h.value() - invariants(fam.m0, pt, 0).h.value()) <
        1e-9);
}

TEST_CASE("epd ladder matches the closed form") {
  auto fam = epd_family(kAlpha, kBeta);
  auto normal_m = [&](int m) {
    HyperOp N;
    N.a = fam.a_m(m);
    N.b = ScalarField::constant(cplx(0));
    N.c = fam.c_m(m);
    return N;
  };
  auto full_m = [&](int m) {
    HyperOp M;
    ScalarField d = ScalarField::coord_x() - ScalarField::coord_y();
    M.a = ScalarField::constant(kBeta - double(m)) / d;
    M.b = ScalarField::constant(-(kAlpha + double(m))) / d;
    M.c = ScalarField::constant(cplx(0));
    return M;
  };
  Rng rng(54);
  for (int m : {0, 1, 2}) {
    // one up-step of the normal family lands on the next closed form
    HyperOp up = laplace_up(normal_m(m));
    HyperOp expect = normal_m(m + 1);
    // the up-step of the raw family is only gauge-equivalent to the next
    // member: the invariants agree, the coefficients do not
    HyperOp up_raw = laplace_up(full_m(m));
    HyperOp next_raw = full_m(m + 1);
    for (int rep = 0; rep < 3; ++rep) {
      FieldPoint pt = random_point(rng);
      CHECK(std::abs(up.a.value(pt) - expect.a.value(pt)) < 1e-10);
      CHECK(std::abs(up.b.value(pt)) < 1e-10);
      CHECK(std::abs(up.c.value(pt) - expect.c.value(pt)) < 1e-10);

      auto iv1 = invariants(up_raw, pt, 0);
      auto iv2 = invariants(next_raw, pt, 0);
      CHECK(std::abs(iv1.h.value() - iv2.h.value()) < 1e-10);
      CHECK(std::abs(iv1.k.value() - iv2.k.value()) < 1e-10);
    }
  }
}

TEST_CASE("backlund factorization and composition on solutions") {
  auto fam = epd_family(kAlpha, kBeta);
  const HyperOp& M = fam.m0;
  Rng rng(55);
  for (int rep = 0; rep < 5; ++rep) {
    FieldPoint pt = random_point(rng);
    const int K = 6;
    Jet u = random_field_jet(rng, K);
    Jet A = M.a.eval(pt, K), B = M.b.eval(pt, K);
    auto iv = invariants(M, pt, K - 2);

    // M = (dx + b)(dy + a) - h applied to arbitrary u
    Jet inner = u.derive(1) + (A * u).truncate(K - 1);
    Jet lhs1 = inner.derive(0) + (B.truncate(K - 1) * inner).truncate(K - 2);
    Jet mu = hyperop_apply(M, u, pt);
    Jet d1 = lhs1 - mu - (iv.h * u.truncate(K - 2));
    CHECK(d1.max_abs() < 1e-10);

    // M = (dy + a)(dx + b) - k
    Jet inner2 = u.derive(0) + (B * u).truncate(K - 1);
    Jet lhs2 = inner2.derive(1) + (A.truncate(K - 1) * inner2).truncate(K - 2);
    Jet d2 = lhs2 - mu - (iv.k * u.truncate(K - 2));
    CHECK(d2.max_abs() < 1e-10);

    // on manufactured solutions the down-then-up composition is h * u
    Jet us = manufacture_solution(M, pt, K, rng);
    CHECK(hyperop_apply(M, us, pt).max_abs() < 1e-10);
    Jet inner_s = us.derive(1) + (A * us).truncate(K - 1);
    Jet comp = inner_s.derive(0) + (B.truncate(K - 1) * inner_s).truncate(K - 2);
    Jet diff = comp - (iv.h * us.truncate(K - 2));
    CHECK(diff.max_abs() < 1e-9);
  }

  // constant-coefficient operator: laplace_down leaves b at zero
  HyperOp cc{ScalarField::constant(0), ScalarField::constant(0),
             ScalarField::constant(cplx(0.7, 0.2)), {}};
  CHECK(std::abs(laplace_down(cc).b.value({cplx(0.4), cplx(0.1)})) < 1e-14);
}

TEST_CASE("normalization") {
  auto fam = epd_family(kAlpha, kBeta);
  auto norm = normalize(fam.m0);
  Rng rng(56);
  for (int rep = 0; rep < 5; ++rep) {
    FieldPoint pt = random_point(rng);
    const cplx d = pt.x - pt.y;
    // N_0 display: a' = (beta - alpha)/(x - y), c' = alpha(beta + 1)/(x - y)^2
    CHECK(std::abs(norm.op.a.value(pt) - (kBeta - kAlpha) / d) < 1e-11);
    CHECK(std::abs(norm.op.c.value(pt) - kAlpha * (kBeta + 1.0) / (d * d)) < 1e-11);
    CHECK(std::abs(norm.op.b.value(pt)) == 0.0);

    // a'_x = h - k and c' = -k
    auto iv = invariants(norm.op, pt, 1);
    Jet ax = norm.op.a.eval(pt, 1).derive(0);
    CHECK(std::abs(ax.value() - (iv.h.value() - iv.k.value())) < 1e-10);
    CHECK(std::abs(norm.op.c.value(pt) + iv.k.value()) < 1e-11);
  }

  // already-normal operators pass through with zero gauge
  auto norm2 = normalize(norm.op);
  FieldPoint pt = random_point(rng);
  CHECK(std::abs(norm2.op.a.value(pt) - norm.op.a.value(pt)) < 1e-12);
  CHECK(std::abs(norm2.gauge_log.value(pt)) == 0.0);

  HyperOp bare{ScalarField::constant(0), ScalarField::constant(1), ScalarField::constant(0), {}};
  CHECK_THROWS_AS((void)normalize(bare), std::invalid_argument);
}

TEST_CASE("normal sequences against the closed families") {
  Rng rng(57);
  for (const std::string& name : closed_family_names()) {
    auto fam = closed_family_by_name(name, kAlpha, kBeta);
    NormalSeq seq(fam.a_m(0), fam.c_m(0), 14);
    for (int m = -3; m <= 3; ++m) {
      for (int rep = 0; rep < 3; ++rep) {
        FieldPoint pt = random_point(rng);
        auto e = seq.entry(m, pt, 0);
        CHECK(std::abs(e.a.value() - fam.a_m(m).value(pt)) < 1e-9);
        CHECK(std::abs(e.c.value() - fam.c_m(m).value(pt)) < 1e-9);
      }
    }
  }

  // one upward step undoes a downward step
  auto fam = epd_family(kAlpha, kBeta);
  NormalSeq seq(fam.a_m(0), fam.c_m(0), 12);
  FieldPoint pt = random_point(rng);
  NormalSeq from_minus(fam.a_m(-1), fam.c_m(-1), 12);
  auto redo = from_minus.entry(1, pt, 2);
  auto base = seq.entry(0, pt, 2);
  Jet da = base.a - redo.a, dc = base.c - redo.c;
  CHECK(da.max_abs() < 1e-9);
  CHECK(dc.max_abs() < 1e-9);

  // order budget guard
  CHECK_THROWS_AS((void)seq.entry(6, pt, 2), std::invalid_argument);
}

TEST_CASE("toda equation residuals for the closed families") {
  Rng rng(58);
  auto fam = epd_family(kAlpha, kBeta);
  NormalSeq seq(fam.a_m(0), fam.c_m(0), 14);
  for (int n = -2; n <= 2; ++n)
    for (int rep = 0; rep < 3; ++rep) {
      FieldPoint pt = random_point(rng);
      CHECK(toda_te_residual(seq, n, pt) < 1e-8);
      CHECK(toda_pair_residual(seq, n, pt) < 1e-8);
    }

  auto dc = closed_family_by_name("doubly-confluent", kAlpha, kBeta);
  NormalSeq dseq(dc.a_m(0), dc.c_m(0), 14);
  FieldPoint pt = random_point(rng);
  CHECK(toda_te_residual(dseq, 0, pt) < 1e-12);
  auto e0 = dseq.entry(0, pt, 0), e2 = dseq.entry(2, pt, 0);
  CHECK(std::abs(e0.c.value() - e2.c.value()) < 1e-12);
}

namespace {

std::function<Jet(std::span<const Jet>)> random_test_fn(Rng& rng, int ncoords) {
  std::vector<cplx> lin(ncoords), quad(ncoords);
  for (auto& v : lin) v = rng.box(0.5);
  for (auto& v : quad) v = rng.box(0.4);
  cplx c0 = cplx(1, 0) + rng.box(0.3);
  return [lin, quad, c0](std::span<const Jet> xs) {
    Jet w = Jet::constant(xs[0].shape(), c0);
    Jet e(xs[0].shape());
    for (size_t p = 0; p < xs.size(); ++p) {
      w += xs[p] * lin[p];
      e += xs[p] * xs[p] * quad[p];
    }
    return w.exp() + e;
  };
}

AlphaParams generic_alpha(const Partition& lam, Rng& rng) {
  std::vector<std::vector<cplx>> blocks;
  cplx sum(0);
  for (int b = 0; b < lam.num_blocks(); ++b) {
    std::vector<cplx> blk(lam.block_size(b));
    for (auto& v : blk) v = cplx(0.4, 0) + rng.box(0.5);
    if (b + 1 == lam.num_blocks()) blk[0] = cplx(-2) - sum;
    sum += blk[0];
    blocks.push_back(blk);
  }
  return AlphaParams(lam, blocks);
}

}  // namespace

TEST_CASE("operator identities on test functions") {
  Rng rng(59);
  for (auto lam : {Partition({2, 1, 1}), Partition({2, 2}), Partition({3, 1})}) {
    AlphaParams alpha = generic_alpha(lam, rng);

    std::vector<cplx> x(4);
    for (auto& v : x) v = rng.box(1.0) + cplx(0.2, 0);
    x[0] += cplx(2.0);  // keep coordinate differences generic

    for (const auto& id : ideal_identities(lam, alpha))
      for (int rep = 0; rep < 4; ++rep)
        CHECK(identity_residual(id, random_test_fn(rng, 4), x) < 1e-9);

    for (int i = 0; i < lam.num_blocks(); ++i)
      for (int j = 0; j < lam.num_blocks(); ++j) {
        if (i == j) continue;
        auto id = contiguity_composition_identity(lam, alpha, i, j);
        CHECK(identity_residual(id, random_test_fn(rng, 4), x) < 1e-9);
      }

    // constants probe the zeroth-order parts
    auto const_fn = [](std::span<const Jet> xs) {
      return Jet::constant(xs[0].shape(), cplx(1.37, -0.2));
    };
    for (const auto& id : ideal_identities(lam, alpha))
      CHECK(identity_residual(id, const_fn, x) < 1e-12);
  }
}

TEST_CASE("reduced system tables have the displayed leading entries") {
  Partition lam({2, 1, 1});
  AlphaParams alpha(lam, {{cplx(0.3), cplx(0.7)}, {cplx(0.5)}, {cplx(-2.8)}});
  auto ops = reduced_system(lam, alpha);
  // M01 applied to f = x1^2 gives 2 x1 - 2 a0 x1 at any point
  const LinOp* m01 = nullptr;
  for (const auto& n : ops)
    if (n.name == "M01") m01 = &n.op;
  REQUIRE(m01 != nullptr);
  std::vector<cplx> x = {cplx(0.9), cplx(0.4), cplx(-0.3), cplx(1.2)};
  JetShape shape{4, 3};
  std::vector<Jet> coords;
  for (int p = 0; p < 4; ++p) coords.push_back(Jet::variable(shape, p, x[p]));
  Jet f = coords[1] * coords[1];
  cplx got = m01->apply(f, coords).value();
  cplx expect = x[1] * 2.0 - alpha.flat(0) * (2.0 * x[1]);
  CHECK(std::abs(got - expect) < 1e-13);

  Partition ones({1, 1, 1, 1});
  AlphaParams dummy(ones, {{cplx(0.3)}, {cplx(0.3)}, {cplx(0.3)}, {cplx(-2.9)}});
  CHECK_THROWS_AS((void)reduced_system(ones, dummy), std::invalid_argument);
}
