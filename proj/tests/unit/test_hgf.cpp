#include <doctest.h>

#include <cmath>

#include "gftoda/hgf.hpp"
#include "gftoda/lab.hpp"
#include "gftoda/oracle.hpp"
#include "gftoda/rng.hpp"

using namespace gftoda;

namespace {

std::vector<int> flat_mi(int n, std::initializer_list<std::pair<int, int>> entries) {
  std::vector<int> m(n, 0);
  for (auto [p, e] : entries) m[p] = e;
  return m;
}

}  // namespace

TEST_CASE("slice reduction") {
  Partition lam({2, 1});
  // z already of slice form: h = identity blocks, x = top row
  SlicePoint x0(lam, {cplx(1.3), cplx(0.4), cplx(-0.7)});
  auto red = slice_reduce(x0.embed());
  CHECK(std::abs(red.h[0].coeffs[0] - cplx(1)) < 1e-14);
  CHECK(std::abs(red.h[0].coeffs[1]) < 1e-14);
  for (int p = 0; p < 3; ++p) CHECK(std::abs(red.x.flat(p) - x0.flat(p)) < 1e-14);

  // n = 1 block: x_0 = z_00 / z_10
  MatrixPoint z(Partition({1, 1, 1}),
                {MatrixBlock{{cplx(0.8)}, {cplx(0.5)}}, MatrixBlock{{cplx(1.0)}, {cplx(2.0)}},
                 MatrixBlock{{cplx(-1.0)}, {cplx(1.0)}}});
  auto r2 = slice_reduce(z);
  CHECK(std::abs(r2.x.flat(0) - cplx(1.6)) < 1e-14);

  // roundtrip: z h must equal the embedded slice point
  Rng rng(31);
  Partition lam2({2, 2, 1});
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<MatrixBlock> blocks;
    for (int b = 0; b < lam2.num_blocks(); ++b) {
      int n = lam2.block_size(b);
      MatrixBlock mb;
      for (int k = 0; k < n; ++k) {
        mb.row0.push_back(rng.box(1.0));
        mb.row1.push_back(k == 0 ? cplx(1) + rng.box(0.4) : rng.box(1.0));
      }
      blocks.push_back(mb);
    }
    MatrixPoint zz(lam2, blocks);
    auto red2 = slice_reduce(zz);
    MatrixPoint back = zz.times_h(red2.h);
    for (int b = 0; b < lam2.num_blocks(); ++b) {
      int n = lam2.block_size(b);
      for (int k = 0; k < n; ++k) {
        CHECK(std::abs(back.block(b).row0[k] - red2.x.coord(b, k)) < 1e-12);
        CHECK(std::abs(back.block(b).row1[k] - (k == 0 ? cplx(1) : cplx(0))) < 1e-12);
      }
    }
  }
}

TEST_CASE("gauss preset matches the euler integral oracle") {
  const cplx a(0.4), b(0.5), c(1.7);
  const auto& preset = ClassicalPreset::by_name("gauss");
  AlphaParams alpha = preset.alpha(a, b, c);
  for (double x : {0.0, 0.1, 0.3, 0.5}) {
    cplx F = hgf_eval_raw(preset.embed(cplx(x)), alpha, preset.contour(cplx(x)));
    cplx expect = oracle::beta(a, c - a) * oracle::gauss_2f1(a, b, c, cplx(x));
    CHECK(std::abs(F - expect) / std::abs(expect) < 1e-8);
  }
}

TEST_CASE("kummer preset matches the confluent series oracle") {
  const cplx a(0.4), c(1.7);
  const auto& preset = ClassicalPreset::by_name("kummer");
  AlphaParams alpha = preset.alpha(a, cplx(0), c);
  for (double x : {0.2, 0.5, 1.0}) {
    cplx F = hgf_eval_raw(preset.embed(cplx(x)), alpha, preset.contour(cplx(x)));
    cplx expect = oracle::beta(a, c - a) * oracle::kummer_1f1(a, c, cplx(x));
    CHECK(std::abs(F - expect) / std::abs(expect) < 1e-8);
  }
}

TEST_CASE("contour deformation leaves the gauss value fixed") {
  const cplx a(0.4), b(0.5), c(1.7), x(0.3);
  const auto& preset = ClassicalPreset::by_name("gauss");
  AlphaParams alpha = preset.alpha(a, b, c);
  cplx F_seg = hgf_eval_raw(preset.embed(x), alpha, Contour::segment(cplx(0), cplx(1)));
  cplx F_arc = hgf_eval_raw(preset.embed(x), alpha, Contour::arc(cplx(0), cplx(1), 0.15));
  CHECK(std::abs(F_seg - F_arc) < 1e-9);
}

TEST_CASE("hermite preset evaluates on its loop") {
  const cplx a(0.6);
  const auto& preset = ClassicalPreset::by_name("hermite-weber");
  AlphaParams alpha = preset.alpha(a, cplx(0), cplx(0));
  cplx F = hgf_eval_raw(preset.embed(cplx(1.0)), alpha, preset.contour(cplx(1.0)));
  CHECK(std::isfinite(F.real()));
  CHECK(std::abs(F) > 1e-8);
}

TEST_CASE("slice evaluation equals raw on the embedding") {
  const auto& lab = lab_1111();
  SlicePoint x = lab.point(0.2);
  Contour C = lab.contour(x);
  cplx via_slice = hgf_eval_slice(x, lab.alpha, C);
  cplx via_raw = hgf_eval_raw(x.embed(), lab.alpha, C);
  CHECK(std::abs(via_slice - via_raw) < 1e-14);
  CHECK(std::abs(via_slice) > 1e-8);
}

TEST_CASE("slice partials match finite differences") {
  const auto& lab = lab_1111();
  SlicePoint x = lab.point(0.0);
  Contour C = lab.contour(x);
  const int N = 4;

  // d/dx_0^(3): a coordinate away from the contour anchors
  auto parts =
      hgf_partials(x, lab.alpha, {flat_mi(N, {}), flat_mi(N, {{2, 1}})}, C);
  const double step = 1e-5;
  auto shift = [&](double d) {
    SlicePoint xs = x.with_flat(2, x.flat(2) + d);
    return hgf_eval_slice(xs, lab.alpha, lab.contour(xs));
  };
  cplx fd = (shift(step) - shift(-step)) / (2 * step);
  CHECK(std::abs(parts[flat_mi(N, {{2, 1}})] - fd) / std::abs(fd) < 1e-6);

  // zero multi-index reproduces the plain value
  CHECK(std::abs(parts[flat_mi(N, {})] - hgf_eval_slice(x, lab.alpha, C)) < 1e-12);
}

TEST_CASE("slice partials with a moving contour anchor") {
  // differentiating w.r.t. x_0 of an anchor block moves the endpoint with
  // the singular point; boundary terms vanish because Re alpha_0 > 1 there
  const auto& lab = lab_211();
  SlicePoint x = lab.point(0.1);
  Contour C = lab.contour(x);
  const int N = 4;
  const int anchor_flat = 2;  // x_0^(2), the block-1 coordinate
  auto parts = hgf_partials(x, lab.alpha, {flat_mi(N, {{anchor_flat, 1}})}, C);
  const double step = 1e-5;
  auto shift = [&](double d) {
    SlicePoint xs = x.with_flat(anchor_flat, x.flat(anchor_flat) + d);
    return hgf_eval_slice(xs, lab.alpha, lab.contour(xs));
  };
  cplx fd = (shift(step) - shift(-step)) / (2 * step);
  CHECK(std::abs(parts[flat_mi(N, {{anchor_flat, 1}})] - fd) / std::abs(fd) < 1e-6);
}

TEST_CASE("kummer x-derivative shifts the exponent") {
  // dF/dx of int e^{xs} s^{a-1} (1-s)^{c-a-1} ds inserts a factor s
  const cplx a(0.4), c(1.7), x(0.5);
  const auto& preset = ClassicalPreset::by_name("kummer");
  AlphaParams alpha = preset.alpha(a, cplx(0), c);
  cplx expect = oracle::beta(a + cplx(1), c - a) * oracle::kummer_1f1(a + cplx(1), c + cplx(1), x);

  // exact derivative through the jet in the classical variable
  Jet y = hgf_preset_x_jet(preset, x, alpha, 1);
  MultiIndex m1;
  m1.e[0] = 1;
  CHECK(std::abs(y.partial(m1) - expect) / std::abs(expect) < 1e-10);

  // finite differences of plain evaluations as the independent oracle
  const double step = 1e-5;
  auto F = [&](cplx xx) { return hgf_eval_raw(preset.embed(xx), alpha, preset.contour(xx)); };
  cplx fd = (F(x + step) - F(x - step)) / (2 * step);
  CHECK(std::abs(fd - expect) / std::abs(expect) < 1e-6);
}

TEST_CASE("bessel preset matches the bessel function") {
  const cplx c(0.6), x(1.3);
  const auto& preset = ClassicalPreset::by_name("bessel");
  cplx F = hgf_eval_raw(preset.embed(x), preset.alpha(cplx(0), cplx(0), c), preset.contour(x));
  const double two_pi = 6.283185307179586;
  cplx expect = cplx(0, two_pi) * std::exp(c / 2.0 * std::log(x)) *
                oracle::bessel_j(c, 2.0 * std::sqrt(x));
  CHECK(std::abs(F - expect) / std::abs(expect) < 1e-10);

  // sanity for the series oracle itself: J_{1/2}(z) = sqrt(2/(pi z)) sin z
  const cplx z(1.7);
  cplx half = oracle::bessel_j(cplx(0.5), z);
  cplx closed = std::sqrt(2.0 / (3.14159265358979323846 * z)) * std::sin(z);
  CHECK(std::abs(half - closed) < 1e-14);
}

TEST_CASE("covariance under the torus and jordan blocks") {
  Rng rng(41);
  // identity translation: residual at quadrature noise
  const auto& gauss = ClassicalPreset::by_name("gauss");
  AlphaParams ga = gauss.alpha(cplx(0.4), cplx(0.5), cplx(1.7));
  std::vector<JordanElement> id = {{{cplx(1)}}, {{cplx(1)}}, {{cplx(1)}}, {{cplx(1)}}};
  CHECK(covariance_residual(gauss.embed(cplx(0.3)), id, ga, gauss.contour(cplx(0.3))) < 1e-10);

  // random diagonal h with entries in (0.5, 1.5)
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<JordanElement> h;
    for (int b = 0; b < 4; ++b) h.push_back({{cplx(rng.uniform(0.5, 1.5))}});
    CHECK(covariance_residual(gauss.embed(cplx(0.3)), h, ga, gauss.contour(cplx(0.3))) < 1e-8);
  }

  // lambda = (2,1,1) with a J(2) block near the identity
  const auto& kummer = ClassicalPreset::by_name("kummer");
  AlphaParams ka = kummer.alpha(cplx(0.4), cplx(0), cplx(1.7));
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<JordanElement> h;
    h.push_back({{cplx(1) + rng.box(0.1), rng.box(0.1)}});
    h.push_back({{cplx(1) + rng.box(0.1)}});
    h.push_back({{cplx(1) + rng.box(0.1)}});
    CHECK(covariance_residual(kummer.embed(cplx(0.5)), h, ka, kummer.contour(cplx(0.5))) < 1e-8);
  }
}

TEST_CASE("sl2 slice action formulas") {
  const auto& lab = lab_22();
  SlicePoint x = lab.point(0.3);

  std::array<cplx, 4> id{cplx(1), cplx(0), cplx(0), cplx(1)};
  auto r = sl2_slice_act(id, x, lab.alpha);
  for (int p = 0; p < 4; ++p) CHECK(std::abs(r.y.flat(p) - x.flat(p)) < 1e-14);
  CHECK(std::abs(r.cofactor - cplx(1)) < 1e-14);

  const cplx a(1.1), b(0.2), c(0.15);
  const cplx d = (cplx(1) + b * c) / a;
  auto g = std::array<cplx, 4>{a, b, c, d};
  auto rr = sl2_slice_act(g, x, lab.alpha);
  for (int blk : {0, 1}) {
    cplx x0 = x.coord(blk, 0), x1 = x.coord(blk, 1);
    cplx y0 = (a * x0 + b) / (c * x0 + d);
    cplx y1 = -y0 * (c * x1 / (c * x0 + d)) + a * x1 / (c * x0 + d);
    CHECK(std::abs(rr.y.coord(blk, 0) - y0) < 1e-12);
    CHECK(std::abs(rr.y.coord(blk, 1) - y1) < 1e-12);
  }
}

TEST_CASE("contiguity relation on slices") {
  for (const SliceLab* lab : {&lab_1111(), &lab_211(), &lab_22()}) {
    SlicePoint x = lab->point(0.25);
    Contour C = lab->contour(x);
    const int l = lab->lambda.num_blocks();
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) {
        if (i == j) continue;
        CHECK(contiguity_residual(x, lab->alpha, i, j, C) < 1e-6);
      }
  }
}

TEST_CASE("validation errors") {
  const auto& bessel = ClassicalPreset::by_name("bessel");
  CHECK_THROWS_WITH_AS(bessel.check_domain(cplx(-1.0)),
                       "bessel preset: Re x must lie in (0, 3)", std::invalid_argument);
  CHECK_THROWS(ClassicalPreset::by_name("nope"));

  // slice point with coincident leading coordinates
  Partition lam({1, 1, 1});
  SlicePoint bad(lam, {cplx(0.5), cplx(0.5), cplx(1.0)});
  CHECK_THROWS(bad.require_valid());

  // contour through a singular point is rejected by the guard
  const auto& lab = lab_1111();
  SlicePoint x = lab.point(0.0);
  Contour C = Contour::segment(cplx(-2.0), cplx(3.0));  // passes through all four
  CHECK_THROWS(hgf_eval_slice(x, lab.alpha, C));
}
