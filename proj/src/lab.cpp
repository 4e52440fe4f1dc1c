#include "gftoda/lab.hpp"

namespace gftoda {

namespace {
constexpr double kPi = 3.14159265358979323846;
double irr(double base, int q) { return base + 1.0 / (q * kPi); }
}  // namespace

SlicePoint SliceLab::point(double t) const {
  std::vector<cplx> c = base_coords;
  for (size_t p = 0; p < c.size(); ++p) c[p] += drift[p] * t;
  return SlicePoint(lambda, std::move(c));
}

Contour SliceLab::contour(const SlicePoint& x, double bulge) const {
  return slice_contour(x, anchor_p, anchor_q, bulge);
}

const SliceLab& lab_1111() {
  static const SliceLab lab = [] {
    Partition lam({1, 1, 1, 1});
    const double a0 = irr(0.4, 7), a1 = irr(0.3, 11), a2 = irr(-1.2, -5);
    AlphaParams alpha(lam, {{cplx(a0)}, {cplx(a1)}, {cplx(a2)}, {cplx(-2 - a0 - a1 - a2)}});
    // singular points s = -x_0^(j): 0, 1 anchor the contour; the others stay
    // off the segment over the whole drift range
    std::vector<cplx> base = {cplx(0), cplx(-1), cplx(1.25), cplx(-2.4)};
    std::vector<cplx> drift = {cplx(0), cplx(0), cplx(0.3), cplx(-0.35)};
    return SliceLab{lam, alpha, base, drift, 0, 1, 2, 3};
  }();
  return lab;
}

const SliceLab& lab_211() {
  static const SliceLab lab = [] {
    Partition lam({2, 1, 1});
    // the Toda pair shifts alpha_0 of block 1 by up to +-3; its real part
    // is kept above 2 so the contour endpoint stays integrable
    const double a_blk1 = irr(2.4, 7), a_blk2 = irr(0.3, 11);
    AlphaParams alpha(lam, {{cplx(-2 - a_blk1 - a_blk2), cplx(irr(0.9, 13))},
                            {cplx(a_blk1)},
                            {cplx(a_blk2)}});
    std::vector<cplx> base = {cplx(1.6), cplx(irr(0.8, 14)), cplx(0), cplx(-1)};
    std::vector<cplx> drift = {cplx(0.25), cplx(0.2), cplx(0), cplx(0)};
    return SliceLab{lam, alpha, base, drift, 1, 2, 1, 0};
  }();
  return lab;
}

const SliceLab& lab_22() {
  static const SliceLab lab = [] {
    Partition lam({2, 2});
    const double a0 = irr(0.45, 7);
    // sign choices make exp(alpha_1 x_1 / (x_0 + s)) decay into both
    // essential contour endpoints
    AlphaParams alpha(lam, {{cplx(a0), cplx(irr(1.0, 9))},
                            {cplx(-2 - a0), cplx(irr(1.0, 15))}});
    std::vector<cplx> base = {cplx(0), cplx(irr(-0.85, -12)), cplx(-1), cplx(irr(0.9, 10))};
    std::vector<cplx> drift = {cplx(0), cplx(-0.15), cplx(0), cplx(0.2)};
    return SliceLab{lam, alpha, base, drift, 0, 1, 0, 1};
  }();
  return lab;
}

const SliceLab& lab_31() {
  static const SliceLab lab = [] {
    Partition lam({3, 1});
    const double a_blk2 = irr(0.35, 9);
    AlphaParams alpha(lam, {{cplx(-2 - a_blk2), cplx(irr(0.25, 8)), cplx(irr(0.85, 6))},
                            {cplx(a_blk2)}});
    std::vector<cplx> base = {cplx(-1), cplx(irr(0.8, 14)), cplx(irr(0.3, -16)), cplx(0)};
    std::vector<cplx> drift = {cplx(0), cplx(0.2), cplx(0.1), cplx(0)};
    return SliceLab{lam, alpha, base, drift, 1, 0, 1, 0};
  }();
  return lab;
}

const SliceLab& lab_for(const Partition& lambda) {
  for (const SliceLab* lab : {&lab_1111(), &lab_211(), &lab_22(), &lab_31()})
    if (lab->lambda == lambda) return *lab;
  throw std::invalid_argument("no slice configuration for this partition");
}

}  // namespace gftoda
