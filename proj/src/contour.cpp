#include "gftoda/contour.hpp"

#include <cmath>
#include <stdexcept>

namespace gftoda {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Contour Contour::segment(cplx a, cplx b) {
  Contour c;
  c.kind = ContourKind::Segment;
  c.a = a;
  c.b = b;
  return c;
}

Contour Contour::arc(cplx a, cplx b, double bulge) {
  if (std::abs(bulge) >= 1.0) throw std::invalid_argument("arc: |bulge| must be < 1");
  Contour c;
  c.kind = ContourKind::Arc;
  c.a = a;
  c.b = b;
  c.bulge = bulge;
  return c;
}

Contour Contour::hankel_loop(double inner_radius, double truncation_radius, double cut_angle) {
  if (inner_radius <= 0 || truncation_radius <= inner_radius)
    throw std::invalid_argument("hankel: need 0 < inner < truncation radius");
  Contour c;
  c.kind = ContourKind::HankelLoop;
  c.inner_radius = inner_radius;
  c.truncation_radius = truncation_radius;
  c.cut_angle = cut_angle;
  return c;
}

Contour Contour::ray_pair(double angle1, double angle2, double truncation_radius) {
  if (truncation_radius <= 0) throw std::invalid_argument("ray pair: bad radius");
  Contour c;
  c.kind = ContourKind::RayPair;
  c.angle1 = angle1;
  c.angle2 = angle2;
  c.truncation_radius = truncation_radius;
  return c;
}

Contour Contour::circle(double radius, cplx center) {
  if (radius <= 0) throw std::invalid_argument("circle: bad radius");
  Contour c;
  c.kind = ContourKind::Circle;
  c.radius = radius;
  c.center = center;
  return c;
}

std::vector<Contour::Piece> Contour::pieces() const {
  std::vector<Piece> out;
  switch (kind) {
    case ContourKind::Segment:
    case ContourKind::Arc: {
      const cplx A = a, D = b - a;
      const double c = bulge;
      out.push_back({0.0, 1.0,
                     [A, D, c](double u, cplx& s, cplx& dsdu) {
                       const cplx iw(0, c);
                       s = A + D * u * (cplx(1) + iw * (1 - u));
                       dsdu = D * (cplx(1) + iw * (1 - 2 * u));
                     }});
      break;
    }
    case ContourKind::HankelLoop: {
      // Standard loop around the cut ray arg s = cut_angle: in along the
      // lower lip, counterclockwise circle, out along the upper lip.
      const cplx rot = std::polar(1.0, cut_angle - kPi);
      const double r = inner_radius, R = truncation_radius;
      out.push_back({0.0, 1.0 / 3.0,
                     [rot, r, R](double u, cplx& s, cplx& dsdu) {
                       const double rho = R + (r - R) * u;
                       s = rot * std::polar(rho, -kPi);
                       dsdu = rot * std::polar(r - R, -kPi);
                     }});
      out.push_back({1.0 / 3.0, 2.0 / 3.0,
                     [rot, r](double u, cplx& s, cplx& dsdu) {
                       const double th = -kPi + 2 * kPi * u;
                       s = rot * std::polar(r, th);
                       dsdu = rot * std::polar(r, th) * cplx(0, 2 * kPi);
                     }});
      out.push_back({2.0 / 3.0, 1.0,
                     [rot, r, R](double u, cplx& s, cplx& dsdu) {
                       const double rho = r + (R - r) * u;
                       s = rot * std::polar(rho, kPi);
                       dsdu = rot * std::polar(R - r, kPi);
                     }});
      break;
    }
    case ContourKind::RayPair: {
      const cplx e1 = std::polar(truncation_radius, angle1);
      const cplx e2 = std::polar(truncation_radius, angle2);
      out.push_back({0.0, 0.5,
                     [e1](double u, cplx& s, cplx& dsdu) {
                       s = e1 * (1 - u);
                       dsdu = -e1;
                     }});
      out.push_back({0.5, 1.0,
                     [e2](double u, cplx& s, cplx& dsdu) {
                       s = e2 * u;
                       dsdu = e2;
                     }});
      break;
    }
    case ContourKind::Circle: {
      const double rho = radius;
      const cplx c0 = center;
      Piece p{0.0, 1.0,
              [rho, c0](double u, cplx& s, cplx& dsdu) {
                const cplx e = std::polar(rho, 2 * kPi * u);
                s = c0 + e;
                dsdu = e * cplx(0, 2 * kPi);
              }};
      p.periodic = true;
      out.push_back(p);
      break;
    }
  }
  return out;
}

void Contour::at(double t, cplx& s, cplx& dsdt) const {
  auto ps = pieces();
  for (const auto& p : ps) {
    if (t <= p.t1 || &p == &ps.back()) {
      double span = p.t1 - p.t0;
      double u = (t - p.t0) / span;
      u = std::min(1.0, std::max(0.0, u));
      cplx dsdu;
      p.map(u, s, dsdu);
      dsdt = dsdu / span;
      return;
    }
  }
}

BranchTracker::BranchTracker(const Contour& contour, std::vector<std::pair<cplx, cplx>> affine)
    : affine_(std::move(affine)) {
  const int nf = int(affine_.size());
  auto wval = [&](int k, cplx s) { return affine_[k].first + affine_[k].second * s; };

  // Seed nodes: piece boundaries plus a uniform grid per piece.
  std::vector<double> seed;
  for (const auto& p : contour.pieces()) {
    const int n = 64;
    for (int i = 0; i <= n; ++i) seed.push_back(p.t0 + (p.t1 - p.t0) * double(i) / n);
  }
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());

  auto point = [&](double t) {
    cplx s, d;
    contour.at(t, s, d);
    return s;
  };

  // Refine until consecutive principal-argument steps are < pi/2 for all
  // factors; this keeps nearest-node branch snapping exact.
  t_.push_back(seed[0]);
  s_.push_back(point(seed[0]));
  for (size_t i = 1; i < seed.size(); ++i) {
    std::vector<std::pair<double, cplx>> stack{{seed[i], point(seed[i])}};
    while (!stack.empty()) {
      auto [t1, s1] = stack.back();
      const double t0 = t_.back();
      const cplx s0 = s_.back();
      bool ok = true;
      for (int k = 0; k < nf && ok; ++k) {
        const cplx w0 = wval(k, s0), w1 = wval(k, s1);
        if (w0 == cplx(0) || w1 == cplx(0))
          throw std::domain_error("branch tracker: factor vanishes on contour");
        if (std::abs(std::arg(w1 / w0)) > kPi / 2) ok = false;
      }
      if (ok || t1 - t0 < 1e-14) {
        t_.push_back(t1);
        s_.push_back(s1);
        stack.pop_back();
      } else {
        const double tm = 0.5 * (t0 + t1);
        stack.push_back({tm, point(tm)});
      }
    }
  }

  theta_.assign(nf, std::vector<double>(t_.size(), 0.0));
  size_t mid = 0;
  for (size_t i = 1; i < t_.size(); ++i)
    if (std::abs(t_[i] - 0.5) < std::abs(t_[mid] - 0.5)) mid = i;
  for (int k = 0; k < nf; ++k) {
    double th = std::arg(wval(k, s_[0]));
    theta_[k][0] = th;
    for (size_t i = 1; i < t_.size(); ++i) {
      th += std::arg(wval(k, s_[i]) / wval(k, s_[i - 1]));
      theta_[k][i] = th;
    }
    // anchor the branch mid-contour: the principal argument there is stable
    // under small motions of the factors, while contour start points (loop
    // lips in particular) can sit on a cut
    const double shift =
        2 * kPi * std::round((theta_[k][mid] - std::arg(wval(k, s_[mid]))) / (2 * kPi));
    for (auto& v : theta_[k]) v -= shift;
  }
}

cplx BranchTracker::log(int k, double t, cplx w) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), t);
  size_t i = size_t(it - t_.begin());
  if (i == t_.size()) i = t_.size() - 1;
  if (i > 0 && t - t_[i - 1] < t_[i] - t) i = i - 1;
  const cplx wref = affine_[k].first + affine_[k].second * s_[i];
  const double th = theta_[k][i] + std::arg(w / wref);
  return cplx(std::log(std::abs(w)), th);
}

double BranchTracker::min_distance(cplx p) const {
  double d = 1e300;
  for (const auto& s : s_) d = std::min(d, std::abs(s - p));
  return d;
}

}  // namespace gftoda
