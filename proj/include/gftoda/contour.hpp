#pragma once

// Parametric contour library for the 1-dimensional complex integrals,
// plus a branch tracker that continues logs of affine factors w(s) = u + v s
// along a contour so integrands stay on one sheet of the local system.

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "gftoda/jet.hpp"

namespace gftoda {

enum class ContourKind { Segment, Arc, HankelLoop, RayPair, Circle };

struct Contour {
  ContourKind kind = ContourKind::Segment;

  cplx a{0}, b{1};        // Segment / Arc endpoints
  double bulge = 0.0;     // Arc: s(u) = a + (b-a) u (1 + i bulge (1-u)), |bulge| < 1

  double inner_radius = 1.0;
  double truncation_radius = 30.0;
  double cut_angle = 3.14159265358979323846;  // HankelLoop: cut ray direction

  double angle1 = 0.0, angle2 = 0.0;  // RayPair directions

  double radius = 1.0;  // Circle
  cplx center{0};

  static Contour segment(cplx a, cplx b);
  static Contour arc(cplx a, cplx b, double bulge);
  static Contour hankel_loop(double inner_radius, double truncation_radius,
                             double cut_angle = 3.14159265358979323846);
  static Contour ray_pair(double angle1, double angle2, double truncation_radius);
  static Contour circle(double radius, cplx center = cplx(0));

  bool closed() const { return kind == ContourKind::Circle; }
  bool truncated_open() const {
    return kind == ContourKind::HankelLoop || kind == ContourKind::RayPair;
  }
  // Segment/Arc run between two finite points that may be branch points of
  // the integrand; those factors are split off analytically by the caller.
  bool has_branch_endpoints() const {
    return kind == ContourKind::Segment || kind == ContourKind::Arc;
  }

  struct Piece {
    double t0, t1;  // global parameter range
    std::function<void(double u, cplx& s, cplx& dsdu)> map;  // local u in [0,1]
    bool periodic = false;
  };
  std::vector<Piece> pieces() const;

  void at(double t, cplx& s, cplx& dsdt) const;
};

// Continuous branch of log w_k(s(t)) along a contour for affine factors
// w_k(s) = c_k + d_k s.  A pilot polyline is refined until the principal
// argument increment between neighbours is small for every factor; queries
// then snap to the nearest pilot node.
class BranchTracker {
 public:
  BranchTracker(const Contour& contour, std::vector<std::pair<cplx, cplx>> affine);

  // w must be the exact factor value at global parameter t.
  cplx log(int k, double t, cplx w) const;

  // Distance of the pilot polyline to a point (for singularity guards).
  double min_distance(cplx p) const;

  int num_factors() const { return int(affine_.size()); }

 private:
  std::vector<std::pair<cplx, cplx>> affine_;
  std::vector<double> t_;
  std::vector<cplx> s_;
  std::vector<std::vector<double>> theta_;  // [factor][node], continued arg
};

}  // namespace gftoda
