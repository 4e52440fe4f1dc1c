#pragma once

// Adaptive quadrature along contours.  Segments and arcs use tanh-sinh
// (double exponential) so algebraic endpoint singularities s^a, (1-s)^b are
// absorbed by the substitution; loop and ray pieces reuse the same kernel;
// closed circles use the trapezoid rule.  Node placement and summation
// order are fixed, so results are reproducible bit for bit.

#include <functional>

#include "gftoda/contour.hpp"
#include "gftoda/jet.hpp"

namespace gftoda {

// Quadrature node handed to integrands: s is the contour point, t the
// global contour parameter (for branch lookups), u / one_minus_u the local
// piece parameter computed in a cancellation-free way.
struct EvalPoint {
  cplx s;
  double t = 0;
  double u = 0;
  double one_minus_u = 1;
  int piece = 0;
};

struct QuadOptions {
  double tol_abs = 1e-10;
  double tol_rel = 1e-8;
  int max_level = 11;  // ~2^15 nodes per piece at the cap
};

struct QuadResult {
  cplx value{0};
  double abs_error_estimate = 0;
  long evaluations = 0;
  double endpoint_decay = 0;  // max |f| at truncated endpoints (open contours)
  bool converged = true;
};

QuadResult integrate(const std::function<cplx(const EvalPoint&)>& f, const Contour& contour,
                     const QuadOptions& opt = {});

// Convenience overload for integrands that only need the point.
QuadResult integrate(const std::function<cplx(cplx)>& f, const Contour& contour,
                     const QuadOptions& opt = {});

// Coefficient-wise integration of a jet-valued integrand; convergence is
// judged per coefficient with relative scaling.  Fills *info if given.
Jet integrate_jet(const std::function<Jet(const EvalPoint&)>& f, const Contour& contour,
                  JetShape shape, const QuadOptions& opt = {}, QuadResult* info = nullptr);

}  // namespace gftoda
