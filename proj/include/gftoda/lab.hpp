#pragma once

// Ready-made slice configurations per partition: generic non-resonant
// parameters (small rationals offset by 1/pi multiples), coordinates that
// keep every integrand singularity a guard distance from the contour, and
// the segment cycle between two anchor blocks.  Shared by the verification
// suites, the tau builders, and the CLI.

#include "gftoda/hgf.hpp"

namespace gftoda {

struct SliceLab {
  Partition lambda;
  AlphaParams alpha;
  std::vector<cplx> base_coords;   // flat slice coordinates at t = 0
  std::vector<cplx> drift;         // coordinate motion per unit t
  int anchor_p, anchor_q;          // contour endpoint blocks
  int pair_i, pair_j;              // default Toda pair (n_i <= n_j)

  SlicePoint point(double t) const;
  Contour contour(const SlicePoint& x, double bulge = 0.0) const;
};

// lambda = (1,1,1,1), (2,1,1), (2,2), (3,1)
const SliceLab& lab_1111();
const SliceLab& lab_211();
const SliceLab& lab_22();
const SliceLab& lab_31();

const SliceLab& lab_for(const Partition& lambda);

}  // namespace gftoda
