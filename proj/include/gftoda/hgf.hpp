#pragma once

// Gelfand hypergeometric functions on the generic stratum of 2 x N matrix
// space: contour evaluation of the character integral, restriction to the
// slice (second row (1, 0, ..., 0) per block), differentiation under the
// integral via jets, covariance / contiguity residuals, the SL(2) slice
// action, and the classical GM(2,4) presets.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gftoda/chars.hpp"
#include "gftoda/contour.hpp"
#include "gftoda/quadrature.hpp"

namespace gftoda {

struct MatrixBlock {
  std::vector<cplx> row0, row1;  // column k of the block is (row0[k], row1[k])
};

class MatrixPoint {
 public:
  MatrixPoint(Partition lambda, std::vector<MatrixBlock> blocks);
  const Partition& partition() const { return lambda_; }
  const MatrixBlock& block(int j) const { return blocks_.at(j); }
  int num_blocks() const { return int(blocks_.size()); }

  // Right translation z -> z h, h block-diagonal in H_lambda.
  MatrixPoint times_h(const std::vector<JordanElement>& h) const;

  // Generic-stratum conditions; throws when violated.
  void require_generic(double eps = 1e-10) const;

 private:
  Partition lambda_;
  std::vector<MatrixBlock> blocks_;
};

class SlicePoint {
 public:
  SlicePoint(Partition lambda, std::vector<cplx> flat_coords);
  const Partition& partition() const { return lambda_; }
  cplx coord(int block, int k) const { return flat_.at(lambda_.flat_index(block, k)); }
  cplx flat(int p) const { return flat_.at(p); }
  const std::vector<cplx>& flat_coords() const { return flat_; }
  SlicePoint with_flat(int p, cplx v) const;

  void require_valid(double eps = 1e-10) const;
  MatrixPoint embed() const;

 private:
  Partition lambda_;
  std::vector<cplx> flat_;
};

// Unique H_lambda translation taking z to the slice (requires
// z_{1,0}^(j) != 0 for every block).
struct SliceReduction {
  std::vector<JordanElement> h;
  SlicePoint x;
};
SliceReduction slice_reduce(const MatrixPoint& z);

struct HgfOptions {
  QuadOptions quad{1e-12, 1e-11, 11};
  double guard = 1e-3;  // min contour distance to interior singular points
};

cplx hgf_eval_raw(const MatrixPoint& z, const AlphaParams& alpha, const Contour& contour,
                  const HgfOptions& opt = {}, QuadResult* info = nullptr);

cplx hgf_eval_slice(const SlicePoint& x, const AlphaParams& alpha, const Contour& contour,
                    const HgfOptions& opt = {}, QuadResult* info = nullptr);

// Partial derivatives of F on the slice with respect to flat coordinates;
// each requested multi-index must have total order <= 2.  All requested
// partials come from one jet-valued quadrature pass.
std::map<std::vector<int>, cplx> hgf_partials(const SlicePoint& x, const AlphaParams& alpha,
                                              const std::vector<std::vector<int>>& wanted,
                                              const Contour& contour,
                                              const HgfOptions& opt = {});

// |F(zh) - chi(h) F(z)| / |F(z)| for h near the identity of H_lambda.
double covariance_residual(const MatrixPoint& z, const std::vector<JordanElement>& h,
                           const AlphaParams& alpha, const Contour& contour,
                           const HgfOptions& opt = {});

// SL(2) action on the slice; g = ((a, b), (c, d)), det g = 1.  Returns the
// image point and the character cofactor chi((g x)_1; alpha) with which
// cofactor * u(g_* x) is again a covariant solution.
struct Sl2SliceImage {
  SlicePoint y;
  cplx cofactor;
};
Sl2SliceImage sl2_slice_act(const std::array<cplx, 4>& g, const SlicePoint& x,
                            const AlphaParams& alpha);

// Residual of the contiguity relation on the slice for the ordered block
// pair (i, j), scaled by the shifted-function magnitude.
double contiguity_residual(const SlicePoint& x, const AlphaParams& alpha, int i, int j,
                           const Contour& contour, const HgfOptions& opt = {});

// Segment (or shallow arc) between the integrand singular points of two
// blocks, the standard cycle for slice evaluations.
Contour slice_contour(const SlicePoint& x, int block_p, int block_q, double bulge = 0.0);

// Matrix block whose entries are jets (e.g. of the classical variable of a
// preset); used for differentiation in parameters that live in the second
// matrix row and are therefore not slice coordinates.
struct MatrixJetRows {
  std::vector<Jet> row0, row1;
};

// HGF value as a jet in whatever variables the block entries carry; the
// contour must not have its endpoints at singular points of jet-varying
// blocks.
Jet hgf_eval_jet_rows(const Partition& lambda, const std::vector<MatrixJetRows>& rows,
                      const AlphaParams& alpha, const Contour& contour, JetShape shape,
                      const HgfOptions& opt = {});

// Classical GM(2,4) realizations.
struct ClassicalPreset {
  std::string name;  // gauss, kummer, bessel, hermite-weber, airy
  Partition lambda;

  AlphaParams alpha(cplx a, cplx b, cplx c) const;
  MatrixPoint embed(cplx x) const;
  std::vector<MatrixJetRows> embed_jet(const Jet& x) const;
  Contour contour(cplx x) const;
  void check_domain(cplx x) const;  // throws with the documented restriction

  static const ClassicalPreset& by_name(const std::string& name);
  static const std::vector<ClassicalPreset>& all();
};

// jet of the preset value in its classical variable
Jet hgf_preset_x_jet(const ClassicalPreset& preset, cplx x, const AlphaParams& alpha, int order,
                     const HgfOptions& opt = {});

}  // namespace gftoda
