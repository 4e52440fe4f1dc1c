#pragma once

// Seed solutions of the 2-dimensional Toda-Hirota equation, gauge factors,
// the contiguity ladder, and tau sequences built from slice HGF values.

#include "gftoda/hgf.hpp"
#include "gftoda/lab.hpp"
#include "gftoda/laplace.hpp"

namespace gftoda {

enum class CaseKind { Case11, Case1N, CaseNN };

// ordered block pair with n_i <= n_j plus the flat coordinate bookkeeping
struct TodaPair {
  Partition lambda;
  int i, j;
  CaseKind kind;
  int flat_xi, flat_xj;  // leading coordinates x_0^(i), x_0^(j)
  int flat_di, flat_dj;  // active coordinates x_{n_i-1}^(i), x_{n_j-1}^(j)

  static TodaPair make(const Partition& lambda, int i, int j);
};

cplx p_weight(cplx alpha, cplx beta, int m);  // (alpha + m)(beta - m + 1)
// [alpha]_k realized as finite products over integer shifts
cplx bracket_factor(cplx alpha, int k);

// Two candidate power-law exponents appear in the sources for the
// confluent seeds; they differ by -2m, which drops out of every defining
// relation.  The choice is pinned by the numerical oracle at startup.
enum class SeedExponent { MQuadMinus /* -m(m-1) */, MQuadPlus /* -m(m+1) */ };

struct SeedSolution {
  TodaPair pair;
  cplx alpha_eff, beta_eff;
  cplx A{1};
  SeedExponent exponent = SeedExponent::MQuadPlus;

  static SeedSolution make(const TodaPair& pair, const AlphaParams& alpha, cplx A = cplx(1));

  cplx t_constant(int m) const;  // T_m, finite products only
  cplx eval(int m, const SlicePoint& x) const;
  // jet of log t_m in the two active coordinates (var 0 -> flat_di, var 1 -> flat_dj)
  Jet log_jet(int m, const SlicePoint& x, int order) const;
};

// |D_i D_j log t_m - t_{m+1} t_{m-1} / t_m^2|
double seed_thde_residual(const SeedSolution& seed, int m, const SlicePoint& x);

struct SeedExponentChoice {
  SeedExponent chosen;
  double residual_quad_plus;
  double residual_quad_minus;
};
// run the defining 2dTHE oracle over |m| <= 3 at the given points
SeedExponentChoice select_seed_exponent(const TodaPair& pair, const AlphaParams& alpha,
                                        std::span<const SlicePoint> points);

// gauge g_m taking M_m to its normal form
cplx gauge_eval(const TodaPair& pair, const AlphaParams& alpha, int m, const SlicePoint& x);
Jet gauge_log_jet(const TodaPair& pair, const AlphaParams& alpha, int m, const SlicePoint& x,
                  int order);

// resonance constant c_m^(i,j)(alpha) and the ladder normalization C_m(alpha)
cplx cm_resonance(const TodaPair& pair, const AlphaParams& alpha, int m);
cplx cm_factor(const TodaPair& pair, const AlphaParams& alpha, int m);

struct LadderOps {
  LinOp H, B;
};
LadderOps contig_ops(const TodaPair& pair, const AlphaParams& alpha, int m);
// normal-form-level ladder operators H'_m = g_{m+1} H_m g_m^{-1}, likewise B'
LadderOps contig_ops_primed(const TodaPair& pair, const AlphaParams& alpha, int m);

class TauSequence {
 public:
  TauSequence(const SliceLab& lab, cplx A = cplx(1), HgfOptions opt = {});

  const TodaPair& pair() const { return pair_; }
  const AlphaParams& alpha() const { return alpha_; }
  const SeedSolution& seed() const { return seed_; }
  const SliceLab& lab() const { return *lab_; }

  struct Factors {
    cplx c_m, t_m, g_m, F;
    cplx tau;
  };
  Factors factors(int m, const SlicePoint& x) const;
  cplx eval(int m, const SlicePoint& x) const;

  // D_i D_j log tau_m, with the HGF part from jet quadrature and the seed
  // and gauge parts in closed form
  cplx mixed_log(int m, const SlicePoint& x) const;
  double thde_residual(int m, const SlicePoint& x) const;

  // parameter admissibility over a whole m range (shifts and resonances)
  void require_admissible(int m_min, int m_max) const;

 private:
  TodaPair pair_;
  AlphaParams alpha_;
  SeedSolution seed_;
  const SliceLab* lab_;
  HgfOptions opt_;
};

}  // namespace gftoda
