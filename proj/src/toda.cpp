#include "gftoda/toda.hpp"

#include <cmath>
#include <stdexcept>

namespace gftoda {

namespace {

cplx ipow(cplx base, int e) {
  cplx r(1);
  for (int k = 0; k < std::abs(e); ++k) r *= base;
  return e >= 0 ? r : cplx(1) / r;
}

int quad_exponent(SeedExponent e, int m) {
  return e == SeedExponent::MQuadPlus ? -m * (m + 1) : -m * (m - 1);
}

}  // namespace

TodaPair TodaPair::make(const Partition& lambda, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= lambda.num_blocks() || j >= lambda.num_blocks())
    throw std::invalid_argument("toda pair: invalid block indices");
  const int ni = lambda.block_size(i), nj = lambda.block_size(j);
  if (ni > nj) throw std::invalid_argument("toda pair: n_i must not exceed n_j");
  return TodaPair{lambda,
                  i,
                  j,
                  ni == 1 ? (nj == 1 ? CaseKind::Case11 : CaseKind::Case1N) : CaseKind::CaseNN,
                  lambda.flat_index(i, 0),
                  lambda.flat_index(j, 0),
                  lambda.flat_index(i, ni - 1),
                  lambda.flat_index(j, nj - 1)};
}

cplx p_weight(cplx alpha, cplx beta, int m) {
  return (alpha + double(m)) * (beta - double(m) + 1.0);
}

cplx bracket_factor(cplx alpha, int k) {
  cplx r(1);
  if (k >= 1)
    for (int l = 1; l <= k - 1; ++l) r *= alpha + double(l);
  else if (k <= -1)
    for (int l = 0; l < -k; ++l) r *= alpha - double(l);
  return r;
}

SeedSolution SeedSolution::make(const TodaPair& pair, const AlphaParams& alpha, cplx A) {
  cplx aeff, beff;
  switch (pair.kind) {
    case CaseKind::Case11:
      aeff = alpha.at(pair.i, 0);
      beff = alpha.at(pair.j, 0);
      break;
    case CaseKind::Case1N:
      aeff = alpha.at(pair.i, 0);
      beff = alpha.last(pair.j);
      break;
    case CaseKind::CaseNN:
      aeff = alpha.last(pair.i);
      beff = alpha.last(pair.j);
      break;
  }
  return SeedSolution{pair, aeff, beff, A, SeedExponent::MQuadPlus};
}

cplx SeedSolution::t_constant(int m) const {
  const cplx a = alpha_eff, b = beta_eff;
  switch (pair.kind) {
    case CaseKind::Case11: {
      cplx T = ipow(A, m);
      if (m >= 2) {
        for (int k = 0; k <= m - 1; ++k)
          for (int l = 1; l <= k; ++l) T *= p_weight(a, b, l);
      } else if (m <= -1) {
        for (int k = 1; k <= -m; ++k)
          for (int l = -k + 1; l <= 0; ++l) T *= p_weight(a, b, l);
      }
      return T;
    }
    case CaseKind::Case1N: {
      cplx T = ipow(A, m) * ipow(b, m * (m - 1) / 2);
      const int lo = std::min(0, m), hi = std::max(0, m);
      for (int k = lo; k <= hi; ++k) T *= bracket_factor(a, k);
      return T;
    }
    case CaseKind::CaseNN:
      return ipow(A, m) * ipow(a * b, m * (m - 1) / 2);
  }
  return cplx(1);
}

cplx SeedSolution::eval(int m, const SlicePoint& x) const {
  const cplx Xi = x.flat(pair.flat_xi), Xj = x.flat(pair.flat_xj);
  const cplx d = Xi - Xj;
  if (std::abs(d) < 1e-12)
    throw std::domain_error("seed: coincident leading coordinates of the pair");
  switch (pair.kind) {
    case CaseKind::Case11:
      return std::exp(p_weight(alpha_eff, beta_eff, m) * std::log(d)) * t_constant(m);
    case CaseKind::Case1N: {
      // exponential argument per the defining relation dxdy log t_m = r_m
      const cplx y = x.flat(pair.flat_dj);
      const cplx expo = (alpha_eff + double(m)) * beta_eff * y / (Xj - Xi);
      return std::exp(expo + double(quad_exponent(exponent, m)) * std::log(d)) * t_constant(m);
    }
    case CaseKind::CaseNN: {
      const cplx xd = x.flat(pair.flat_di), yd = x.flat(pair.flat_dj);
      const cplx expo = alpha_eff * beta_eff * xd * yd / (d * d);
      return std::exp(expo + double(quad_exponent(exponent, m)) * std::log(d)) * t_constant(m);
    }
  }
  return cplx(0);
}

Jet SeedSolution::log_jet(int m, const SlicePoint& x, int order) const {
  const JetShape shape{2, order};
  const cplx Xi = x.flat(pair.flat_xi), Xj = x.flat(pair.flat_xj);
  switch (pair.kind) {
    case CaseKind::Case11: {
      Jet xi = Jet::variable(shape, 0, Xi);
      Jet xj = Jet::variable(shape, 1, Xj);
      return (xi - xj).log() * p_weight(alpha_eff, beta_eff, m) +
             Jet::constant(shape, std::log(t_constant(m)));
    }
    case CaseKind::Case1N: {
      Jet xi = Jet::variable(shape, 0, Xi);
      Jet y = Jet::variable(shape, 1, x.flat(pair.flat_dj));
      Jet expo =
          y * ((Jet::constant(shape, Xj) - xi).inverse()) * ((alpha_eff + double(m)) * beta_eff);
      return expo + (xi - Xj).log() * double(quad_exponent(exponent, m)) +
             Jet::constant(shape, std::log(t_constant(m)));
    }
    case CaseKind::CaseNN: {
      Jet xd = Jet::variable(shape, 0, x.flat(pair.flat_di));
      Jet yd = Jet::variable(shape, 1, x.flat(pair.flat_dj));
      const cplx d = Xi - Xj;
      Jet expo = xd * yd * (alpha_eff * beta_eff / (d * d));
      return expo + Jet::constant(shape, double(quad_exponent(exponent, m)) * std::log(d) +
                                             std::log(t_constant(m)));
    }
  }
  return Jet(shape);
}

double seed_thde_residual(const SeedSolution& seed, int m, const SlicePoint& x) {
  const cplx mixed = seed.log_jet(m, x, 2).derive(0).derive(1).value();
  const cplx tm = seed.eval(m, x);
  const cplx ratio = seed.eval(m + 1, x) * seed.eval(m - 1, x) / (tm * tm);
  return std::abs(mixed - ratio);
}

SeedExponentChoice select_seed_exponent(const TodaPair& pair, const AlphaParams& alpha,
                                        std::span<const SlicePoint> points) {
  SeedSolution seed = SeedSolution::make(pair, alpha);
  auto max_res = [&](SeedExponent e) {
    seed.exponent = e;
    double worst = 0;
    for (const auto& x : points)
      for (int m = -3; m <= 3; ++m) worst = std::max(worst, seed_thde_residual(seed, m, x));
    return worst;
  };
  SeedExponentChoice choice{};
  choice.residual_quad_plus = max_res(SeedExponent::MQuadPlus);
  choice.residual_quad_minus = max_res(SeedExponent::MQuadMinus);
  // -m(m+1) wins whenever it satisfies the defining relation; the
  // alternative only takes over if the first one fails
  const double pass = 1e-10;
  choice.chosen = choice.residual_quad_plus <= pass ||
                          choice.residual_quad_plus <= choice.residual_quad_minus
                      ? SeedExponent::MQuadPlus
                      : SeedExponent::MQuadMinus;
  return choice;
}

cplx gauge_eval(const TodaPair& pair, const AlphaParams& alpha, int m, const SlicePoint& x) {
  const cplx Xi = x.flat(pair.flat_xi), Xj = x.flat(pair.flat_xj);
  if (pair.lambda.block_size(pair.i) == 1)
    return std::exp(-(alpha.at(pair.i, 0) + double(m)) * std::log(Xi - Xj));
  return std::exp(-alpha.last(pair.i) * x.flat(pair.flat_di) / (Xi - Xj));
}

Jet gauge_log_jet(const TodaPair& pair, const AlphaParams& alpha, int m, const SlicePoint& x,
                  int order) {
  const JetShape shape{2, order};
  const cplx Xi = x.flat(pair.flat_xi), Xj = x.flat(pair.flat_xj);
  if (pair.lambda.block_size(pair.i) == 1) {
    Jet xi = Jet::variable(shape, 0, Xi);
    Jet xj =
        pair.kind == CaseKind::Case11 ? Jet::variable(shape, 1, Xj) : Jet::constant(shape, Xj);
    return (xi - xj).log() * (-(alpha.at(pair.i, 0) + double(m)));
  }
  Jet xd = Jet::variable(shape, 0, x.flat(pair.flat_di));
  return xd * (-alpha.last(pair.i) / (Xi - Xj));
}

cplx cm_resonance(const TodaPair& pair, const AlphaParams& alpha, int m) {
  const int ni = pair.lambda.block_size(pair.i), nj = pair.lambda.block_size(pair.j);
  const cplx left = alpha.last(pair.i) + double(ni == 1 ? m : 0);
  const cplx right = alpha.last(pair.j) - double(nj == 1 ? m - 1 : 0);
  return left * right;
}

cplx cm_factor(const TodaPair& pair, const AlphaParams& alpha, int m) {
  const cplx bj = alpha.last(pair.j);
  if (pair.kind != CaseKind::Case11) return ipow(bj, m);
  if (std::abs(bj.imag()) < 1e-12 && std::abs(bj.real() - std::round(bj.real())) < 1e-12)
    throw std::domain_error("ladder constant: integer exponent on the 1-block crosses a pole");
  cplx r(1);
  if (m >= 0)
    for (int k = 0; k <= m - 1; ++k) r *= bj - double(k);
  else
    for (int k = 1; k <= -m; ++k) r /= bj + double(k);
  return r;
}

LadderOps contig_ops(const TodaPair& pair, const AlphaParams& alpha, int m) {
  AlphaParams am = alpha.shifted(pair.i, pair.j, m);
  const cplx cm = cm_resonance(pair, alpha, m);
  if (std::abs(cm) < 1e-12)
    throw std::domain_error("contiguity ladder: resonant parameters (c_m = 0)");
  return {slice_contiguity(pair.lambda, am, pair.i, pair.j),
          linop_scale(cplx(1) / cm, slice_contiguity(pair.lambda, am, pair.j, pair.i))};
}

namespace {

using CoeffFn = std::function<Jet(std::span<const Jet>)>;
CoeffFn cc(cplx v) {
  return [v](std::span<const Jet> xs) { return Jet::constant(xs[0].shape(), v); };
}
CoeffFn cinv_diff(cplx v, int p, int q) {
  return [v, p, q](std::span<const Jet> xs) { return (xs[p] - xs[q]).inverse() * v; };
}
CoeffFn cdiff_scaled(cplx v, int p, int q) {
  return [v, p, q](std::span<const Jet> xs) { return (xs[p] - xs[q]) * v; };
}
CoeffFn cdiff2_scaled(cplx v, int p, int q) {
  return [v, p, q](std::span<const Jet> xs) {
    Jet d = xs[p] - xs[q];
    return d * d * v;
  };
}

}  // namespace

LadderOps contig_ops_primed(const TodaPair& pair, const AlphaParams& alpha, int m) {
  const cplx cm = cm_resonance(pair, alpha, m);
  if (std::abs(cm) < 1e-12)
    throw std::domain_error("contiguity ladder: resonant parameters (c_m = 0)");
  const int xi = pair.flat_xi, xj = pair.flat_xj, di = pair.flat_di, dj = pair.flat_dj;
  const cplx ai = alpha.last(pair.i), aj = alpha.last(pair.j);
  LadderOps ops;
  switch (pair.kind) {
    case CaseKind::Case11:
      ops.H = LinOp{
          {{cc(cplx(1)), {dj}}, {cinv_diff(aj - ai - 2.0 * double(m), xi, xj), {}}}};
      ops.B = LinOp{{{cdiff2_scaled(-cplx(1) / cm, xi, xj), {di}}}};
      break;
    case CaseKind::Case1N:
      ops.H = LinOp{{{cc(cplx(1)), {dj}}, {cinv_diff(aj, xi, xj), {}}}};
      ops.B = LinOp{{{cdiff2_scaled(-cplx(1) / cm, xi, xj), {di}}}};
      break;
    case CaseKind::CaseNN:
      ops.H = LinOp{{{cdiff_scaled(cplx(1), xi, xj), {dj}}, {cc(aj), {}}}};
      ops.B = LinOp{{{cdiff_scaled(cplx(1) / cm, xj, xi), {di}}}};
      break;
  }
  return ops;
}

TauSequence::TauSequence(const SliceLab& lab, cplx A, HgfOptions opt)
    : pair_(TodaPair::make(lab.lambda, lab.pair_i, lab.pair_j)),
      alpha_(lab.alpha),
      seed_(SeedSolution::make(pair_, lab.alpha, A)),
      lab_(&lab),
      opt_(opt) {}

TauSequence::Factors TauSequence::factors(int m, const SlicePoint& x) const {
  Factors f;
  f.c_m = cm_factor(pair_, alpha_, m);
  f.t_m = seed_.eval(m, x);
  f.g_m = gauge_eval(pair_, alpha_, m, x);
  AlphaParams am = alpha_.shifted(pair_.i, pair_.j, m);
  f.F = hgf_eval_slice(x, am, lab_->contour(x), opt_);
  f.tau = f.c_m * f.t_m * f.g_m * f.F;
  return f;
}

cplx TauSequence::eval(int m, const SlicePoint& x) const { return factors(m, x).tau; }

cplx TauSequence::mixed_log(int m, const SlicePoint& x) const {
  const cplx seed_part = seed_.log_jet(m, x, 2).derive(0).derive(1).value();
  const cplx gauge_part = gauge_log_jet(pair_, alpha_, m, x, 2).derive(0).derive(1).value();

  const int N = pair_.lambda.total();
  std::vector<int> m0(N, 0), mi(N, 0), mj(N, 0), mij(N, 0);
  mi[pair_.flat_di] = 1;
  mj[pair_.flat_dj] = 1;
  mij[pair_.flat_di] = 1;
  mij[pair_.flat_dj] += 1;
  AlphaParams am = alpha_.shifted(pair_.i, pair_.j, m);
  auto parts = hgf_partials(x, am, {m0, mi, mj, mij}, lab_->contour(x), opt_);
  const cplx F = parts[m0];
  const cplx hgf_part = (F * parts[mij] - parts[mi] * parts[mj]) / (F * F);
  return seed_part + gauge_part + hgf_part;
}

double TauSequence::thde_residual(int m, const SlicePoint& x) const {
  const cplx tau = eval(m, x);
  if (std::abs(tau) < 1e-12)
    throw std::domain_error("tau residual: tau_m vanishes at the point");
  const cplx ratio = eval(m + 1, x) * eval(m - 1, x) / (tau * tau);
  return std::abs(mixed_log(m, x) - ratio);
}

void TauSequence::require_admissible(int m_min, int m_max) const {
  for (int m = m_min - 1; m <= m_max + 1; ++m) {
    AlphaParams am = alpha_.shifted(pair_.i, pair_.j, m);
    if (!am.warnings().empty())
      throw std::domain_error("tau sequence: shifted parameters inadmissible at m = " +
                              std::to_string(m) + ": " + am.warnings().front());
    if (std::abs(cm_resonance(pair_, alpha_, m)) < 1e-10)
      throw std::domain_error("tau sequence: resonance (c_m = 0) at m = " + std::to_string(m));
  }
}

}  // namespace gftoda
