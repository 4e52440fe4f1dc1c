#include "gftoda/hgf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gftoda/series.hpp"

namespace gftoda {

namespace {
constexpr double kPi = 3.14159265358979323846;

cplx det2(cplx a0, cplx a1, cplx b0, cplx b1) { return a0 * b1 - a1 * b0; }
}  // namespace

MatrixPoint::MatrixPoint(Partition lambda, std::vector<MatrixBlock> blocks)
    : lambda_(std::move(lambda)), blocks_(std::move(blocks)) {
  if (int(blocks_.size()) != lambda_.num_blocks())
    throw std::invalid_argument("matrix point: block count mismatch");
  for (int j = 0; j < lambda_.num_blocks(); ++j) {
    if (int(blocks_[j].row0.size()) != lambda_.block_size(j) ||
        int(blocks_[j].row1.size()) != lambda_.block_size(j))
      throw std::invalid_argument("matrix point: block width mismatch");
  }
}

MatrixPoint MatrixPoint::times_h(const std::vector<JordanElement>& h) const {
  if (int(h.size()) != lambda_.num_blocks())
    throw std::invalid_argument("times_h: block count mismatch");
  std::vector<MatrixBlock> out;
  out.reserve(blocks_.size());
  for (int j = 0; j < lambda_.num_blocks(); ++j) {
    if (h[j].size() != lambda_.block_size(j))
      throw std::invalid_argument("times_h: block size mismatch");
    out.push_back({series_mul(blocks_[j].row0, h[j].coeffs),
                   series_mul(blocks_[j].row1, h[j].coeffs)});
  }
  return MatrixPoint(lambda_, std::move(out));
}

void MatrixPoint::require_generic(double eps) const {
  for (int i = 0; i < num_blocks(); ++i) {
    const auto& bi = blocks_[i];
    if (lambda_.block_size(i) >= 2 &&
        std::abs(det2(bi.row0[0], bi.row1[0], bi.row0[1], bi.row1[1])) < eps)
      throw std::domain_error("matrix point leaves the generic stratum (block minor)");
    for (int j = i + 1; j < num_blocks(); ++j) {
      const auto& bj = blocks_[j];
      if (std::abs(det2(bi.row0[0], bi.row1[0], bj.row0[0], bj.row1[0])) < eps)
        throw std::domain_error("matrix point leaves the generic stratum (pair minor)");
    }
  }
}

SlicePoint::SlicePoint(Partition lambda, std::vector<cplx> flat_coords)
    : lambda_(std::move(lambda)), flat_(std::move(flat_coords)) {
  if (int(flat_.size()) != lambda_.total())
    throw std::invalid_argument("slice point: coordinate count mismatch");
}

SlicePoint SlicePoint::with_flat(int p, cplx v) const {
  auto f = flat_;
  f.at(p) = v;
  return SlicePoint(lambda_, std::move(f));
}

void SlicePoint::require_valid(double eps) const {
  for (int i = 0; i < lambda_.num_blocks(); ++i) {
    if (lambda_.block_size(i) >= 2 && std::abs(coord(i, 1)) < eps)
      throw std::domain_error("slice point: x_1 vanishes on a Jordan block");
    for (int j = i + 1; j < lambda_.num_blocks(); ++j)
      if (std::abs(coord(i, 0) - coord(j, 0)) < eps)
        throw std::domain_error("slice point: coincident leading coordinates");
  }
}

MatrixPoint SlicePoint::embed() const {
  std::vector<MatrixBlock> blocks;
  for (int j = 0; j < lambda_.num_blocks(); ++j) {
    const int n = lambda_.block_size(j);
    MatrixBlock b;
    b.row0.resize(n);
    b.row1.assign(n, cplx(0));
    b.row1[0] = cplx(1);
    for (int k = 0; k < n; ++k) b.row0[k] = coord(j, k);
    blocks.push_back(std::move(b));
  }
  return MatrixPoint(lambda_, std::move(blocks));
}

SliceReduction slice_reduce(const MatrixPoint& z) {
  const Partition& lam = z.partition();
  std::vector<JordanElement> h;
  std::vector<cplx> flat;
  for (int j = 0; j < lam.num_blocks(); ++j) {
    const auto& blk = z.block(j);
    if (std::abs(blk.row1[0]) < 1e-14)
      throw std::domain_error("slice reduction: z_{1,0} vanishes on a block");
    auto psi = psi_coeffs(blk.row1);
    h.push_back({psi});
    auto xrow = series_mul(blk.row0, psi);
    flat.insert(flat.end(), xrow.begin(), xrow.end());
  }
  return {std::move(h), SlicePoint(lam, std::move(flat))};
}

Contour slice_contour(const SlicePoint& x, int block_p, int block_q, double bulge) {
  const cplx A = -x.coord(block_p, 0);
  const cplx B = -x.coord(block_q, 0);
  return bulge == 0.0 ? Contour::segment(A, B) : Contour::arc(A, B, bulge);
}

// ---------------------------------------------------------------------------
// Integrand assembly.  The character integrand on a contour is
//   exp( sum_j [ alpha_0^(j) log h_0^(j)(s) + sum_{k>=1} alpha_k^(j) theta_k ] )
// where h^(j)(s) is affine in s.  Only the h_0 logs carry branches: factors
// whose zero sits at a segment endpoint are split off analytically (they
// produce the integrable powers u^a, (1-u)^b), the rest are continued along
// the contour by the branch tracker.

namespace {

enum class FactorKind { Fixed, Tracked, EndpointA, EndpointB };

struct BlockPlan {
  int n = 1;
  std::vector<cplx> row0, row1;
  std::vector<int> lift0;  // jet variable per row0 entry, or -1
  cplx alpha0;
  std::vector<cplx> alpha_tail;  // alpha_1 .. alpha_{n-1}
  FactorKind kind = FactorKind::Fixed;
  int slot = -1;  // tracker slot for Tracked factors
  // endpoint factors: h_0 = u * [slope (B-A)] * (1 + i c (1-u))  (A side)
  //                   h_0 = (1-u) * [slope (A-B)] * (1 - i c u)  (B side)
  cplx unit_const{1};   // slope (B-A) resp. slope (A-B)
  cplx log_const{0};    // principal log of unit_const
  Jet unit_jet;         // jet version when anchors move
  Jet log_const_jet;
  bool lifted = false;
  bool jet_rows = false;  // entries supplied as jets directly
  std::vector<Jet> row0_jets, row1_jets;
};

struct Plan {
  Contour contour;
  bool endpoint_form = false;  // Segment / Arc
  double bulge = 0;
  cplx A{0}, B{0};
  std::vector<BlockPlan> blocks;
  std::optional<BranchTracker> tracker;

  bool jets = false;
  JetShape shape{1, 0};
  Jet A_jet, B_jet;
  bool anchors_lifted = false;
  Jet log_measure;  // log[(B-A)/(B0-A0)], the jet part of ds/du
};

bool near(cplx a, cplx b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)); }

bool coeff_tail_nonzero(const Jet& j) {
  Jet t = j;
  t -= j.value();
  return t.max_abs() > 0;
}

// Probe that the theta tail of an essential endpoint block drives the
// integrand to zero along the approach direction.
void check_essential_decay(const Plan& plan, const BlockPlan& bp, bool at_a) {
  auto tail_re = [&](double eps) {
    const double u = at_a ? eps : 1.0 - eps;
    const cplx phi = u * (cplx(1) + cplx(0, plan.bulge) * (1.0 - u));
    const cplx s = plan.A + (plan.B - plan.A) * phi;
    std::vector<cplx> h(bp.n);
    for (int k = 0; k < bp.n; ++k) h[k] = bp.row0[k] + s * bp.row1[k];
    auto th = series_log_tail(h);
    cplx w(0);
    for (int k = 1; k < bp.n; ++k) w += bp.alpha_tail[k - 1] * th[k];
    return w.real();
  };
  if (!(tail_re(1e-6) < tail_re(1e-4) - 5.0))
    throw std::runtime_error("integrand does not decay at an essential contour endpoint");
}

Plan build_plan(const MatrixPoint& z, const AlphaParams& alpha, const Contour& contour,
                const HgfOptions& opt, const std::vector<int>* lift_flat, JetShape shape,
                const std::vector<MatrixJetRows>* jet_rows = nullptr) {
  const Partition& lam = z.partition();

  Plan plan;
  plan.contour = contour;
  plan.endpoint_form = contour.has_branch_endpoints();
  plan.bulge = contour.bulge;
  plan.A = contour.a;
  plan.B = contour.b;
  plan.jets = lift_flat != nullptr || jet_rows != nullptr;
  plan.shape = shape;

  std::vector<std::pair<cplx, cplx>> tracked;
  std::vector<cplx> tracked_sing;

  for (int j = 0; j < lam.num_blocks(); ++j) {
    const auto& blk = z.block(j);
    BlockPlan bp;
    bp.n = lam.block_size(j);
    bp.row0 = blk.row0;
    bp.row1 = blk.row1;
    bp.lift0.assign(bp.n, -1);
    if (lift_flat)
      for (int k = 0; k < bp.n; ++k) {
        bp.lift0[k] = (*lift_flat)[lam.flat_index(j, k)];
        bp.lifted = bp.lifted || bp.lift0[k] >= 0;
      }
    if (jet_rows) {
      bp.jet_rows = true;
      bp.row0_jets = (*jet_rows)[j].row0;
      bp.row1_jets = (*jet_rows)[j].row1;
    }
    bp.alpha0 = alpha.at(j, 0);
    for (int k = 1; k < bp.n; ++k) bp.alpha_tail.push_back(alpha.at(j, k));

    const cplx slope = blk.row1[0];
    const bool h0_varies =
        bp.jet_rows && (coeff_tail_nonzero(bp.row0_jets[0]) || coeff_tail_nonzero(bp.row1_jets[0]));
    if (std::abs(slope) < 1e-14 && !h0_varies) {
      bp.kind = FactorKind::Fixed;
    } else if (std::abs(slope) < 1e-14) {
      bp.kind = FactorKind::Fixed;  // jet-varying constant-in-s factor
    } else {
      const cplx sing = -blk.row0[0] / slope;
      if (plan.endpoint_form && near(sing, plan.A)) {
        if (h0_varies)
          throw std::invalid_argument(
              "hgf: jet-varying factor cannot anchor a contour endpoint");
        bp.kind = FactorKind::EndpointA;
        bp.unit_const = slope * (plan.B - plan.A);
        bp.log_const = std::log(bp.unit_const);
      } else if (plan.endpoint_form && near(sing, plan.B)) {
        if (h0_varies)
          throw std::invalid_argument(
              "hgf: jet-varying factor cannot anchor a contour endpoint");
        bp.kind = FactorKind::EndpointB;
        bp.unit_const = slope * (plan.A - plan.B);
        bp.log_const = std::log(bp.unit_const);
      } else {
        bp.kind = FactorKind::Tracked;
        bp.slot = int(tracked.size());
        tracked.push_back({blk.row0[0], slope});
        tracked_sing.push_back(sing);
      }
    }
    plan.blocks.push_back(std::move(bp));
  }

  if (!tracked.empty()) {
    plan.tracker.emplace(contour, tracked);
    for (const cplx& sing : tracked_sing)
      if (plan.tracker->min_distance(sing) < opt.guard)
        throw std::runtime_error("contour passes within the guard distance of a singular point");
  }

  if (plan.endpoint_form) {
    for (const auto& bp : plan.blocks) {
      if (bp.kind == FactorKind::EndpointA || bp.kind == FactorKind::EndpointB) {
        if (bp.n == 1) {
          if (bp.alpha0.real() <= -0.999)
            throw std::runtime_error("endpoint exponent below -1: the integral diverges");
        } else {
          check_essential_decay(plan, bp, bp.kind == FactorKind::EndpointA);
        }
      }
    }
  }

  if (plan.jets) {
    plan.A_jet = Jet::constant(shape, plan.A);
    plan.B_jet = Jet::constant(shape, plan.B);
    for (const auto& bp : plan.blocks) {
      if (!bp.lifted) continue;
      if (bp.kind == FactorKind::EndpointA || bp.kind == FactorKind::EndpointB) {
        Jet r0 = bp.lift0[0] >= 0 ? Jet::variable(shape, bp.lift0[0], bp.row0[0])
                                  : Jet::constant(shape, bp.row0[0]);
        Jet anchor = -(r0 / bp.row1[0]);
        (bp.kind == FactorKind::EndpointA ? plan.A_jet : plan.B_jet) = anchor;
        plan.anchors_lifted = true;
      }
    }
    for (auto& bp : plan.blocks) {
      if (bp.kind == FactorKind::EndpointA)
        bp.unit_jet = (plan.B_jet - plan.A_jet) * bp.row1[0];
      else if (bp.kind == FactorKind::EndpointB)
        bp.unit_jet = (plan.A_jet - plan.B_jet) * bp.row1[0];
      else
        continue;
      bp.log_const_jet = bp.unit_jet.log_with_base(bp.log_const);
    }
    plan.log_measure = Jet(shape);
    if (plan.anchors_lifted) {
      // the quadrature weights carry the scalar ds/du only; moving anchors
      // scale the measure by (B - A)/(B0 - A0)
      plan.log_measure =
          (plan.B_jet - plan.A_jet).log_with_base(std::log(plan.B - plan.A));
      plan.log_measure -= std::log(plan.B - plan.A);
    }
  }
  return plan;
}

cplx eval_scalar(const Plan& plan, const EvalPoint& p) {
  const cplx ic(0, plan.bulge);
  cplx w(0);
  for (const auto& bp : plan.blocks) {
    cplx logh0;
    cplx h0_exact(0);  // cancellation-free h_0 for endpoint blocks
    switch (bp.kind) {
      case FactorKind::Fixed:
        logh0 = std::log(bp.row0[0]);
        break;
      case FactorKind::Tracked: {
        const cplx h0 = bp.row0[0] + p.s * bp.row1[0];
        logh0 = plan.tracker->log(bp.slot, p.t, h0);
        break;
      }
      case FactorKind::EndpointA: {
        const cplx corr = cplx(1) + ic * p.one_minus_u;
        logh0 = bp.log_const + std::log(p.u) + std::log(corr);
        h0_exact = bp.unit_const * p.u * corr;
        break;
      }
      case FactorKind::EndpointB: {
        const cplx corr = cplx(1) - ic * p.u;
        logh0 = bp.log_const + std::log(p.one_minus_u) + std::log(corr);
        h0_exact = bp.unit_const * p.one_minus_u * corr;
        break;
      }
    }
    w += bp.alpha0 * logh0;
    if (bp.n >= 2) {
      std::vector<cplx> h(bp.n);
      const bool endpoint =
          bp.kind == FactorKind::EndpointA || bp.kind == FactorKind::EndpointB;
      h[0] = endpoint ? h0_exact : bp.row0[0] + p.s * bp.row1[0];
      for (int k = 1; k < bp.n; ++k) h[k] = bp.row0[k] + p.s * bp.row1[k];
      auto th = series_log_tail(h);
      for (int k = 1; k < bp.n; ++k) w += bp.alpha_tail[k - 1] * th[k];
    }
  }
  return std::exp(w);
}

Jet eval_jet(const Plan& plan, const EvalPoint& p) {
  const JetShape shape = plan.shape;

  Jet s_jet = Jet::constant(shape, p.s);
  if (plan.anchors_lifted) {
    const cplx phi = p.u * (cplx(1) + cplx(0, plan.bulge) * p.one_minus_u);
    s_jet = plan.A_jet + (plan.B_jet - plan.A_jet) * phi;
  }

  const cplx ic(0, plan.bulge);
  Jet w = plan.log_measure;
  for (const auto& bp : plan.blocks) {
    auto entry = [&](int k) {
      if (bp.jet_rows) return bp.row0_jets[k] + s_jet * bp.row1_jets[k];
      Jet r0 = bp.lift0[k] >= 0 ? Jet::variable(shape, bp.lift0[k], bp.row0[k])
                                : Jet::constant(shape, bp.row0[k]);
      if (bp.row1[k] == cplx(0)) return r0;
      return r0 + s_jet * bp.row1[k];
    };
    const bool endpoint =
        bp.kind == FactorKind::EndpointA || bp.kind == FactorKind::EndpointB;
    Jet logh0(shape);
    Jet h0_exact(shape);
    switch (bp.kind) {
      case FactorKind::Fixed:
        logh0 = entry(0).log();
        break;
      case FactorKind::Tracked: {
        Jet h0 = entry(0);
        logh0 = h0.log_with_base(plan.tracker->log(bp.slot, p.t, h0.value()));
        break;
      }
      case FactorKind::EndpointA: {
        const cplx corr = cplx(1) + ic * p.one_minus_u;
        logh0 = bp.log_const_jet + (std::log(p.u) + std::log(corr));
        h0_exact = bp.unit_jet * (p.u * corr);
        break;
      }
      case FactorKind::EndpointB: {
        const cplx corr = cplx(1) - ic * p.u;
        logh0 = bp.log_const_jet + (std::log(p.one_minus_u) + std::log(corr));
        h0_exact = bp.unit_jet * (p.one_minus_u * corr);
        break;
      }
    }
    w += logh0 * bp.alpha0;
    if (bp.n >= 2) {
      std::vector<Jet> h;
      h.reserve(bp.n);
      h.push_back(endpoint ? h0_exact : entry(0));
      for (int k = 1; k < bp.n; ++k) h.push_back(entry(k));
      auto th = series_log_tail(h);
      for (int k = 1; k < bp.n; ++k) w += th[k] * bp.alpha_tail[k - 1];
    }
  }
  return w.exp();
}

}  // namespace

cplx hgf_eval_raw(const MatrixPoint& z, const AlphaParams& alpha, const Contour& contour,
                  const HgfOptions& opt, QuadResult* info) {
  if (!(z.partition() == alpha.partition()))
    throw std::invalid_argument("hgf: partition mismatch");
  Plan plan = build_plan(z, alpha, contour, opt, nullptr, JetShape{1, 0});
  QuadResult r = integrate([&plan](const EvalPoint& p) { return eval_scalar(plan, p); },
                           contour, opt.quad);
  if (info) *info = r;
  if (!r.converged) throw std::runtime_error("hgf: quadrature did not converge");
  if (contour.truncated_open() && r.endpoint_decay > 1e3 * opt.quad.tol_abs)
    throw std::runtime_error("hgf: integrand too large at truncated contour endpoints");
  return r.value;
}

cplx hgf_eval_slice(const SlicePoint& x, const AlphaParams& alpha, const Contour& contour,
                    const HgfOptions& opt, QuadResult* info) {
  x.require_valid();
  return hgf_eval_raw(x.embed(), alpha, contour, opt, info);
}

std::map<std::vector<int>, cplx> hgf_partials(const SlicePoint& x, const AlphaParams& alpha,
                                              const std::vector<std::vector<int>>& wanted,
                                              const Contour& contour, const HgfOptions& opt) {
  x.require_valid();
  const int N = x.partition().total();
  std::vector<int> lift(N, -1);
  int nvars = 0;
  int order = 0;
  for (const auto& m : wanted) {
    if (int(m.size()) != N)
      throw std::invalid_argument("hgf partials: multi-index length mismatch");
    int total = 0;
    for (int p = 0; p < N; ++p) {
      if (m[p] < 0) throw std::invalid_argument("hgf partials: negative exponent");
      total += m[p];
      if (m[p] > 0 && lift[p] < 0) lift[p] = nvars++;
    }
    if (total > 2)
      throw std::invalid_argument("hgf partials: multi-index order above the profile limit 2");
    order = std::max(order, total);
  }
  std::map<std::vector<int>, cplx> out;
  if (nvars == 0) {
    if (!wanted.empty()) out[wanted[0]] = hgf_eval_slice(x, alpha, contour, opt);
    return out;
  }

  const JetShape shape{nvars, order};
  Plan plan = build_plan(x.embed(), alpha, contour, opt, &lift, shape);
  QuadResult info;
  Jet F = integrate_jet([&plan](const EvalPoint& p) { return eval_jet(plan, p); }, contour,
                        shape, opt.quad, &info);
  if (!info.converged) throw std::runtime_error("hgf partials: quadrature did not converge");

  for (const auto& m : wanted) {
    MultiIndex mi;
    for (int p = 0; p < N; ++p)
      if (m[p] > 0) mi.e[lift[p]] = std::uint8_t(m[p]);
    out[m] = F.partial(mi);
  }
  return out;
}

double covariance_residual(const MatrixPoint& z, const std::vector<JordanElement>& h,
                           const AlphaParams& alpha, const Contour& contour,
                           const HgfOptions& opt) {
  z.require_generic();
  const MatrixPoint zh = z.times_h(h);
  zh.require_generic();
  const cplx Fz = hgf_eval_raw(z, alpha, contour, opt);
  const cplx Fzh = hgf_eval_raw(zh, alpha, contour, opt);
  const cplx chi = char_eval(h, alpha);
  return std::abs(Fzh - chi * Fz) / std::abs(Fz);
}

Sl2SliceImage sl2_slice_act(const std::array<cplx, 4>& g, const SlicePoint& x,
                            const AlphaParams& alpha) {
  const cplx a = g[0], b = g[1], c = g[2], d = g[3];
  if (std::abs(a * d - b * c - cplx(1)) > 1e-12)
    throw std::invalid_argument("sl2 action: determinant must be 1");
  const Partition& lam = x.partition();
  std::vector<cplx> flat;
  std::vector<JordanElement> row1_blocks;
  for (int j = 0; j < lam.num_blocks(); ++j) {
    const int n = lam.block_size(j);
    std::vector<cplx> g1(n), g0(n);
    g1[0] = c * x.coord(j, 0) + d;
    g0[0] = a * x.coord(j, 0) + b;
    for (int k = 1; k < n; ++k) {
      g1[k] = c * x.coord(j, k);
      g0[k] = a * x.coord(j, k);
    }
    if (std::abs(g1[0]) < 1e-12)
      throw std::domain_error("sl2 action: c x_0 + d vanishes on a block");
    auto psi = psi_coeffs(g1);
    auto yrow = series_mul(g0, psi);
    flat.insert(flat.end(), yrow.begin(), yrow.end());
    row1_blocks.push_back({std::move(g1)});
  }
  // the cofactor making x -> cofactor * u(y) a covariant solution again:
  // U(g i(x)) = chi((g x)_1; alpha) u(g_* x) by the covariance identity
  return {SlicePoint(lam, std::move(flat)), char_eval(row1_blocks, alpha)};
}

double contiguity_residual(const SlicePoint& x, const AlphaParams& alpha, int i, int j,
                           const Contour& contour, const HgfOptions& opt) {
  const Partition& lam = x.partition();
  if (i == j) throw std::invalid_argument("contiguity: need distinct blocks");
  const int N = lam.total();
  const int nj = lam.block_size(j);
  std::vector<int> dzero(N, 0), dj(N, 0);
  dj[lam.flat_index(j, nj - 1)] = 1;
  auto parts = hgf_partials(x, alpha, {dzero, dj}, contour, opt);
  const cplx F = parts[dzero];
  const cplx DjF = parts[dj];
  const cplx aj = alpha.at(j, nj - 1);
  const cplx lhs = (x.coord(i, 0) - x.coord(j, 0)) * DjF + aj * F;
  const cplx rhs = aj * hgf_eval_slice(x, alpha.shifted(i, j, 1), contour, opt);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

Jet hgf_eval_jet_rows(const Partition& lambda, const std::vector<MatrixJetRows>& rows,
                      const AlphaParams& alpha, const Contour& contour, JetShape shape,
                      const HgfOptions& opt) {
  if (int(rows.size()) != lambda.num_blocks())
    throw std::invalid_argument("hgf: block count mismatch");
  std::vector<MatrixBlock> scalar_blocks;
  for (int j = 0; j < lambda.num_blocks(); ++j) {
    MatrixBlock b;
    for (const Jet& v : rows[j].row0) b.row0.push_back(v.value());
    for (const Jet& v : rows[j].row1) b.row1.push_back(v.value());
    scalar_blocks.push_back(std::move(b));
  }
  MatrixPoint z(lambda, std::move(scalar_blocks));
  Plan plan = build_plan(z, alpha, contour, opt, nullptr, shape, &rows);
  QuadResult info;
  Jet F = integrate_jet([&plan](const EvalPoint& p) { return eval_jet(plan, p); }, contour,
                        shape, opt.quad, &info);
  if (!info.converged) throw std::runtime_error("hgf: quadrature did not converge");
  return F;
}

Jet hgf_preset_x_jet(const ClassicalPreset& preset, cplx x, const AlphaParams& alpha, int order,
                     const HgfOptions& opt) {
  preset.check_domain(x);
  const JetShape shape{1, order};
  Jet xj = Jet::variable(shape, 0, x);
  return hgf_eval_jet_rows(preset.lambda, preset.embed_jet(xj), alpha, preset.contour(x), shape,
                           opt);
}

// ---------------------------------------------------------------------------
// Classical presets (GM(2,4) realizations)

namespace {

MatrixBlock cols(std::initializer_list<std::pair<cplx, cplx>> columns) {
  MatrixBlock b;
  for (auto& [r0, r1] : columns) {
    b.row0.push_back(r0);
    b.row1.push_back(r1);
  }
  return b;
}

std::vector<ClassicalPreset> make_presets() {
  std::vector<ClassicalPreset> ps;
  ps.push_back({"gauss", Partition({1, 1, 1, 1})});
  ps.push_back({"kummer", Partition({2, 1, 1})});
  ps.push_back({"bessel", Partition({2, 2})});
  ps.push_back({"hermite-weber", Partition({3, 1})});
  ps.push_back({"airy", Partition({4})});
  return ps;
}

}  // namespace

AlphaParams ClassicalPreset::alpha(cplx a, cplx b, cplx c) const {
  if (name == "gauss")
    return AlphaParams(lambda, {{b - c}, {a - cplx(1)}, {c - a - cplx(1)}, {-b}});
  if (name == "kummer")
    return AlphaParams(lambda, {{-c, cplx(1)}, {a - cplx(1)}, {c - a - cplx(1)}});
  if (name == "bessel")
    return AlphaParams(lambda, {{c - cplx(1), cplx(1)}, {-c - cplx(1), cplx(1)}});
  if (name == "hermite-weber")
    return AlphaParams(lambda, {{a - cplx(1), cplx(0), cplx(1)}, {-a - cplx(1)}});
  if (name == "airy")
    return AlphaParams(lambda, {{cplx(-2), cplx(0), cplx(0), cplx(-1)}});
  throw std::logic_error("unknown preset");
}

MatrixPoint ClassicalPreset::embed(cplx x) const {
  if (name == "gauss")
    return MatrixPoint(
        lambda, {cols({{1, 0}}), cols({{0, 1}}), cols({{1, -1}}), cols({{cplx(1), -x}})});
  if (name == "kummer")
    return MatrixPoint(lambda, {cols({{1, 0}, {cplx(0), x}}), cols({{0, 1}}), cols({{1, -1}})});
  if (name == "bessel")
    return MatrixPoint(lambda, {cols({{1, 0}, {cplx(0), x}}), cols({{0, 1}, {-1, 0}})});
  if (name == "hermite-weber")
    return MatrixPoint(lambda, {cols({{1, 0}, {0, 1}, {cplx(0), x}}), cols({{0, 1}})});
  if (name == "airy")
    return MatrixPoint(lambda, {cols({{1, 0}, {0, 1}, {0, 0}, {cplx(0), -x}})});
  throw std::logic_error("unknown preset");
}

Contour ClassicalPreset::contour(cplx) const {
  if (name == "gauss" || name == "kummer") return Contour::segment(cplx(0), cplx(1));
  if (name == "bessel") return Contour::hankel_loop(1.0, 40.0);
  if (name == "hermite-weber") return Contour::hankel_loop(1.0, 12.0);
  // decay directions of exp(x s - s^3/3)
  return Contour::ray_pair(-2 * kPi / 3, 2 * kPi / 3, 6.0);
}

void ClassicalPreset::check_domain(cplx x) const {
  if (name == "gauss") {
    if (std::abs(x.imag()) < 1e-9 && x.real() >= 0.999)
      throw std::invalid_argument("gauss preset: x must stay off [1, inf)");
    return;
  }
  if (name == "kummer" || name == "bessel" || name == "hermite-weber") {
    if (!(x.real() > 0 && x.real() < 3))
      throw std::invalid_argument(name + " preset: Re x must lie in (0, 3)");
    return;
  }
  if (!(x.real() > 0.5 && x.real() < 3))
    throw std::invalid_argument("airy preset: Re x must lie in (0.5, 3)");
}

std::vector<MatrixJetRows> ClassicalPreset::embed_jet(const Jet& x) const {
  const JetShape sh = x.shape();
  auto c = [&](double v) { return Jet::constant(sh, cplx(v)); };
  if (name == "gauss")
    return {{{c(1)}, {c(0)}}, {{c(0)}, {c(1)}}, {{c(1)}, {c(-1)}}, {{c(1)}, {-x}}};
  if (name == "kummer")
    return {{{c(1), c(0)}, {c(0), x}}, {{c(0)}, {c(1)}}, {{c(1)}, {c(-1)}}};
  if (name == "bessel")
    return {{{c(1), c(0)}, {c(0), x}}, {{c(0), c(-1)}, {c(1), c(0)}}};
  if (name == "hermite-weber")
    return {{{c(1), c(0), c(0)}, {c(0), c(1), x}}, {{c(0)}, {c(1)}}};
  if (name == "airy")
    return {{{c(1), c(0), c(0), c(0)}, {c(0), c(1), c(0), -x}}};
  throw std::logic_error("unknown preset");
}

const std::vector<ClassicalPreset>& ClassicalPreset::all() {
  static const std::vector<ClassicalPreset> presets = make_presets();
  return presets;
}

const ClassicalPreset& ClassicalPreset::by_name(const std::string& name) {
  for (const auto& p : all())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace gftoda
