#include "gftoda/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gftoda {

namespace {
constexpr JetShape field_shape(int order) { return JetShape{2, order}; }
}  // namespace

ScalarField::Rule ScalarField::zero_rule() {
  return [](FieldPoint, int order) { return Jet(field_shape(order)); };
}

ScalarField ScalarField::constant(cplx v) {
  return ScalarField([v](FieldPoint, int order) { return Jet::constant(field_shape(order), v); });
}

ScalarField ScalarField::coord_x() {
  return ScalarField(
      [](FieldPoint p, int order) { return Jet::variable(field_shape(order), 0, p.x); });
}

ScalarField ScalarField::coord_y() {
  return ScalarField(
      [](FieldPoint p, int order) { return Jet::variable(field_shape(order), 1, p.y); });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](FieldPoint p, int k) { return a.eval(p, k) + b.eval(p, k); });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](FieldPoint p, int k) { return a.eval(p, k) - b.eval(p, k); });
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](FieldPoint p, int k) { return a.eval(p, k) * b.eval(p, k); });
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return ScalarField([a, b](FieldPoint p, int k) { return a.eval(p, k) / b.eval(p, k); });
}
ScalarField operator-(const ScalarField& a) {
  return ScalarField([a](FieldPoint p, int k) { return -a.eval(p, k); });
}
ScalarField operator*(cplx v, const ScalarField& a) {
  return ScalarField([v, a](FieldPoint p, int k) { return a.eval(p, k) * v; });
}
ScalarField field_dx(const ScalarField& a) {
  return ScalarField([a](FieldPoint p, int k) { return a.eval(p, k + 1).derive(0); });
}
ScalarField field_dy(const ScalarField& a) {
  return ScalarField([a](FieldPoint p, int k) { return a.eval(p, k + 1).derive(1); });
}
ScalarField field_log(const ScalarField& a) {
  return ScalarField([a](FieldPoint p, int k) { return a.eval(p, k).log(); });
}

InvariantJets invariants(const HyperOp& M, FieldPoint pt, int order) {
  Jet A = M.a.eval(pt, order + 1);
  Jet B = M.b.eval(pt, order + 1);
  Jet C = M.c.eval(pt, order);
  Jet AB = (A * B).truncate(order);
  return {A.derive(0) + AB - C, B.derive(1) + AB - C};
}

HyperOp conjugate(const HyperOp& M, const ScalarField& F) {
  ScalarField Fx = field_dx(F), Fy = field_dy(F);
  HyperOp out;
  out.a = M.a + Fy;
  out.b = M.b + Fx;
  out.c = M.c + M.a * Fx + M.b * Fy + Fx * Fy + field_dx(Fy);
  return out;
}

namespace {
ScalarField invariant_h(const HyperOp& M) { return field_dx(M.a) + M.a * M.b - M.c; }
ScalarField invariant_k(const HyperOp& M) { return field_dy(M.b) + M.a * M.b - M.c; }
}  // namespace

HyperOp laplace_up(const HyperOp& M) {
  ScalarField dylogh = field_dy(field_log(invariant_h(M)));
  HyperOp out;
  out.a = M.a - dylogh;
  out.b = M.b;
  out.c = M.c - field_dx(M.a) + field_dy(M.b) - M.b * dylogh;
  out.b_antideriv = M.b_antideriv;
  return out;
}

HyperOp laplace_down(const HyperOp& M) {
  ScalarField dxlogk = field_dx(field_log(invariant_k(M)));
  HyperOp out;
  out.a = M.a;
  out.b = M.b - dxlogk;
  out.c = M.c + field_dx(M.a) - field_dy(M.b) - M.a * dxlogk;
  return out;
}

Normalized normalize(const HyperOp& M) {
  if (!M.b_antideriv)
    throw std::invalid_argument(
        "normalize: no closed-form antiderivative of b is attached to this operator");
  const ScalarField& F = *M.b_antideriv;
  HyperOp out = conjugate(M, F);
  out.b = ScalarField::constant(cplx(0));  // exact by construction of F
  out.b_antideriv = ScalarField::constant(cplx(0));
  return {out, F};
}

Jet hyperop_apply(const HyperOp& M, const Jet& u, FieldPoint pt) {
  const int K = u.order();
  if (K < 2) throw std::invalid_argument("hyperop_apply: need a jet of order >= 2");
  const int R = K - 2;
  Jet uxy = u.derive(0).derive(1);
  Jet ux = u.derive(0).truncate(R);
  Jet uy = u.derive(1).truncate(R);
  Jet A = M.a.eval(pt, R), B = M.b.eval(pt, R), C = M.c.eval(pt, R);
  return uxy + A * ux + B * uy + C * u.truncate(R);
}

NormalSeq::NormalSeq(ScalarField a0, ScalarField c0, int base_order)
    : a0_(std::move(a0)), c0_(std::move(c0)), base_order_(base_order) {}

NormalSeq::Entry NormalSeq::entry(int n, FieldPoint pt, int order) const {
  const int needed = order + 2 * std::abs(n);
  if (needed > base_order_)
    throw std::invalid_argument("laplace sequence: entry " + std::to_string(n) + " at order " +
                                std::to_string(order) + " exceeds the jet-order budget " +
                                std::to_string(base_order_));
  Jet A = a0_.eval(pt, needed);
  Jet C = c0_.eval(pt, needed);
  int cur = needed;
  for (int step = 0; step < n; ++step) {  // upward: a' = a - dy log h, c' = c - dx a
    Jet h = A.derive(0) - C.truncate(cur - 1);
    if (std::abs(h.value()) < 1e-12)
      throw std::domain_error("laplace sequence: invariant h vanishes at the point");
    Jet logh = h.log();
    Jet newA = A.truncate(cur - 2) - logh.derive(1).truncate(cur - 2);
    Jet newC = C.truncate(cur - 2) - A.derive(0).truncate(cur - 2);
    A = newA;
    C = newC;
    cur -= 2;
  }
  for (int step = 0; step < -n; ++step) {  // downward with F = log k, k = -c
    Jet k = -C;
    if (std::abs(k.value()) < 1e-12)
      throw std::domain_error("laplace sequence: invariant k vanishes at the point");
    Jet logk = k.log();
    Jet newA = A.truncate(cur - 2) + logk.derive(1).truncate(cur - 2);
    Jet newC = C.truncate(cur - 2) + A.derive(0).truncate(cur - 2) + logk.derive(1).derive(0);
    A = newA;
    C = newC;
    cur -= 2;
  }
  return {A.truncate(order), C.truncate(order)};
}

double toda_te_residual(const NormalSeq& seq, int n, FieldPoint pt) {
  auto en = seq.entry(n, pt, 2);
  const cplx rn = en.c.value();
  if (std::abs(rn) < 1e-12)
    throw std::domain_error("toda residual: r_n vanishes at the point");
  const cplx mixed = en.c.log().derive(0).derive(1).value();
  const cplx rp = seq.entry(n + 1, pt, 0).c.value();
  const cplx rm = seq.entry(n - 1, pt, 0).c.value();
  return std::abs(mixed - (rp - 2.0 * rn + rm));
}

double toda_pair_residual(const NormalSeq& seq, int n, FieldPoint pt) {
  auto en = seq.entry(n, pt, 1);
  const cplx rn = en.c.value();
  const cplx rp = seq.entry(n + 1, pt, 0).c.value();
  const cplx sm = seq.entry(n - 1, pt, 0).a.value();  // s_n = a_{n-1}
  const double r1 = std::abs(en.a.derive(0).value() - (rn - rp));
  const double r2 = std::abs(en.c.log().derive(1).value() - (sm - en.a.value()));
  return std::max(r1, r2);
}

// ---------------------------------------------------------------------------
// Closed-form families

namespace {
ScalarField diff_xy() { return ScalarField::coord_x() - ScalarField::coord_y(); }
ScalarField x_minus(cplx u) { return ScalarField::coord_x() - ScalarField::constant(u); }
}  // namespace

ClosedFamily epd_family(cplx alpha, cplx beta) {
  ClosedFamily fam;
  fam.name = "epd";
  fam.a_m = [alpha, beta](int m) {
    return ScalarField::constant(beta - alpha - 2.0 * double(m)) / diff_xy();
  };
  fam.c_m = [alpha, beta](int m) {
    ScalarField d = diff_xy();
    return ScalarField::constant((alpha + double(m)) * (beta - double(m) + 1.0)) / (d * d);
  };
  fam.m0.a = ScalarField::constant(beta) / diff_xy();
  fam.m0.b = ScalarField::constant(-alpha) / diff_xy();
  fam.m0.c = ScalarField::constant(cplx(0));
  fam.m0.b_antideriv = alpha * field_log(diff_xy());
  return fam;
}

ClosedFamily confluent_family(cplx alpha, cplx beta, cplx u) {
  ClosedFamily fam;
  fam.name = "confluent";
  fam.a_m = [beta, u](int) { return ScalarField::constant(beta) / x_minus(u); };
  fam.c_m = [alpha, beta, u](int m) {
    ScalarField d = x_minus(u);
    return ScalarField::constant((alpha + double(m)) * beta) / (d * d);
  };
  fam.m0.a = ScalarField::constant(beta) / x_minus(u);
  fam.m0.b = ScalarField::constant(-alpha) / x_minus(u);
  fam.m0.c = ScalarField::constant(cplx(0));
  fam.m0.b_antideriv = alpha * field_log(x_minus(u));
  return fam;
}

ClosedFamily doubly_confluent_family(cplx alpha, cplx beta, cplx u, cplx v) {
  ClosedFamily fam;
  fam.name = "doubly-confluent";
  const cplx d = u - v;
  fam.a_m = [beta, d](int) { return ScalarField::constant(beta / d); };
  fam.c_m = [alpha, beta, d](int) { return ScalarField::constant(alpha * beta / (d * d)); };
  fam.m0.a = ScalarField::constant(beta / d);
  fam.m0.b = ScalarField::constant(-alpha / d);
  fam.m0.c = ScalarField::constant(cplx(0));
  fam.m0.b_antideriv = (alpha / d) * ScalarField::coord_x();
  return fam;
}

const std::vector<std::string>& closed_family_names() {
  static const std::vector<std::string> names = {"epd", "confluent", "doubly-confluent"};
  return names;
}

ClosedFamily closed_family_by_name(const std::string& name, cplx alpha, cplx beta) {
  if (name == "epd") return epd_family(alpha, beta);
  if (name == "confluent") return confluent_family(alpha, beta, cplx(2.0, 0.3));
  if (name == "doubly-confluent")
    return doubly_confluent_family(alpha, beta, cplx(2.0, 0.3), cplx(-1.1, 0.2));
  throw std::invalid_argument("unknown closed family: " + name);
}

// ---------------------------------------------------------------------------
// Linear operators on slice coordinates

int LinOp::max_order() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, int(t.derivs.size()));
  return m;
}

Jet LinOp::apply(const Jet& f, std::span<const Jet> coord_jets) const {
  const int K = f.order();
  const int R = K - max_order();
  if (R < 0) throw std::invalid_argument("operator application: jet order too low");
  Jet out(JetShape{f.nvars(), R});
  for (const auto& t : terms) {
    Jet g = f;
    for (int d : t.derivs) g = g.derive(d);
    out += t.coeff(coord_jets).truncate(R) * g.truncate(R);
  }
  return out;
}

cplx LinOp::apply_partials(const std::map<std::vector<int>, cplx>& partials,
                           std::span<const cplx> x) const {
  std::vector<Jet> coord0;
  coord0.reserve(x.size());
  for (cplx v : x) coord0.push_back(Jet::constant(JetShape{1, 0}, v));
  cplx out(0);
  for (const auto& t : terms) {
    std::vector<int> mi(x.size(), 0);
    for (int d : t.derivs) mi[d] += 1;
    auto it = partials.find(mi);
    if (it == partials.end())
      throw std::invalid_argument("operator application: missing partial derivative");
    out += t.coeff(coord0).value() * it->second;
  }
  return out;
}

std::vector<std::vector<int>> LinOp::needed_indices(int ncoords) const {
  std::vector<std::vector<int>> out;
  for (const auto& t : terms) {
    std::vector<int> mi(ncoords, 0);
    for (int d : t.derivs) mi[d] += 1;
    if (std::find(out.begin(), out.end(), mi) == out.end()) out.push_back(mi);
  }
  return out;
}

namespace {

using CoeffFn = std::function<Jet(std::span<const Jet>)>;

CoeffFn cc(cplx v) {
  return [v](std::span<const Jet> xs) { return Jet::constant(xs[0].shape(), v); };
}
CoeffFn cx(int p, cplx scale = cplx(1)) {
  return [p, scale](std::span<const Jet> xs) { return xs[p] * scale; };
}
CoeffFn cdiff(int p, int q) {
  return [p, q](std::span<const Jet> xs) { return xs[p] - xs[q]; };
}
CoeffFn cinv_diff(cplx v, int p, int q) {
  return [v, p, q](std::span<const Jet> xs) { return (xs[p] - xs[q]).inverse() * v; };
}

LinOp::Term term(CoeffFn c, std::vector<int> derivs) { return {std::move(c), std::move(derivs)}; }

LinOp mult_op(CoeffFn c) { return LinOp{{term(std::move(c), {})}}; }

}  // namespace

std::vector<NamedOp> reduced_system(const Partition& lambda, const AlphaParams& alpha) {
  auto a = [&](int p) { return alpha.flat(p); };
  if (lambda == Partition({2, 1, 1})) {
    std::vector<NamedOp> ops;
    ops.push_back({"M01", {{term(cx(1), {1, 1}), term(cc(a(1)), {0}), term(cc(-a(0)), {1})}}});
    for (int q : {2, 3}) {
      ops.push_back({"M0" + std::to_string(q),
                     {{term(cdiff(0, q), {0, q}), term(cx(1), {1, q}), term(cc(a(q)), {0}),
                       term(cc(-a(0)), {q})}}});
      ops.push_back({"M1" + std::to_string(q),
                     {{term(cdiff(0, q), {1, q}), term(cc(a(q)), {1}), term(cc(-a(1)), {q})}}});
    }
    ops.push_back(
        {"M23", {{term(cdiff(2, 3), {2, 3}), term(cc(a(3)), {2}), term(cc(-a(2)), {3})}}});
    return ops;
  }
  if (lambda == Partition({2, 2})) {
    std::vector<NamedOp> ops;
    ops.push_back({"M01", {{term(cx(1), {1, 1}), term(cc(a(1)), {0}), term(cc(-a(0)), {1})}}});
    ops.push_back({"M02",
                   {{term(cdiff(0, 2), {0, 2}), term(cx(1), {1, 2}), term(cx(3, cplx(-1)), {0, 3}),
                     term(cc(a(2)), {0}), term(cc(-a(0)), {2})}}});
    ops.push_back({"M03",
                   {{term(cdiff(0, 2), {0, 3}), term(cx(1), {1, 3}), term(cc(a(3)), {0}),
                     term(cc(-a(0)), {3})}}});
    ops.push_back({"M12",
                   {{term(cdiff(0, 2), {1, 2}), term(cx(3, cplx(-1)), {1, 3}),
                     term(cc(a(2)), {1}), term(cc(-a(1)), {2})}}});
    ops.push_back({"M13",
                   {{term(cdiff(0, 2), {1, 3}), term(cc(a(3)), {1}), term(cc(-a(1)), {3})}}});
    ops.push_back({"M23", {{term(cx(3), {3, 3}), term(cc(a(3)), {2}), term(cc(-a(2)), {3})}}});
    return ops;
  }
  if (lambda == Partition({3, 1})) {
    std::vector<NamedOp> ops;
    ops.push_back({"M01",
                   {{term(cx(1), {1, 1}), term(cx(1, cplx(-1)), {0, 2}), term(cx(2), {1, 2}),
                     term(cc(a(1)), {0}), term(cc(-a(0)), {1})}}});
    ops.push_back({"M02",
                   {{term(cx(1), {1, 2}), term(cx(2), {2, 2}), term(cc(a(2)), {0}),
                     term(cc(-a(0)), {2})}}});
    ops.push_back({"M12", {{term(cx(1), {2, 2}), term(cc(a(2)), {1}), term(cc(-a(1)), {2})}}});
    ops.push_back({"M03",
                   {{term(cdiff(0, 3), {0, 3}), term(cx(1), {1, 3}), term(cx(2), {2, 3}),
                     term(cc(a(3)), {0}), term(cc(-a(0)), {3})}}});
    ops.push_back({"M13",
                   {{term(cdiff(0, 3), {1, 3}), term(cx(1), {2, 3}), term(cc(a(3)), {1}),
                     term(cc(-a(1)), {3})}}});
    ops.push_back({"M23",
                   {{term(cdiff(0, 3), {2, 3}), term(cc(a(3)), {2}), term(cc(-a(2)), {3})}}});
    return ops;
  }
  throw std::invalid_argument("reduced systems are tabulated for (2,1,1), (2,2), (3,1) only");
}

LinOp slice_mtilde(const Partition& lambda, const AlphaParams& alpha, int i, int j) {
  const int fi = lambda.flat_index(i, lambda.block_size(i) - 1);
  const int fj = lambda.flat_index(j, lambda.block_size(j) - 1);
  const int xi = lambda.flat_index(i, 0), xj = lambda.flat_index(j, 0);
  const cplx ai = alpha.last(i), aj = alpha.last(j);
  return LinOp{{term(cdiff(xi, xj), {fi, fj}), term(cc(aj), {fi}), term(cc(-ai), {fj})}};
}

LinOp slice_hyperbolic(const Partition& lambda, const AlphaParams& alpha, int i, int j, int m) {
  const int ni = lambda.block_size(i), nj = lambda.block_size(j);
  const int fi = lambda.flat_index(i, ni - 1), fj = lambda.flat_index(j, nj - 1);
  const int xi = lambda.flat_index(i, 0), xj = lambda.flat_index(j, 0);
  const cplx ai = alpha.last(i) + double(ni == 1 ? m : 0);
  const cplx aj = alpha.last(j) - double(nj == 1 ? m : 0);
  return LinOp{{term(cc(cplx(1)), {fi, fj}), term(cinv_diff(aj, xi, xj), {fi}),
                term(cinv_diff(-ai, xi, xj), {fj})}};
}

LinOp slice_contiguity(const Partition& lambda, const AlphaParams& alpha, int i, int j) {
  const int nj = lambda.block_size(j);
  const int fj = lambda.flat_index(j, nj - 1);
  const int xi = lambda.flat_index(i, 0), xj = lambda.flat_index(j, 0);
  return LinOp{{term(cdiff(xi, xj), {fj}), term(cc(alpha.last(j)), {})}};
}

LinOp linop_scale(cplx v, const LinOp& op) {
  LinOp out = op;
  for (auto& t : out.terms) {
    auto inner = t.coeff;
    t.coeff = [v, inner](std::span<const Jet> xs) { return inner(xs) * v; };
  }
  return out;
}

OperatorIdentity contiguity_composition_identity(const Partition& lambda,
                                                 const AlphaParams& alpha, int i, int j) {
  const int ni = lambda.block_size(i);
  const int xi = lambda.flat_index(i, 0), xj = lambda.flat_index(j, 0);
  OperatorIdentity id;
  id.name = "contiguity-composition";
  AlphaParams shifted = alpha.shifted(i, j, 1);
  id.lhs.push_back(
      {slice_contiguity(lambda, shifted, j, i), slice_contiguity(lambda, alpha, i, j)});
  const cplx scal = (alpha.last(i) + double(ni == 1 ? 1 : 0)) * alpha.last(j);
  id.rhs.push_back({mult_op([xi, xj](std::span<const Jet> xs) { return xs[xj] - xs[xi]; }),
                    slice_mtilde(lambda, alpha, i, j)});
  id.rhs.push_back({mult_op(cc(scal)), LinOp{{term(cc(cplx(1)), {})}}});
  return id;
}

std::vector<OperatorIdentity> ideal_identities(const Partition& lambda,
                                               const AlphaParams& alpha) {
  auto ops = reduced_system(lambda, alpha);
  auto op = [&](const std::string& name) -> const LinOp& {
    for (const auto& n : ops)
      if (n.name == name) return n.op;
    throw std::logic_error("missing operator " + name);
  };
  auto a = [&](int p) { return alpha.flat(p); };
  std::vector<OperatorIdentity> ids;

  auto scaled = [&](cplx v, const std::string& name) {
    return std::pair<LinOp, LinOp>{mult_op(cc(v)), op(name)};
  };

  if (lambda == Partition({2, 1, 1})) {
    // same shape as the first identity of the (2,2) table
    for (int q : {2, 3}) {
      OperatorIdentity id;
      id.name = "ideal-211-q" + std::to_string(q);
      id.lhs.push_back({LinOp{{term(cdiff(0, q), {q})}}, op("M01")});
      id.lhs.push_back({LinOp{{term(cx(1, cplx(-1)), {1})}}, op("M1" + std::to_string(q))});
      id.rhs.push_back(scaled(-a(0), "M1" + std::to_string(q)));
      id.rhs.push_back(scaled(a(1), "M0" + std::to_string(q)));
      id.rhs.push_back(scaled(-a(q), "M01"));
      ids.push_back(std::move(id));
    }
    return ids;
  }
  if (lambda == Partition({2, 2})) {
    {
      OperatorIdentity id;
      id.name = "ideal-22-1";
      id.lhs.push_back({LinOp{{term(cdiff(0, 2), {3})}}, op("M01")});
      id.lhs.push_back({LinOp{{term(cx(1, cplx(-1)), {1})}}, op("M13")});
      id.rhs.push_back(scaled(-a(0), "M13"));
      id.rhs.push_back(scaled(a(1), "M03"));
      id.rhs.push_back(scaled(-a(3), "M01"));
      ids.push_back(std::move(id));
    }
    {
      OperatorIdentity id;
      id.name = "ideal-22-2";
      id.lhs.push_back({LinOp{{term(cx(3), {3})}}, op("M13")});
      id.lhs.push_back({LinOp{{term(cdiff(2, 0), {1})}}, op("M23")});
      id.rhs.push_back(scaled(-a(1), "M23"));
      id.rhs.push_back(scaled(a(2), "M13"));
      id.rhs.push_back(scaled(-a(3), "M12"));
      ids.push_back(std::move(id));
    }
    {
      OperatorIdentity id;
      id.name = "ideal-22-3";
      id.lhs.push_back(
          {LinOp{{term(cdiff(0, 2), {2}), term(cx(3, cplx(-1)), {3})}}, op("M01")});
      id.lhs.push_back({LinOp{{term(cx(1, cplx(-1)), {1})}}, op("M12")});
      id.rhs.push_back(scaled(-a(0), "M12"));
      id.rhs.push_back(scaled(a(1), "M02"));
      id.rhs.push_back(scaled(-a(2), "M01"));
      ids.push_back(std::move(id));
    }
    return ids;
  }
  if (lambda == Partition({3, 1})) {
    {
      OperatorIdentity id;
      id.name = "ideal-31-1";
      id.lhs.push_back({LinOp{{term(cx(1), {2})}}, op("M02")});
      id.lhs.push_back(
          {LinOp{{term(cx(1, cplx(-1)), {1}), term(cx(2, cplx(-1)), {2})}}, op("M12")});
      id.rhs.push_back(scaled(-a(0), "M12"));
      id.rhs.push_back(scaled(a(1), "M02"));
      id.rhs.push_back(scaled(-a(2), "M01"));
      ids.push_back(std::move(id));
    }
    {
      OperatorIdentity id;
      id.name = "ideal-31-2";
      id.lhs.push_back({LinOp{{term(cdiff(0, 3), {3})}}, op("M12")});
      id.lhs.push_back({LinOp{{term(cx(1, cplx(-1)), {2})}}, op("M23")});
      id.rhs.push_back(scaled(-a(1), "M23"));
      id.rhs.push_back(scaled(a(2), "M13"));
      id.rhs.push_back(scaled(-a(3), "M12"));
      ids.push_back(std::move(id));
    }
    {
      OperatorIdentity id;
      id.name = "ideal-31-3";
      id.lhs.push_back({LinOp{{term(cdiff(0, 3), {3})}}, op("M02")});
      id.lhs.push_back(
          {LinOp{{term(cx(1, cplx(-1)), {1}), term(cx(2, cplx(-1)), {2})}}, op("M23")});
      id.rhs.push_back(scaled(-a(0), "M23"));
      id.rhs.push_back(scaled(a(2), "M03"));
      id.rhs.push_back(scaled(-a(3), "M02"));
      ids.push_back(std::move(id));
    }
    return ids;
  }
  throw std::invalid_argument("ideal identities are tabulated for (2,1,1), (2,2), (3,1) only");
}

double identity_residual(const OperatorIdentity& id,
                         const std::function<Jet(std::span<const Jet>)>& test_fn,
                         std::span<const cplx> x) {
  const int N = int(x.size());
  const JetShape shape{N, 3};
  std::vector<Jet> coords;
  coords.reserve(N);
  for (int p = 0; p < N; ++p) coords.push_back(Jet::variable(shape, p, x[p]));
  Jet f = test_fn(coords);
  auto side = [&](const std::vector<std::pair<LinOp, LinOp>>& ops) {
    cplx total(0);
    for (const auto& [prefix, inner] : ops)
      total += prefix.apply(inner.apply(f, coords), coords).value();
    return total;
  };
  return std::abs(side(id.lhs) - side(id.rhs));
}

}  // namespace gftoda
