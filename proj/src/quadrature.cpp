#include "gftoda/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gftoda {

namespace {

constexpr double kPi = 3.14159265358979323846;
// tanh-sinh abscissa range; at |tau| = 4.4 the endpoint gaps are ~1e-59,
// small enough for every integrand profile used here while reciprocal
// powers in jet coefficients stay finite.
constexpr double kTauMax = 4.4;

struct TsNode {
  double u, omu, weight;  // u, 1-u, du/dtau
};

// u(tau) = logistic(pi sinh tau), computed without cancellation at either end.
TsNode ts_node(double tau) {
  const double z = kPi * std::sinh(tau);
  const double e = std::exp(-std::abs(z));
  const double denom = 1.0 + e;
  TsNode n;
  if (z >= 0) {
    n.u = 1.0 / denom;
    n.omu = e / denom;
  } else {
    n.u = e / denom;
    n.omu = 1.0 / denom;
  }
  n.weight = kPi * std::cosh(tau) * n.u * n.omu;
  return n;
}

template <class V>
struct Acc;

template <>
struct Acc<cplx> {
  cplx sum{0};
  explicit Acc(const cplx&) {}
  void add(const cplx& v, double w) { sum += v * w; }
  static double scaled_diff(const cplx& a, const cplx& b, double tol_abs, double tol_rel) {
    return std::abs(a - b) / std::max(tol_abs, tol_rel * std::abs(a));
  }
  static double max_abs(const cplx& a) { return std::abs(a); }
};

template <>
struct Acc<Jet> {
  Jet sum;
  explicit Acc(const Jet& proto) : sum(proto.shape()) {}
  void add(const Jet& v, double w) {
    Jet t = v;
    t *= cplx(w);
    sum += t;
  }
  static double scaled_diff(const Jet& a, const Jet& b, double tol_abs, double tol_rel) {
    double worst = 0;
    auto ca = a.coeffs(), cb = b.coeffs();
    for (size_t i = 0; i < ca.size(); ++i) {
      const double d = std::abs(ca[i] - cb[i]);
      worst = std::max(worst, d / std::max(tol_abs, tol_rel * std::abs(ca[i])));
    }
    return worst;
  }
  static double max_abs(const Jet& a) { return a.max_abs(); }
};

template <class V, class F>
void integrate_piece_ts(const F& f, const Contour::Piece& piece, const QuadOptions& opt,
                        const V& proto, V& out, double& err_scaled, long& evals, bool& conv) {
  const double span = piece.t1 - piece.t0;
  auto eval_at = [&](double tau, Acc<V>& acc) {
    const TsNode n = ts_node(tau);
    EvalPoint p;
    p.u = n.u;
    p.one_minus_u = n.omu;
    p.t = piece.t0 + span * n.u;
    cplx dsdu;
    piece.map(n.u, p.s, dsdu);
    ++evals;
    acc.add(f(p) * dsdu, n.weight);
  };

  double h = 1.0;
  Acc<V> base{proto};
  const int jmax0 = int(kTauMax / h);
  for (int j = -jmax0; j <= jmax0; ++j) eval_at(j * h, base);
  V current = base.sum;
  current *= cplx(h);
  conv = false;
  err_scaled = 1e300;
  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    Acc<V> add{proto};
    const int jmax = int(kTauMax / h);
    for (int j = -jmax; j <= jmax; ++j) {
      if (j % 2 == 0) continue;  // even nodes inherited from the previous level
      eval_at(j * h, add);
    }
    V newsum = current;
    newsum *= cplx(0.5);
    V scaled_add = add.sum;
    scaled_add *= cplx(h);
    newsum += scaled_add;
    err_scaled = Acc<V>::scaled_diff(newsum, current, opt.tol_abs, opt.tol_rel);
    current = newsum;
    if (err_scaled <= 1.0 && level >= 3) {
      conv = true;
      break;
    }
  }
  out += current;
}

template <class V, class F>
void integrate_piece_trap(const F& f, const Contour::Piece& piece, const QuadOptions& opt,
                          const V& proto, V& out, double& err_scaled, long& evals, bool& conv) {
  const double span = piece.t1 - piece.t0;
  auto eval_at = [&](double u, Acc<V>& acc) {
    EvalPoint p;
    p.u = u;
    p.one_minus_u = 1 - u;
    p.t = piece.t0 + span * u;
    cplx dsdu;
    piece.map(u, p.s, dsdu);
    ++evals;
    acc.add(f(p) * dsdu, 1.0);
  };
  int n = 16;
  Acc<V> base{proto};
  for (int i = 0; i < n; ++i) eval_at(double(i) / n, base);
  V current = base.sum;
  current *= cplx(1.0 / n);
  conv = false;
  err_scaled = 1e300;
  for (int level = 1; level <= opt.max_level; ++level) {
    Acc<V> add{proto};
    for (int i = 0; i < n; ++i) eval_at((i + 0.5) / n, add);
    V newsum = current;
    newsum *= cplx(0.5);
    V scaled_add = add.sum;
    scaled_add *= cplx(0.5 / n);
    newsum += scaled_add;
    n *= 2;
    err_scaled = Acc<V>::scaled_diff(newsum, current, opt.tol_abs, opt.tol_rel);
    current = newsum;
    if (err_scaled <= 1.0 && level >= 2) {
      conv = true;
      break;
    }
  }
  out += current;
}

template <class V, class F>
QuadResult integrate_impl(const F& f, const Contour& contour, const QuadOptions& opt,
                          const V& proto, V& value_out) {
  QuadResult res;
  auto pieces = contour.pieces();
  V total = proto;
  double err_total = 0;
  bool all_conv = true;
  for (int pi = 0; pi < int(pieces.size()); ++pi) {
    double err = 0;
    bool conv = true;
    auto fp = [&](const EvalPoint& p0) {
      EvalPoint p = p0;
      p.piece = pi;
      return f(p);
    };
    if (pieces[pi].periodic)
      integrate_piece_trap<V>(fp, pieces[pi], opt, proto, total, err, res.evaluations, conv);
    else
      integrate_piece_ts<V>(fp, pieces[pi], opt, proto, total, err, res.evaluations, conv);
    err_total = std::max(err_total, err);
    all_conv = all_conv && conv;
  }
  if (contour.truncated_open()) {
    for (double tend : {0.0, 1.0}) {
      EvalPoint p;
      p.t = tend;
      p.u = tend == 0.0 ? 0.0 : 1.0;
      p.one_minus_u = 1 - p.u;
      p.piece = tend == 0.0 ? 0 : int(pieces.size()) - 1;
      cplx dsdt;
      contour.at(tend, p.s, dsdt);
      res.endpoint_decay = std::max(res.endpoint_decay, Acc<V>::max_abs(f(p)));
    }
  }
  res.converged = all_conv;
  res.abs_error_estimate =
      err_total >= 1e300 ? 1e300 : err_total * std::max(opt.tol_abs, opt.tol_rel * Acc<V>::max_abs(total));
  value_out = total;
  return res;
}

}  // namespace

QuadResult integrate(const std::function<cplx(const EvalPoint&)>& f, const Contour& contour,
                     const QuadOptions& opt) {
  cplx value(0);
  cplx proto(0);
  QuadResult r = integrate_impl<cplx>(f, contour, opt, proto, value);
  r.value = value;
  return r;
}

QuadResult integrate(const std::function<cplx(cplx)>& f, const Contour& contour,
                     const QuadOptions& opt) {
  return integrate([&f](const EvalPoint& p) { return f(p.s); }, contour, opt);
}

Jet integrate_jet(const std::function<Jet(const EvalPoint&)>& f, const Contour& contour,
                  JetShape shape, const QuadOptions& opt, QuadResult* info) {
  Jet proto(shape);
  Jet value(shape);
  QuadResult r = integrate_impl<Jet>(f, contour, opt, proto, value);
  r.value = value.value();
  if (info) *info = r;
  return value;
}

}  // namespace gftoda
