#pragma once

// Hyperbolic operator algebra: invariants, the two Laplace transforms,
// gauge conjugation and normalization, normal-form sequence iteration via
// jets, the closed-form families, the reduced second-order systems on the
// GM(2,4) slices, and operator-identity checks.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "gftoda/chars.hpp"
#include "gftoda/jet.hpp"

namespace gftoda {

struct FieldPoint {
  cplx x, y;
};

// Coefficient field a(x, y): a rule producing the 2-variable jet of any
// requested order at a point (variable 0 is x, variable 1 is y).
class ScalarField {
 public:
  using Rule = std::function<Jet(FieldPoint, int)>;
  ScalarField() : ScalarField(zero_rule()) {}
  explicit ScalarField(Rule rule) : rule_(std::move(rule)) {}

  Jet eval(FieldPoint p, int order) const { return rule_(p, order); }
  cplx value(FieldPoint p) const { return rule_(p, 0).value(); }

  static ScalarField constant(cplx v);
  static ScalarField coord_x();
  static ScalarField coord_y();

 private:
  static Rule zero_rule();
  Rule rule_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator*(cplx v, const ScalarField& a);
ScalarField field_dx(const ScalarField& a);
ScalarField field_dy(const ScalarField& a);
ScalarField field_log(const ScalarField& a);

// M = dx dy + a dx + b dy + c.  When the x-antiderivative of b is known in
// closed form it rides along and enables normalization.
struct HyperOp {
  ScalarField a, b, c;
  std::optional<ScalarField> b_antideriv;  // F with dF/dx = -b
};

// invariants h = a_x + a b - c, k = b_y + a b - c as jets at a point
struct InvariantJets {
  Jet h, k;
};
InvariantJets invariants(const HyperOp& M, FieldPoint pt, int order);

// f^{-1} M f with F = log f
HyperOp conjugate(const HyperOp& M, const ScalarField& F);

HyperOp laplace_up(const HyperOp& M);    // change of unknown u -> (dy + a) u
HyperOp laplace_down(const HyperOp& M);  // change of unknown u -> (dx + b) u

struct Normalized {
  HyperOp op;  // b == 0
  ScalarField gauge_log;
};
Normalized normalize(const HyperOp& M);  // needs M.b_antideriv

// apply M to a test function given as a jet at the point (order drops by 2)
Jet hyperop_apply(const HyperOp& M, const Jet& u, FieldPoint pt);

// Laplace sequence of normal-form operators M_n = dx dy + a_n dx + c_n.
// Each step up or down consumes two jet orders; requests beyond the
// configured budget are rejected.
class NormalSeq {
 public:
  NormalSeq(ScalarField a0, ScalarField c0, int base_order = 12);
  struct Entry {
    Jet a, c;
  };
  Entry entry(int n, FieldPoint pt, int order) const;
  int base_order() const { return base_order_; }

 private:
  ScalarField a0_, c0_;
  int base_order_;
};

// |dx dy log r_n - (r_{n+1} - 2 r_n + r_{n-1})| with r_n = c_n
double toda_te_residual(const NormalSeq& seq, int n, FieldPoint pt);
// residual of the pair recurrences dx s_{n+1} = r_n - r_{n+1},
// dy log r_n = s_n - s_{n+1} with s_{n+1} = a_n
double toda_pair_residual(const NormalSeq& seq, int n, FieldPoint pt);

// Closed-form Laplace sequences of section-7 type; m0 is the originating
// (not yet normal) hyperbolic operator carrying its gauge antiderivative.
struct ClosedFamily {
  std::string name;
  std::function<ScalarField(int)> a_m, c_m;  // normal-form coefficients
  HyperOp m0;
};
ClosedFamily epd_family(cplx alpha, cplx beta);
ClosedFamily confluent_family(cplx alpha, cplx beta, cplx u);
ClosedFamily doubly_confluent_family(cplx alpha, cplx beta, cplx u, cplx v);
const std::vector<std::string>& closed_family_names();
ClosedFamily closed_family_by_name(const std::string& name, cplx alpha, cplx beta);

// ---------------------------------------------------------------------------
// Linear differential operators on slice coordinates (flat indexing)

struct LinOp {
  struct Term {
    std::function<Jet(std::span<const Jet>)> coeff;  // of coordinate jets
    std::vector<int> derivs;                         // flat coordinates, iterated
  };
  std::vector<Term> terms;

  int max_order() const;
  // apply to a test function jet (variables = flat coordinates)
  Jet apply(const Jet& f, std::span<const Jet> coord_jets) const;
  // apply to a function known through its partials at a point
  cplx apply_partials(const std::map<std::vector<int>, cplx>& partials,
                      std::span<const cplx> x) const;
  std::vector<std::vector<int>> needed_indices(int ncoords) const;
};

struct NamedOp {
  std::string name;
  LinOp op;
};

// Tabulated second-order operators annihilating the slice HGF; lambda
// must be one of (2,1,1), (2,2), (3,1).
std::vector<NamedOp> reduced_system(const Partition& lambda, const AlphaParams& alpha);

// M-tilde^(i,j) = (x0i - x0j) Di Dj + a_j Di - a_i Dj on flat coordinates
LinOp slice_mtilde(const Partition& lambda, const AlphaParams& alpha, int i, int j);
// M_m^(i,j), the hyperbolic operator of the shifted parameters
LinOp slice_hyperbolic(const Partition& lambda, const AlphaParams& alpha, int i, int j, int m);
// contiguity operator (x0i - x0j) D_{n_j-1}^(j) + alpha_{n_j-1}^(j)
LinOp slice_contiguity(const Partition& lambda, const AlphaParams& alpha, int i, int j);
// scale every term of an operator
LinOp linop_scale(cplx v, const LinOp& op);

// Operator identity: both sides are sums of compositions prefix . inner;
// zeroth-order prefixes act as multiplication operators.  Residuals are
// evaluated on test functions via jets.
struct OperatorIdentity {
  std::string name;
  std::vector<std::pair<LinOp, LinOp>> lhs;
  std::vector<std::pair<LinOp, LinOp>> rhs;
};

// composition identity of the two contiguity operators against M-tilde
OperatorIdentity contiguity_composition_identity(const Partition& lambda,
                                                 const AlphaParams& alpha, int i, int j);
// ideal-generator identities of the tabulated systems
std::vector<OperatorIdentity> ideal_identities(const Partition& lambda,
                                               const AlphaParams& alpha);

double identity_residual(const OperatorIdentity& id,
                         const std::function<Jet(std::span<const Jet>)>& test_fn,
                         std::span<const cplx> x);

}  // namespace gftoda
