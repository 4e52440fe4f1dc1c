#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace gftoda {

using cplx = std::complex<double>;

// Exponent vector of a monomial, at most kMaxVars variables.
struct MultiIndex {
  static constexpr int kMaxVars = 8;
  std::array<std::uint8_t, kMaxVars> e{};
  int deg(int nvars) const {
    int d = 0;
    for (int i = 0; i < nvars; ++i) d += e[i];
    return d;
  }
  std::uint64_t packed() const {
    std::uint64_t k = 0;
    for (int i = 0; i < kMaxVars; ++i) k |= std::uint64_t(e[i]) << (8 * i);
    return k;
  }
};

struct JetShape {
  int nvars = 1;
  int order = 0;
  bool operator==(const JetShape&) const = default;
};

// Precomputed combinatorics for one shape: graded-lex monomial list,
// rank lookup, and per-target decompositions m = m' + m'' used by
// truncated convolution.  Built once, immutable, shared across jets.
class ShapeTable {
 public:
  static std::shared_ptr<const ShapeTable> get(JetShape shape);

  JetShape shape;
  std::vector<MultiIndex> monomials;                 // graded lex order
  std::vector<int> degree_begin;                     // offset of first index of each degree
  std::vector<std::vector<std::pair<int, int>>> decomp;  // per target: (i,j) pairs, i over all, j over all
  int size() const { return int(monomials.size()); }
  int rank(const MultiIndex& m) const;               // -1 if |m| > order or out of range

 private:
  void build();
  std::vector<std::pair<std::uint64_t, int>> rank_map_;  // sorted by key
};

// Truncated multivariate Taylor expansion over complex doubles.
// Coefficient semantics: c_m = (d^m f / m!) at the expansion point.
class Jet {
 public:
  Jet() = default;
  explicit Jet(JetShape shape);  // zero jet

  static Jet constant(JetShape shape, cplx value);
  // Jet of the coordinate function x_var at the point `value`.
  static Jet variable(JetShape shape, int var, cplx value);

  JetShape shape() const { return shape_; }
  int order() const { return shape_.order; }
  int nvars() const { return shape_.nvars; }
  int size() const { return int(c_.size()); }

  cplx value() const { return c_.empty() ? cplx(0) : c_[0]; }
  cplx coeff(const MultiIndex& m) const;
  void set_coeff(const MultiIndex& m, cplx v);
  std::span<const cplx> coeffs() const { return c_; }
  std::span<cplx> coeffs() { return c_; }

  // m! * c_m, i.e. the partial derivative d^m f.
  cplx partial(const MultiIndex& m) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(cplx v);
  Jet& operator-=(cplx v);
  Jet& operator*=(cplx v);
  Jet& operator/=(cplx v);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, cplx b) { return a += b; }
  friend Jet operator-(Jet a, cplx b) { return a -= b; }
  friend Jet operator+(cplx b, Jet a) { return a += b; }
  friend Jet operator*(Jet a, cplx b) { return a *= b; }
  friend Jet operator*(cplx b, Jet a) { return a *= b; }
  friend Jet operator/(Jet a, cplx b) { return a /= b; }
  friend Jet operator-(cplx b, const Jet& a) { return (-a) += b; }

  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  Jet inverse() const;        // requires nonzero constant term
  Jet derive(int var) const;  // shape order decreases by one
  Jet truncate(int new_order) const;
  Jet extend(int new_order) const;  // pad with zero coefficients

  Jet exp() const;
  Jet log() const;                       // principal branch on constant term
  Jet log_with_base(cplx log_c0) const;  // caller supplies log of constant term
  Jet pow(cplx mu) const;
  Jet pow_with_base(cplx mu, cplx log_c0) const;

  double max_abs() const;

  const ShapeTable& table() const { return *tab_; }

 private:
  void require_same_shape(const Jet& o) const;
  JetShape shape_{};
  std::vector<cplx> c_;
  std::shared_ptr<const ShapeTable> tab_;
};

// Substitute inner jets (one per outer variable) into the polynomial given
// by `outer`; the inner constant terms are taken as the expansion point of
// `outer`, so only the fluctuation parts are substituted.
Jet jet_compose(const Jet& outer, std::span<const Jet> inners);

}  // namespace gftoda
