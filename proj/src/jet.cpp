#include "gftoda/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace gftoda {

namespace {

void check_shape(JetShape s) {
  if (s.nvars < 1 || s.nvars > MultiIndex::kMaxVars)
    throw std::invalid_argument("jet shape: nvars out of range");
  if (s.order < 0 || s.order > 255) throw std::invalid_argument("jet shape: bad order");
}

// Registry of shape tables; read-mostly, guarded by a mutex on insert.
std::mutex g_table_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const ShapeTable>>& table_registry() {
  static std::map<std::pair<int, int>, std::shared_ptr<const ShapeTable>> reg;
  return reg;
}

void enumerate(int nvars, int order, int var, MultiIndex& cur, int used,
               std::vector<MultiIndex>& out) {
  if (var == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e + used <= order; ++e) {
    cur.e[var] = std::uint8_t(e);
    enumerate(nvars, order, var + 1, cur, used + e, out);
  }
  cur.e[var] = 0;
}

}  // namespace

void ShapeTable::build() {
  // Graded lexicographic: enumerate all, then stable-sort by degree.
  MultiIndex cur{};
  enumerate(shape.nvars, shape.order, 0, cur, 0, monomials);
  std::stable_sort(monomials.begin(), monomials.end(),
                   [&](const MultiIndex& a, const MultiIndex& b) {
                     return a.deg(shape.nvars) < b.deg(shape.nvars);
                   });
  degree_begin.assign(shape.order + 2, 0);
  for (int d = 0, i = 0; d <= shape.order + 1; ++d) {
    while (i < int(monomials.size()) && monomials[i].deg(shape.nvars) < d) ++i;
    degree_begin[d] = i;
  }
  rank_map_.reserve(monomials.size());
  for (int i = 0; i < int(monomials.size()); ++i)
    rank_map_.push_back({monomials[i].packed(), i});
  std::sort(rank_map_.begin(), rank_map_.end());

  decomp.resize(monomials.size());
  for (int i = 0; i < int(monomials.size()); ++i) {
    const int di = monomials[i].deg(shape.nvars);
    for (int j = 0; j < int(monomials.size()); ++j) {
      if (di + monomials[j].deg(shape.nvars) > shape.order) break;
      MultiIndex sum;
      for (int v = 0; v < shape.nvars; ++v)
        sum.e[v] = std::uint8_t(monomials[i].e[v] + monomials[j].e[v]);
      int t = rank(sum);
      if (t >= 0) decomp[t].push_back({i, j});
    }
  }
  // Fixed evaluation order inside each target.
  for (auto& v : decomp) std::sort(v.begin(), v.end());
}

int ShapeTable::rank(const MultiIndex& m) const {
  auto it = std::lower_bound(rank_map_.begin(), rank_map_.end(),
                             std::pair<std::uint64_t, int>{m.packed(), -1});
  if (it == rank_map_.end() || it->first != m.packed()) return -1;
  return it->second;
}

std::shared_ptr<const ShapeTable> ShapeTable::get(JetShape shape) {
  check_shape(shape);
  std::lock_guard<std::mutex> lock(g_table_mutex);
  auto& reg = table_registry();
  auto key = std::make_pair(shape.nvars, shape.order);
  auto it = reg.find(key);
  if (it != reg.end()) return it->second;
  auto tab = std::make_shared<ShapeTable>();
  tab->shape = shape;
  tab->build();
  reg[key] = tab;
  return tab;
}

Jet::Jet(JetShape shape) : shape_(shape), tab_(ShapeTable::get(shape)) {
  c_.assign(tab_->size(), cplx(0));
}

Jet Jet::constant(JetShape shape, cplx value) {
  Jet j(shape);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(JetShape shape, int var, cplx value) {
  if (var < 0 || var >= shape.nvars)
    throw std::invalid_argument("jet variable index out of range");
  Jet j(shape);
  j.c_[0] = value;
  if (shape.order >= 1) {
    MultiIndex m;
    m.e[var] = 1;
    j.c_[j.tab_->rank(m)] = cplx(1);
  }
  return j;
}

cplx Jet::coeff(const MultiIndex& m) const {
  int r = tab_->rank(m);
  if (r < 0) throw std::out_of_range("multi-index beyond truncation order");
  return c_[r];
}

void Jet::set_coeff(const MultiIndex& m, cplx v) {
  int r = tab_->rank(m);
  if (r < 0) throw std::out_of_range("multi-index beyond truncation order");
  c_[r] = v;
}

cplx Jet::partial(const MultiIndex& m) const {
  int r = tab_->rank(m);
  if (r < 0) throw std::out_of_range("multi-index beyond truncation order");
  double fact = 1;
  for (int v = 0; v < shape_.nvars; ++v)
    for (int k = 2; k <= m.e[v]; ++k) fact *= k;
  return c_[r] * fact;
}

void Jet::require_same_shape(const Jet& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("jet shape mismatch");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  require_same_shape(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_same_shape(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator+=(cplx v) {
  c_[0] += v;
  return *this;
}
Jet& Jet::operator-=(cplx v) {
  c_[0] -= v;
  return *this;
}
Jet& Jet::operator*=(cplx v) {
  for (auto& x : c_) x *= v;
  return *this;
}
Jet& Jet::operator/=(cplx v) {
  for (auto& x : c_) x /= v;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_same_shape(b);
  Jet r(a.shape_);
  const auto& tab = *a.tab_;
  for (int t = 0; t < tab.size(); ++t) {
    cplx s(0);
    for (auto [i, j] : tab.decomp[t]) s += a.c_[i] * b.c_[j];
    r.c_[t] = s;
  }
  return r;
}

Jet Jet::inverse() const {
  if (c_[0] == cplx(0))
    throw std::domain_error("jet inverse: zero constant term");
  Jet r(shape_);
  const cplx inv0 = cplx(1) / c_[0];
  r.c_[0] = inv0;
  // By increasing degree: c0*r_t = -sum_{i!=0} a_i r_j  over i+j = t.
  for (int t = 1; t < tab_->size(); ++t) {
    cplx s(0);
    for (auto [i, j] : tab_->decomp[t])
      if (i != 0 && j < t) s += c_[i] * r.c_[j];
    r.c_[t] = -inv0 * s;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }

Jet Jet::derive(int var) const {
  if (var < 0 || var >= shape_.nvars)
    throw std::invalid_argument("derive: variable out of range");
  if (shape_.order == 0)
    throw std::invalid_argument("derive: order 0 jet has no derivative jet");
  Jet r(JetShape{shape_.nvars, shape_.order - 1});
  for (int t = 0; t < r.tab_->size(); ++t) {
    MultiIndex m = r.tab_->monomials[t];
    MultiIndex up = m;
    up.e[var] = std::uint8_t(up.e[var] + 1);
    r.c_[t] = c_[tab_->rank(up)] * double(up.e[var]);
  }
  return r;
}

Jet Jet::truncate(int new_order) const {
  if (new_order > shape_.order) throw std::invalid_argument("truncate: order grows");
  if (new_order == shape_.order) return *this;
  Jet r(JetShape{shape_.nvars, new_order});
  std::copy(c_.begin(), c_.begin() + r.size(), r.c_.begin());
  return r;
}

Jet Jet::extend(int new_order) const {
  if (new_order < shape_.order) throw std::invalid_argument("extend: order shrinks");
  if (new_order == shape_.order) return *this;
  Jet r(JetShape{shape_.nvars, new_order});
  std::copy(c_.begin(), c_.end(), r.c_.begin());
  return r;
}

Jet Jet::exp() const {
  Jet tail = *this;
  tail.c_[0] = 0;
  Jet result = Jet::constant(shape_, cplx(1));
  Jet power = Jet::constant(shape_, cplx(1));
  double fact = 1;
  for (int k = 1; k <= shape_.order; ++k) {
    power = power * tail;
    fact *= k;
    Jet term = power;
    term /= fact;
    result += term;
  }
  result *= std::exp(c_[0]);
  return result;
}

Jet Jet::log_with_base(cplx log_c0) const {
  if (c_[0] == cplx(0)) throw std::domain_error("jet log: zero constant term");
  Jet u = *this;
  u /= c_[0];
  u.c_[0] = 0;  // u = a/a0 - 1, nilpotent
  Jet result = Jet::constant(shape_, log_c0);
  Jet power = Jet::constant(shape_, cplx(1));
  double sign = 1;
  for (int k = 1; k <= shape_.order; ++k) {
    power = power * u;
    Jet term = power;
    term /= cplx(sign * k);
    result += term;
    sign = -sign;
  }
  return result;
}

Jet Jet::log() const { return log_with_base(std::log(c_[0])); }

Jet Jet::pow(cplx mu) const { return pow_with_base(mu, std::log(c_[0])); }

Jet Jet::pow_with_base(cplx mu, cplx log_c0) const {
  Jet l = log_with_base(log_c0);
  l *= mu;
  return l.exp();
}

double Jet::max_abs() const {
  double m = 0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

Jet jet_compose(const Jet& outer, std::span<const Jet> inners) {
  if (int(inners.size()) != outer.nvars())
    throw std::invalid_argument("compose: inner count mismatch");
  const JetShape base = inners[0].shape();
  for (const auto& j : inners)
    if (!(j.shape() == base)) throw std::invalid_argument("compose: inner shape mismatch");

  // Powers of the fluctuation part of each inner jet.
  std::vector<std::vector<Jet>> pw(inners.size());
  for (size_t v = 0; v < inners.size(); ++v) {
    Jet delta = inners[v];
    delta -= inners[v].value();
    pw[v].push_back(Jet::constant(base, cplx(1)));
    for (int e = 1; e <= outer.order(); ++e) pw[v].push_back(pw[v].back() * delta);
  }
  Jet result(base);
  const auto& tab = outer.table();
  for (int t = 0; t < tab.size(); ++t) {
    cplx c = outer.coeffs()[t];
    if (c == cplx(0)) continue;
    Jet mono = Jet::constant(base, cplx(1));
    bool first = true;
    for (int v = 0; v < outer.nvars(); ++v) {
      int e = tab.monomials[t].e[v];
      if (e == 0) continue;
      mono = first ? pw[v][e] : mono * pw[v][e];
      first = false;
    }
    mono *= c;
    result += mono;
  }
  return result;
}

}  // namespace gftoda
