#include "gftoda/chars.hpp"

#include <cmath>
#include <stdexcept>

#include "gftoda/series.hpp"

namespace gftoda {

Partition::Partition(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("partition: no blocks");
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i] <= 0) throw std::invalid_argument("partition: nonpositive block");
    if (i > 0 && blocks_[i] > blocks_[i - 1])
      throw std::invalid_argument("partition: blocks must be non-increasing");
  }
  offsets_.resize(blocks_.size());
  for (size_t i = 0; i < blocks_.size(); ++i) {
    offsets_[i] = total_;
    total_ += blocks_[i];
  }
  if (total_ <= 2) throw std::invalid_argument("partition: N must exceed 2");
}

namespace {
bool near_integer(cplx v) {
  return std::abs(v.imag()) < 1e-12 && std::abs(v.real() - std::round(v.real())) < 1e-12;
}
}  // namespace

AlphaParams::AlphaParams(Partition lambda, std::vector<std::vector<cplx>> blocks)
    : lambda_(std::move(lambda)), blocks_(std::move(blocks)) {
  if (int(blocks_.size()) != lambda_.num_blocks())
    throw std::invalid_argument("alpha: block count mismatch");
  cplx sum0(0);
  for (int i = 0; i < lambda_.num_blocks(); ++i) {
    if (int(blocks_[i].size()) != lambda_.block_size(i))
      throw std::invalid_argument("alpha: block length mismatch");
    sum0 += blocks_[i][0];
    const cplx a_last = blocks_[i].back();
    if (lambda_.block_size(i) >= 2) {
      if (std::abs(a_last) < 1e-12)
        warnings_.push_back("alpha: block " + std::to_string(i + 1) +
                            " has vanishing top entry");
    } else if (near_integer(a_last)) {
      warnings_.push_back("alpha: block " + std::to_string(i + 1) +
                          " exponent is an integer");
    }
  }
  if (std::abs(sum0 + cplx(2)) > 1e-9)
    throw std::invalid_argument("alpha: leading entries must sum to -2");
}

cplx AlphaParams::flat(int p) const {
  for (int i = 0; i < lambda_.num_blocks(); ++i) {
    int off = lambda_.block_offset(i);
    if (p < off + lambda_.block_size(i)) return blocks_[i][p - off];
  }
  throw std::out_of_range("alpha: flat index out of range");
}

AlphaParams AlphaParams::shifted(int i, int j, int m) const {
  auto b = blocks_;
  b.at(i)[0] += double(m);
  b.at(j)[0] -= double(m);
  return AlphaParams(lambda_, std::move(b));
}

JordanElement jordan_mul(const JordanElement& a, const JordanElement& b) {
  if (a.size() != b.size()) throw std::invalid_argument("jordan: size mismatch");
  return {series_mul(a.coeffs, b.coeffs)};
}

JordanElement jordan_inv(const JordanElement& a) { return {series_inv(a.coeffs)}; }

std::vector<cplx> theta_coeffs(const std::vector<cplx>& h) {
  if (h.empty() || h[0] == cplx(0))
    throw std::domain_error("theta: vanishing leading coefficient");
  auto th = series_log_tail(h);
  th[0] = std::log(h[0]);
  return th;
}

std::vector<cplx> psi_coeffs(const std::vector<cplx>& y) { return series_inv(y); }

cplx char_eval(const std::vector<JordanElement>& h, const AlphaParams& alpha) {
  const Partition& lam = alpha.partition();
  if (int(h.size()) != lam.num_blocks())
    throw std::invalid_argument("char: block count mismatch");
  cplx log_total(0);
  for (int i = 0; i < lam.num_blocks(); ++i) {
    const auto& blk = h[i].coeffs;
    if (int(blk.size()) != lam.block_size(i))
      throw std::invalid_argument("char: block size mismatch");
    if (blk[0] == cplx(0)) throw std::domain_error("char: singular block");
    log_total += alpha.at(i, 0) * std::log(blk[0]);
    if (blk.size() > 1) {
      auto th = series_log_tail(blk);
      for (size_t k = 1; k < blk.size(); ++k) log_total += alpha.at(i, int(k)) * th[k];
    }
  }
  return std::exp(log_total);
}

Jet char_eval_jet(const std::vector<std::vector<Jet>>& h, const AlphaParams& alpha) {
  const Partition& lam = alpha.partition();
  if (int(h.size()) != lam.num_blocks())
    throw std::invalid_argument("char: block count mismatch");
  const JetShape shape = h.at(0).at(0).shape();
  Jet log_total(shape);
  for (int i = 0; i < lam.num_blocks(); ++i) {
    const auto& blk = h[i];
    if (int(blk.size()) != lam.block_size(i))
      throw std::invalid_argument("char: block size mismatch");
    log_total += blk[0].log() * alpha.at(i, 0);
    if (blk.size() > 1) {
      auto th = series_log_tail(blk);
      for (size_t k = 1; k < blk.size(); ++k) log_total += th[k] * alpha.at(i, int(k));
    }
  }
  return log_total.exp();
}

}  // namespace gftoda
