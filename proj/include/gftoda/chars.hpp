#pragma once

// Partitions, character parameters, and the characters chi_n / chi of the
// (universal cover of the) maximal abelian subgroup H_lambda in GL(N).

#include <string>
#include <vector>

#include "gftoda/jet.hpp"

namespace gftoda {

class Partition {
 public:
  explicit Partition(std::vector<int> blocks);
  int num_blocks() const { return int(blocks_.size()); }
  int block_size(int i) const { return blocks_.at(i); }
  int total() const { return total_; }
  int block_offset(int i) const { return offsets_.at(i); }  // flat index of (i, 0)
  int flat_index(int block, int k) const { return offsets_.at(block) + k; }
  const std::vector<int>& blocks() const { return blocks_; }
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int total_ = 0;
};

// Character exponents alpha = (alpha^(1), ..., alpha^(l)); the sum condition
// sum_i alpha_0^(i) = -2 is enforced at construction.  The per-block
// conditions on the last entries (nonzero resp. non-integer) are collected
// as warnings: some classical parameter values violate them while the
// integral still converges.
class AlphaParams {
 public:
  AlphaParams(Partition lambda, std::vector<std::vector<cplx>> blocks);

  const Partition& partition() const { return lambda_; }
  const std::vector<cplx>& block(int i) const { return blocks_.at(i); }
  cplx at(int block, int k) const { return blocks_.at(block).at(k); }
  cplx flat(int p) const;
  cplx last(int block) const { return blocks_.at(block).back(); }

  // alpha_0^(i) += m, alpha_0^(j) -= m, everything else unchanged.
  AlphaParams shifted(int i, int j, int m) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Partition lambda_;
  std::vector<std::vector<cplx>> blocks_;
  std::vector<std::string> warnings_;
};

// Invertible Jordan-block group element h = sum_k h_k Lambda^k in J(n).
struct JordanElement {
  std::vector<cplx> coeffs;  // (h_0, ..., h_{n-1}), h_0 != 0
  int size() const { return int(coeffs.size()); }
};

JordanElement jordan_mul(const JordanElement& a, const JordanElement& b);
JordanElement jordan_inv(const JordanElement& a);

// theta_k: coefficients of log(h_0 + h_1 T + ...) truncated at order n-1;
// theta_0 = Log h_0 (principal branch).
std::vector<cplx> theta_coeffs(const std::vector<cplx>& h);

// psi_k: coefficients of (y_0 + y_1 T + ...)^{-1} truncated at order n-1.
std::vector<cplx> psi_coeffs(const std::vector<cplx>& y);

// chi(h; alpha) = prod_i h_0^{alpha_0} exp(sum_{k>=1} alpha_k theta_k),
// principal branches on the h_0 factors.
cplx char_eval(const std::vector<JordanElement>& h, const AlphaParams& alpha);

// Same formula with jet-valued block coefficients (one vector of jets per
// block); principal branch applied to the constant terms.
Jet char_eval_jet(const std::vector<std::vector<Jet>>& h, const AlphaParams& alpha);

}  // namespace gftoda
