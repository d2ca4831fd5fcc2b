#pragma once

#include "pareto/pareto.hpp"

#include <cstdint>
#include <utility>

namespace pareto {

/// Dense real tensor, last index fastest.
struct Tensor {
  std::vector<int> dims;
  Vec data;

  Tensor() = default;
  explicit Tensor(std::vector<int> d);
  Tensor(std::vector<int> d, Vec entries);

  int order() const { return int(dims.size()); }
  Eigen::Index size() const { return data.size(); }
  Eigen::Index offset(const std::vector<int> &idx) const;
  double &at(const std::vector<int> &idx) { return data[offset(idx)]; }
  double at(const std::vector<int> &idx) const { return data[offset(idx)]; }
};

Tensor outer(const std::vector<Vec> &factors);
double tensor_inner(const Tensor &a, const Tensor &b);
/// T contracted with every factor except mode k.
Vec contract_except(const Tensor &T, const std::vector<Vec> &u, int k);
/// Mode-k unfolding, dims[k] x (size / dims[k]).
Mat unfold(const Tensor &T, int k);

/// PARETO_SEED from the environment, or a fixed default.
std::uint64_t pareto_seed();

struct SpectralResult {
  double value = 0;
  std::vector<Vec> factors; // unit vectors, <T, outer(factors)> = value
  int start = -1;           // winning start, -1 for the exact 2x2x2 search
};

SpectralResult tensor_spectral_norm(const Tensor &T, int starts = 64,
                                    int iters = 200,
                                    std::uint64_t seed = pareto_seed());

/// e2 e1 e1 + e1 e2 e1 + e1 e1 e2 + t e2 e2 e2 in R^2 x R^2 x R^2.
Tensor f_t(double t);

struct FtNorms {
  double sigma = 0;
  double nuclear = 0;
  double euclid = 0;
};
FtNorms ft_norms(double t);
/// Rank-2 decomposition value for t > 0 and the dual certificate s.
double ft_rank2_value(double t);
double ft_certificate_s(double t);

/// Sub-frontier of f_0, sampled on both closed-form pieces.
ParetoCurve ft_subfrontier(int samples_per_piece = 256);

struct KnownTensor {
  std::string name;
  Tensor T;
  double sigma = 0;
  double nuclear = 0;
};
KnownTensor matmul_tensor(int p, int q, int r);
KnownTensor det_tensor(int n);
KnownTensor perm_tensor(int n);
std::vector<KnownTensor> known_tensors();

/// Diagonal SVD: sum of lambda_i times simple unit tensors (given by
/// factors), lambdas non-increasing.
struct Dsvd {
  std::vector<double> lambdas;
  std::vector<std::vector<Vec>> factors;
};
SlopeDecomposition dsvd_to_slope(const Dsvd &d, double tol = 1e-9);

/// x(y) = sum m_d d^3 max(sqrt(n/d) - y, 0) for a group of order n with
/// m_d irreducible representations of dimension d.
ParetoCurve group_algebra_frontier(const std::vector<std::pair<int, int>> &dm);
SVRegion group_algebra_region(const std::vector<std::pair<int, int>> &dm);

struct OrthoCheck {
  double max_found = 0;
  bool pass = false;
  std::vector<Vec> witness;
};
/// Maximizes sum_i |<v_i, w>|^(2/t) over simple unit w.
OrthoCheck t_orthogonality_check(const std::vector<std::vector<Vec>> &vs,
                                 double t, int starts = 64,
                                 std::uint64_t seed = pareto_seed());

} // namespace pareto
