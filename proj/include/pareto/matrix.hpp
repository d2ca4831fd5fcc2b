#pragma once

#include "pareto/pareto.hpp"

namespace pareto {

/// Full thin SVD, A = W diag(s) U^T with s sorted descending.
struct SvdResult {
  Mat W;
  Vec s;
  Mat U;
  int sweeps = 0;
};

/// One-sided Jacobi (Hestenes) on the columns of A or A^T.
SvdResult jacobi_svd(const Mat &A);

/// Positive singular values grouped into multiplicity classes.
struct SvGroups {
  std::vector<double> lambdas; // strictly decreasing, > 0
  std::vector<int> mults;
  Mat W; // left vectors, one column per counted singular value
  Mat U; // right vectors
  int rank() const { return static_cast<int>(W.cols()); }
};

SvGroups svd(const Mat &A, double tol = 1e-8);

Mat to_mat(const Vec &v, int rows, int cols); // row-major flattening
Vec to_vec(const Mat &M);

class NuclearSpectralPair : public NormPair {
public:
  NuclearSpectralPair(int rows, int cols) : m_(rows), n_(cols) {}
  std::string name() const override { return "matrix"; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;
  int rows() const { return m_; }
  int cols() const { return n_; }

private:
  Mat shape(const Vec &v) const;
  int m_, n_;
};

PairPtr nuclear_spectral_pair(int rows, int cols);

double nuclear_norm(const Mat &A);
double spectral_norm(const Mat &A);

/// B = W_r U_r^T: <A,B> = |A|_* and |B|_sigma = 1.
Mat sigma_dual_witness(const Mat &A);

Decomposition sv_soft_threshold(const Mat &C, double y);
Mat sv_hard_threshold(const Mat &C, double y);
SlopeDecomposition matrix_slope_decomposition(const Mat &C,
                                              double tol = 1e-8);
ParetoCurve matrix_frontier(const Mat &C);
SVRegion matrix_sv_region(const Mat &C);

} // namespace pareto
