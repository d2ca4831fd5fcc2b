#pragma once

#include "pareto/pareto.hpp"

#include <functional>

namespace pareto {

struct LinearMap {
  std::function<Vec(const Vec &)> apply;   // R^in -> R^out
  std::function<Vec(const Vec &)> adjoint; // R^out -> R^in
  int in_dim = 0;
  int out_dim = 0;

  static LinearMap from_matrix(const Mat &A);
  Mat dense() const; // out x in
  /// max |<Dv,w> - <v,D*w>| over seeded random unit v, w.
  double adjoint_mismatch(int trials = 8) const;
};

/// Power iteration on D*D from a fixed seed; a lower estimate of |D|_2.
double op_norm_estimate(const LinearMap &D, int iters = 20);

struct IstaOptions {
  double delta = 0.999;
  int max_iter = 100000;
  bool throw_on_cap = true;
};

struct IstaResult {
  Vec a;   // D e
  Vec e;   // preimage with |e|_Xbar <= x
  int iterations = 0;
  double lhs = 0; // <De, c - De>
  double rhs = 0; // delta |e|_Xbar |D*(c - De)|_Ybar
  bool certified = false;
  bool inside = false; // c reached, residual ~ 0
};

/// proj_X(c, x) for the quotient norm of `base` under D. D is rescaled
/// internally so its singular values lie below 1/sqrt(2).
IstaResult ista_proj(const LinearMap &D, const NormPair &base, const Vec &c,
                     double x, const IstaOptions &opt = {});

/// |c|_X = min{|v|_Xbar : Dv = c}, |c|_Y = |D* c|_Ybar.
class QuotientPair : public NormPair {
public:
  QuotientPair(LinearMap D, PairPtr base, std::string name,
               IstaOptions opt = {});
  std::string name() const override { return name_; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;

  /// Minimal preimage when the base is l1 or l-infinity (dense LP).
  Vec preimage(const Vec &c) const;
  bool exact_norm_x() const;
  IstaResult ista(const Vec &c, double radius) const;
  const LinearMap &map() const { return D_; }
  const NormPair &base() const { return *base_; }

private:
  LinearMap D_;
  PairPtr base_;
  std::string name_;
  IstaOptions opt_;
  Mat dense_; // materialized D when small
};

/// |a|_X = |L a|_1 and |a|_Y = min{|z|_inf : L* z = a}. With zero_mean the
/// domain is the sum-zero subspace (L kills constants).
class AnalysisPair : public NormPair {
public:
  AnalysisPair(Mat L, std::string name, bool zero_mean, IstaOptions opt = {});
  std::string name() const override { return name_; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;

  /// X-part of the decomposition whose Y-part has norm y.
  Vec prox_level(const Vec &c, double y) const;
  /// The ISTA run behind prox_level: a is the Y-part, e its preimage z
  /// with L* z = a and |z|_inf <= y.
  IstaResult level_split(const Vec &c, double y) const;
  const Mat &L() const { return L_; }

private:
  void check_domain(const Vec &v) const;
  Mat L_;
  std::string name_;
  bool zero_mean_;
  IstaOptions opt_;
};

PairPtr quotient_pair(const Mat &D, PairPtr base, std::string name = "quotient");

struct RegressionResult {
  Vec v;            // coefficients
  Decomposition d;  // c = Av + residual
};

RegressionResult lasso(const Mat &A, const Vec &c, double x,
                       const IstaOptions &opt = {});
RegressionResult bpdn(const Mat &A, const Vec &c, double y,
                      const IstaOptions &opt = {});
Vec dantzig(const Mat &A, const Vec &c, double y);

/// Discrete gradient of a row-major image: horizontal differences first.
Mat grad2d(int rows, int cols);
std::shared_ptr<const AnalysisPair> tv2d_pair(int rows, int cols,
                                              const IstaOptions &opt = {});
int gsparse_2d(const Mat &image);

/// D^(k) as a dense n x (n+k) matrix.
Mat diff_k(int n, int k);
std::shared_ptr<const AnalysisPair> trend_filter_pair(int n, int k,
                                                      const IstaOptions &opt = {});

/// Observed entries (row-major, mask != 0) of a rows x cols matrix, with
/// the nuclear/spectral base.
PairPtr matrix_completion_pair(const Mat &mask);

} // namespace pareto
