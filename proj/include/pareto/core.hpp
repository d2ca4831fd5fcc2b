#pragma once

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pareto {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when an iterative solver hits its cap or loses bracketing.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an input violates an operation's precondition.
struct PreconditionError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotTightError : PreconditionError {
  using PreconditionError::PreconditionError;
};

/// A pair of mutually dual norms on R^n.
///
/// proj_x is the Euclidean projection onto the X-ball of the given radius.
/// dual_argmax(g) returns w with |w|_X = 1 and <g,w> = |g|_Y.
class NormPair {
public:
  virtual ~NormPair() = default;
  virtual std::string name() const = 0;
  virtual double norm_x(const Vec &v) const = 0;
  virtual double norm_y(const Vec &v) const = 0;
  virtual Vec proj_x(const Vec &c, double radius) const = 0;
  virtual Vec dual_argmax(const Vec &g) const = 0;
};

using PairPtr = std::shared_ptr<const NormPair>;

struct Decomposition {
  Vec a;
  Vec b;
  double x = 0; // |a|_X
  double y = 0; // |b|_Y
  double inner = 0;
  double gap = 0; // x*y - <a,b>
  bool certified = false;
};

struct SparsenessReport {
  int gsparse_x = 0;
  int gsparse_y = 0;
  int bound = 0;
};

double inner(const Vec &u, const Vec &v);

double slope_mu(const NormPair &pair, const Vec &v);
bool is_unitangent(const NormPair &pair, const Vec &v, double tol);
Decomposition check_x2(const NormPair &pair, const Vec &a, const Vec &b,
                       double tol);

enum class SparseTag { l1_X, l1_Y, tv_Y };
/// Entries within tol * |v|_inf of zero (or of each other, for ties) are
/// treated as equal.
int gsparse(SparseTag tag, const Vec &v, double tol = 0);

/// X2-decomposition report for the l1 pair: gsparse_X(a), gsparse_Y(b), n+1.
SparsenessReport sparseness_l1(const Vec &a, const Vec &b, double tol = 1e-9);

// 2D fixtures with closed-form geometry.

/// |z|_X = sqrt(sum w_i z_i^2), |z|_Y = sqrt(sum z_i^2 / w_i).
class WeightedL2Pair : public NormPair {
public:
  explicit WeightedL2Pair(Vec weights, std::string name = "weighted-l2");
  std::string name() const override { return name_; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;

private:
  Vec w_;
  std::string name_;
};

/// Polygonal X-ball given by the vertices of a centrally symmetric convex
/// polygon; Y is its support function.
class PolygonPair : public NormPair {
public:
  PolygonPair(std::vector<Eigen::Vector2d> vertices, std::string name);
  std::string name() const override { return name_; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;
  const std::vector<Eigen::Vector2d> &vertices() const { return verts_; }

private:
  std::vector<Eigen::Vector2d> verts_;   // counter-clockwise
  std::vector<Eigen::Vector2d> normals_; // <n_k, p> = 1 on edge k
  std::string name_;
};

PairPtr gallery_ellipse_pair();
PairPtr gallery_skew_pair();

void require_same_dim(const Vec &u, const Vec &v, const char *what);

} // namespace pareto
