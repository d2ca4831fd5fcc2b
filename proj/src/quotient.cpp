#include "pareto/quotient.hpp"

#include "pareto/l1.hpp"
#include "pareto/lp.hpp"
#include "pareto/matrix.hpp"
#include "pareto/tv1d.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace pareto {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMapSeed = 0x5eed5eedULL;

Vec random_unit(std::mt19937_64 &rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i)
    v[i] = N(rng);
  double s = v.norm();
  return s > 0 ? Vec(v / s) : v;
}

// min sum(p+q) s.t. D(p-q) = c, p,q >= 0.
LpResult l1_preimage(const Mat &D, const Vec &c) {
  const Eigen::Index m = D.cols();
  LpProblem lp;
  lp.c = Vec::Ones(2 * m);
  lp.A_eq.resize(D.rows(), 2 * m);
  lp.A_eq << D, -D;
  lp.b_eq = c;
  return solve_lp_or_throw(lp, "l1 preimage");
}

// min t s.t. |v_i| <= t, D v = c.  Variables (v, t).
LpResult linf_preimage(const Mat &D, const Vec &c) {
  const Eigen::Index m = D.cols();
  LpProblem lp;
  lp.c = Vec::Zero(m + 1);
  lp.c[m] = 1;
  lp.A_ub = Mat::Zero(2 * m, m + 1);
  lp.A_ub.topLeftCorner(m, m).setIdentity();
  lp.A_ub.bottomLeftCorner(m, m) = -Mat::Identity(m, m);
  lp.A_ub.col(m).setConstant(-1);
  lp.b_ub = Vec::Zero(2 * m);
  lp.A_eq = Mat::Zero(D.rows(), m + 1);
  lp.A_eq.leftCols(m) = D;
  lp.b_eq = c;
  lp.lo = Vec::Constant(m + 1, -inf);
  lp.lo[m] = 0;
  return solve_lp_or_throw(lp, "linf preimage");
}

constexpr Eigen::Index kLpCap = 4096; // in_dim * out_dim

} // namespace

LinearMap LinearMap::from_matrix(const Mat &A) {
  LinearMap D;
  auto M = std::make_shared<const Mat>(A);
  D.apply = [M](const Vec &v) -> Vec { return *M * v; };
  D.adjoint = [M](const Vec &w) -> Vec { return M->transpose() * w; };
  D.in_dim = int(A.cols());
  D.out_dim = int(A.rows());
  return D;
}

Mat LinearMap::dense() const {
  Mat M(out_dim, in_dim);
  for (int j = 0; j < in_dim; ++j)
    M.col(j) = apply(Vec::Unit(in_dim, j));
  return M;
}

double LinearMap::adjoint_mismatch(int trials) const {
  std::mt19937_64 rng(kMapSeed);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    Vec v = random_unit(rng, in_dim), w = random_unit(rng, out_dim);
    worst = std::max(worst, std::abs(apply(v).dot(w) - v.dot(adjoint(w))));
  }
  return worst;
}

double op_norm_estimate(const LinearMap &D, int iters) {
  std::mt19937_64 rng(kMapSeed);
  Vec v = random_unit(rng, D.in_dim);
  double s = 0;
  for (int k = 0; k < iters; ++k) {
    Vec w = D.adjoint(D.apply(v));
    double nw = w.norm();
    if (nw == 0)
      return 0;
    v = w / nw;
    s = D.apply(v).norm();
  }
  return s;
}

IstaResult ista_proj(const LinearMap &D, const NormPair &base, const Vec &c,
                     double x, const IstaOptions &opt) {
  if (c.size() != D.out_dim)
    throw std::invalid_argument("ista_proj: dimension mismatch");
  if (!(opt.delta > 0 && opt.delta < 1))
    throw std::invalid_argument("ista_proj: delta must lie in (0, 1)");
  if (x < 0)
    throw std::invalid_argument("ista_proj: negative radius");
  IstaResult r;
  r.e = Vec::Zero(D.in_dim);
  r.a = Vec::Zero(D.out_dim);
  if (x == 0 || c.norm() == 0) {
    r.certified = true;
    r.inside = c.norm() == 0;
    return r;
  }
  // With |D'| <= 1/sqrt(2) the gradient step has Lipschitz constant <= 1.
  double sig = op_norm_estimate(D);
  if (sig == 0)
    throw PreconditionError("ista_proj: zero operator");
  const double s = std::sqrt(2.0) * sig;
  const double xs = s * x;
  const double cn = c.norm();
  Vec e = Vec::Zero(D.in_dim); // scaled preimage, e = s * e_original
  Vec De = Vec::Zero(D.out_dim);
  for (int k = 0; k < opt.max_iter; ++k) {
    Vec res = c - De;
    Vec g = D.adjoint(res) / s;
    r.iterations = k;
    double lhs = De.dot(res);
    double rhs = opt.delta * base.norm_x(e) * base.norm_y(g);
    if (lhs > rhs || res.norm() <= 1e-12 * cn) {
      r.lhs = lhs;
      r.rhs = rhs;
      r.certified = lhs > rhs;
      r.inside = res.norm() <= 1e-12 * cn;
      r.e = e / s;
      r.a = De;
      return r;
    }
    e = base.proj_x(2 * g + e, xs);
    De = D.apply(e) / s;
  }
  if (opt.throw_on_cap)
    throw SolverError("ista_proj: iteration cap exceeded");
  Vec res = c - De;
  r.iterations = opt.max_iter;
  r.lhs = De.dot(res);
  r.rhs = opt.delta * base.norm_x(e) * base.norm_y(D.adjoint(res) / s);
  r.e = e / s;
  r.a = De;
  return r;
}

QuotientPair::QuotientPair(LinearMap D, PairPtr base, std::string name,
                           IstaOptions opt)
    : D_(std::move(D)), base_(std::move(base)), name_(std::move(name)),
      opt_(opt) {
  if (!base_)
    throw std::invalid_argument("quotient pair: null base");
  if (D_.out_dim < 1 || D_.in_dim < D_.out_dim)
    throw PreconditionError("quotient pair: map cannot be surjective");
  if (Eigen::Index(D_.in_dim) * D_.out_dim <= 1000000) {
    dense_ = D_.dense();
    SvdResult sv = jacobi_svd(dense_);
    double tol = sv.s[0] * 1e-10 * double(D_.in_dim);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.s.size(); ++i)
      rank += sv.s[i] > tol;
    if (rank < D_.out_dim)
      throw PreconditionError("quotient pair: rank-deficient map");
  }
}

bool QuotientPair::exact_norm_x() const {
  return dense_.size() && dense_.size() <= kLpCap &&
         (dynamic_cast<const L1Pair *>(base_.get()) ||
          dynamic_cast<const LinfPair *>(base_.get()));
}

Vec QuotientPair::preimage(const Vec &c) const {
  if (c.size() != D_.out_dim)
    throw std::invalid_argument("quotient pair: dimension mismatch");
  if (!exact_norm_x())
    throw std::invalid_argument("preimage: needs an l1 or l-inf base at "
                                "desk scale");
  if (dynamic_cast<const L1Pair *>(base_.get())) {
    Vec pq = l1_preimage(dense_, c).x;
    return pq.head(D_.in_dim) - pq.tail(D_.in_dim);
  }
  return linf_preimage(dense_, c).x.head(D_.in_dim);
}

double QuotientPair::norm_x(const Vec &c) const {
  if (c.size() != D_.out_dim)
    throw std::invalid_argument("quotient pair: dimension mismatch");
  if (c.norm() == 0)
    return 0;
  if (exact_norm_x())
    return base_->norm_x(preimage(c));
  // Upper bound: bisection on the radius at which the ISTA projection
  // reaches c, starting from the least-squares preimage.
  Vec v = dense_.size()
              ? Vec(dense_.completeOrthogonalDecomposition().solve(c))
              : D_.adjoint(c);
  double hi = base_->norm_x(v);
  double lo = c.squaredNorm() / norm_y(c);
  IstaOptions o = opt_;
  o.throw_on_cap = false;
  o.max_iter = std::min(o.max_iter, 20000);
  for (int it = 0; it < 30 && hi - lo > 1e-9 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    IstaResult r = ista_proj(D_, *base_, c, mid, o);
    if ((c - r.a).norm() <= 1e-6 * c.norm())
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double QuotientPair::norm_y(const Vec &c) const {
  if (c.size() != D_.out_dim)
    throw std::invalid_argument("quotient pair: dimension mismatch");
  return base_->norm_y(D_.adjoint(c));
}

IstaResult QuotientPair::ista(const Vec &c, double radius) const {
  return ista_proj(D_, *base_, c, radius, opt_);
}

Vec QuotientPair::proj_x(const Vec &c, double radius) const {
  if (radius < 0)
    throw std::invalid_argument("proj_x: negative radius");
  if (norm_x(c) <= radius)
    return c;
  return ista(c, radius).a;
}

Vec QuotientPair::dual_argmax(const Vec &g) const {
  if (g.size() != D_.out_dim)
    throw std::invalid_argument("quotient pair: dimension mismatch");
  return D_.apply(base_->dual_argmax(D_.adjoint(g)));
}

PairPtr quotient_pair(const Mat &D, PairPtr base, std::string name) {
  if (D.size() == 0)
    throw std::invalid_argument("quotient_pair: empty map");
  return std::make_shared<QuotientPair>(LinearMap::from_matrix(D),
                                        std::move(base), std::move(name));
}

AnalysisPair::AnalysisPair(Mat L, std::string name, bool zero_mean,
                           IstaOptions opt)
    : L_(std::move(L)), name_(std::move(name)), zero_mean_(zero_mean),
      opt_(opt) {
  if (L_.size() == 0)
    throw std::invalid_argument("analysis pair: empty operator");
}

void AnalysisPair::check_domain(const Vec &v) const {
  if (v.size() != L_.cols())
    throw std::invalid_argument(name_ + ": dimension mismatch");
  if (zero_mean_ &&
      std::abs(v.sum()) > 1e-9 * (1 + v.lpNorm<1>()))
    throw PreconditionError(name_ + ": input must have zero mean");
}

double AnalysisPair::norm_x(const Vec &v) const {
  if (v.size() != L_.cols())
    throw std::invalid_argument(name_ + ": dimension mismatch");
  return (L_ * v).lpNorm<1>();
}

double AnalysisPair::norm_y(const Vec &v) const {
  check_domain(v);
  if (v.norm() == 0)
    return 0;
  if (L_.size() > 4 * kLpCap)
    throw std::invalid_argument(name_ + ": too large for the dense LP");
  return linf_preimage(L_.transpose(), v).value;
}

IstaResult AnalysisPair::level_split(const Vec &c, double y) const {
  check_domain(c);
  if (y < 0)
    throw std::invalid_argument("prox_level: negative level");
  LinfPair base(int(L_.rows()));
  LinearMap Lt = LinearMap::from_matrix(L_.transpose());
  return ista_proj(Lt, base, c, y, opt_);
}

Vec AnalysisPair::prox_level(const Vec &c, double y) const {
  return c - level_split(c, y).a;
}

Vec AnalysisPair::proj_x(const Vec &c, double radius) const {
  if (radius < 0)
    throw std::invalid_argument("proj_x: negative radius");
  check_domain(c);
  double nx = norm_x(c);
  if (nx <= radius)
    return c;
  if (radius == 0)
    return Vec::Zero(c.size());
  // |prox_level(c, y)|_X decreases from |c|_X to 0 as y runs to |c|_Y.
  double lo = 0, hi = norm_y(c);
  Vec best = Vec::Zero(c.size());
  for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    Vec a = prox_level(c, mid);
    if (norm_x(a) > radius) {
      lo = mid;
    } else {
      hi = mid;
      best = a;
    }
  }
  return best;
}

Vec AnalysisPair::dual_argmax(const Vec &g) const {
  check_domain(g);
  // max <g,w> s.t. |L w|_1 <= 1.  Variables (w free, u >= 0).
  const Eigen::Index n = L_.cols(), p = L_.rows();
  LpProblem lp;
  lp.c = Vec::Zero(n + p);
  lp.c.head(n) = -g;
  lp.A_ub = Mat::Zero(2 * p + 1, n + p);
  lp.A_ub.topLeftCorner(p, n) = L_;
  lp.A_ub.block(0, n, p, p) = -Mat::Identity(p, p);
  lp.A_ub.block(p, 0, p, n) = -L_;
  lp.A_ub.block(p, n, p, p) = -Mat::Identity(p, p);
  lp.A_ub.block(2 * p, n, 1, p).setOnes();
  lp.b_ub = Vec::Zero(2 * p + 1);
  lp.b_ub[2 * p] = 1;
  if (zero_mean_) {
    lp.A_eq = Mat::Zero(1, n + p);
    lp.A_eq.block(0, 0, 1, n).setOnes();
    lp.b_eq = Vec::Zero(1);
  }
  lp.lo = Vec::Zero(n + p);
  lp.lo.head(n).setConstant(-inf);
  return solve_lp_or_throw(lp, "analysis dual_argmax").x.head(n);
}

namespace {

void require_mn(const Mat &A, const Vec &c, const char *what) {
  if (A.rows() != c.size() || A.cols() == 0)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

Decomposition regression_certificate(const QuotientPair &q, const Vec &c,
                                     const Vec &a, double tol) {
  return check_x2(q, a, c - a, tol);
}

} // namespace

RegressionResult lasso(const Mat &A, const Vec &c, double x,
                       const IstaOptions &opt) {
  require_mn(A, c, "lasso");
  if (x < 0)
    throw std::invalid_argument("lasso: negative radius");
  QuotientPair q(LinearMap::from_matrix(A), l1_pair(int(A.cols())), "lasso",
                 opt);
  RegressionResult r;
  const double tol = 2 * (1 - opt.delta) + 1e-9;
  if (q.exact_norm_x() && q.norm_x(c) <= x) {
    r.v = q.preimage(c);
    r.d = regression_certificate(q, c, c, tol);
    return r;
  }
  IstaResult it = q.ista(c, x);
  r.v = it.e;
  r.d = regression_certificate(q, c, it.a, tol);
  return r;
}

RegressionResult bpdn(const Mat &A, const Vec &c, double y,
                      const IstaOptions &opt) {
  require_mn(A, c, "bpdn");
  const double cn = c.norm();
  if (y < 0 || y > cn)
    throw std::invalid_argument("bpdn: level must lie in [0, |c|_2]");
  QuotientPair q(LinearMap::from_matrix(A), l1_pair(int(A.cols())), "bpdn",
                 opt);
  const double tol = 2 * (1 - opt.delta) + 1e-9;
  RegressionResult r;
  if (y == cn) {
    r.v = Vec::Zero(A.cols());
    r.d = regression_certificate(q, c, Vec::Zero(c.size()), tol);
    return r;
  }
  if (y == 0) {
    r.v = q.preimage(c);
    r.d = regression_certificate(q, c, c, tol);
    return r;
  }
  // The residual of the X2 projection decreases continuously in x.
  double lo = 0, hi = q.norm_x(c);
  IstaResult best;
  bool have = false;
  for (int k = 0; k < 60 && hi - lo > 1e-12 * hi; ++k) {
    double mid = 0.5 * (lo + hi);
    IstaResult it = q.ista(c, mid);
    if ((c - it.a).norm() > y) {
      lo = mid;
    } else {
      hi = mid;
      best = it;
      have = true;
    }
  }
  if (!have)
    best = q.ista(c, hi);
  r.v = best.e;
  r.d = regression_certificate(q, c, best.a, tol);
  return r;
}

Vec dantzig(const Mat &A, const Vec &c, double y) {
  require_mn(A, c, "dantzig");
  if (y < 0)
    throw std::invalid_argument("dantzig: negative level");
  if (A.size() > 400)
    throw std::invalid_argument("dantzig: size cap (m*n <= 400) exceeded");
  const Eigen::Index n = A.cols();
  Mat G = A.transpose() * A;
  Vec h = A.transpose() * c;
  // v = p - q;  -y <= G v - h <= y.
  LpProblem lp;
  lp.c = Vec::Ones(2 * n);
  lp.A_ub.resize(2 * n, 2 * n);
  lp.A_ub << G, -G, -G, G;
  lp.b_ub.resize(2 * n);
  lp.b_ub << Vec::Constant(n, y) + h, Vec::Constant(n, y) - h;
  Vec pq = solve_lp_or_throw(lp, "dantzig").x;
  return pq.head(n) - pq.tail(n);
}

Mat grad2d(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("grad2d: empty image");
  const int E = rows * (cols - 1) + (rows - 1) * cols;
  Mat F = Mat::Zero(E, rows * cols);
  int e = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j + 1 < cols; ++j, ++e) {
      F(e, i * cols + j) = 1;
      F(e, i * cols + j + 1) = -1;
    }
  for (int i = 0; i + 1 < rows; ++i)
    for (int j = 0; j < cols; ++j, ++e) {
      F(e, i * cols + j) = 1;
      F(e, (i + 1) * cols + j) = -1;
    }
  return F;
}

std::shared_ptr<const AnalysisPair> tv2d_pair(int rows, int cols,
                                              const IstaOptions &opt) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw std::invalid_argument("tv2d_pair: need at least two pixels");
  if (rows * cols > 400)
    throw std::invalid_argument("tv2d_pair: size cap (400 pixels) exceeded");
  return std::make_shared<AnalysisPair>(grad2d(rows, cols), "tv2d", true,
                                        opt);
}

int gsparse_2d(const Mat &image) {
  const Eigen::Index R = image.rows(), C = image.cols();
  if (image.size() == 0)
    throw std::invalid_argument("gsparse_2d: empty image");
  if ((image.array() == image(0, 0)).all())
    throw PreconditionError("gsparse_2d: constant image");
  std::vector<int> label(R * C, -1);
  int regions = 0;
  std::vector<Eigen::Index> stack;
  for (Eigen::Index s = 0; s < R * C; ++s) {
    if (label[s] >= 0)
      continue;
    label[s] = regions;
    stack.push_back(s);
    while (!stack.empty()) {
      Eigen::Index p = stack.back();
      stack.pop_back();
      Eigen::Index i = p / C, j = p % C;
      const Eigen::Index nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1},
                                     {i, j + 1}};
      for (const auto &q : nb) {
        if (q[0] < 0 || q[0] >= R || q[1] < 0 || q[1] >= C)
          continue;
        Eigen::Index k = q[0] * C + q[1];
        if (label[k] < 0 && image(q[0], q[1]) == image(i, j)) {
          label[k] = regions;
          stack.push_back(k);
        }
      }
    }
    ++regions;
  }
  return regions - 1;
}

Mat diff_k(int n, int k) {
  if (n < 1 || k < 1)
    throw std::invalid_argument("diff_k: n and k must be positive");
  Mat D = Mat::Identity(n + k, n + k);
  for (int j = 0; j < k; ++j) {
    Mat step = Mat::Zero(D.rows() - 1, D.rows());
    for (Eigen::Index i = 0; i < step.rows(); ++i) {
      step(i, i) = -1;
      step(i, i + 1) = 1;
    }
    D = step * D;
  }
  return D;
}

std::shared_ptr<const AnalysisPair> trend_filter_pair(int n, int k,
                                                      const IstaOptions &opt) {
  if (k < 1)
    throw std::invalid_argument("trend_filter_pair: k must be >= 1");
  return std::make_shared<AnalysisPair>(diff_k(n, k).transpose(),
                                        "trend" + std::to_string(k), false,
                                        opt);
}

PairPtr matrix_completion_pair(const Mat &mask) {
  const int R = int(mask.rows()), C = int(mask.cols());
  std::vector<int> idx;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j)
      if (mask(i, j) != 0)
        idx.push_back(i * C + j);
  if (idx.empty())
    throw std::invalid_argument("matrix_completion_pair: empty mask");
  LinearMap D;
  D.in_dim = R * C;
  D.out_dim = int(idx.size());
  D.apply = [idx](const Vec &v) {
    Vec w(idx.size());
    for (size_t k = 0; k < idx.size(); ++k)
      w[k] = v[idx[k]];
    return w;
  };
  const int N = R * C;
  D.adjoint = [idx, N](const Vec &w) {
    Vec v = Vec::Zero(N);
    for (size_t k = 0; k < idx.size(); ++k)
      v[idx[k]] = w[k];
    return v;
  };
  return std::make_shared<QuotientPair>(std::move(D),
                                        nuclear_spectral_pair(R, C),
                                        "matrix-completion");
}

} // namespace pareto
