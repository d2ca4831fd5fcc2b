#include "pareto/l1.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pareto {

namespace {

void check_dim(const Vec &v, int n) {
  if (v.size() != n)
    throw std::invalid_argument("l1 pair: expected dimension " +
                                std::to_string(n) + ", got " +
                                std::to_string(v.size()));
}

double sgn(double v) { return (v > 0) - (v < 0); }

} // namespace

Vec project_l1_ball(const Vec &c, double r) {
  if (r < 0)
    throw std::invalid_argument("project_l1_ball: negative radius");
  if (c.lpNorm<1>() <= r)
    return c;
  if (r == 0)
    return Vec::Zero(c.size());
  std::vector<double> u(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    u[i] = std::abs(c[i]);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0, theta = 0;
  for (size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    double t = (cum - r) / double(k + 1);
    if (k + 1 == u.size() || u[k + 1] <= t) {
      theta = t;
      break;
    }
  }
  Vec a(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    a[i] = sgn(c[i]) * std::max(std::abs(c[i]) - theta, 0.0);
  return a;
}

double L1Pair::norm_x(const Vec &v) const {
  check_dim(v, n_);
  return v.lpNorm<1>();
}

double L1Pair::norm_y(const Vec &v) const {
  check_dim(v, n_);
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

Vec L1Pair::proj_x(const Vec &c, double radius) const {
  check_dim(c, n_);
  return project_l1_ball(c, radius);
}

// Optimal vertices are s e_i over |g_i| = max. Lexicographically the smallest
// is -e_i at the first negative maximizer, else +e_i at the last positive one.
Vec L1Pair::dual_argmax(const Vec &g) const {
  check_dim(g, n_);
  Vec w = Vec::Zero(n_);
  double m = g.cwiseAbs().maxCoeff();
  for (int i = 0; i < n_; ++i)
    if (std::abs(g[i]) == m && g[i] <= 0) {
      w[i] = -1;
      return w;
    }
  for (int i = n_ - 1; i >= 0; --i)
    if (g[i] == m) {
      w[i] = 1;
      return w;
    }
  return w;
}

double LinfPair::norm_x(const Vec &v) const {
  check_dim(v, n_);
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

double LinfPair::norm_y(const Vec &v) const {
  check_dim(v, n_);
  return v.lpNorm<1>();
}

Vec LinfPair::proj_x(const Vec &c, double radius) const {
  check_dim(c, n_);
  if (radius < 0)
    throw std::invalid_argument("proj_x: negative radius");
  return c.cwiseMax(-radius).cwiseMin(radius);
}

// Vertices are sign vectors; zero coordinates take -1.
Vec LinfPair::dual_argmax(const Vec &g) const {
  check_dim(g, n_);
  Vec w(n_);
  for (int i = 0; i < n_; ++i)
    w[i] = g[i] > 0 ? 1.0 : -1.0;
  return w;
}

PairPtr l1_pair(int n) {
  if (n < 1)
    throw std::invalid_argument("l1_pair: n must be positive");
  return std::make_shared<L1Pair>(n);
}

PairPtr linf_pair(int n) {
  if (n < 1)
    throw std::invalid_argument("linf_pair: n must be positive");
  return std::make_shared<LinfPair>(n);
}

Decomposition soft_threshold(const Vec &c, double y) {
  if (y < 0)
    throw std::invalid_argument("soft_threshold: negative level");
  Decomposition d;
  d.b.resize(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    d.b[i] = sgn(c[i]) * std::min(std::abs(c[i]), y);
  d.a = c - d.b;
  d.x = d.a.lpNorm<1>();
  d.y = c.size() ? d.b.cwiseAbs().maxCoeff() : 0.0;
  d.inner = d.a.dot(d.b);
  d.gap = 0.0; // sgn(a_i) b_i = y wherever a_i != 0
  d.certified = true;
  return d;
}

L1SlopeLevels l1_levels(const Vec &c) {
  std::vector<double> mags;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (c[i] != 0)
      mags.push_back(std::abs(c[i]));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  L1SlopeLevels lv;
  for (double m : mags) {
    if (!lv.lambdas.empty() && lv.lambdas.back() == m) {
      ++lv.mults.back();
    } else {
      lv.lambdas.push_back(m);
      lv.mults.push_back(1);
    }
  }
  return lv;
}

ParetoCurve l1_frontier(const Vec &c) {
  ParetoCurve cur;
  cur.kind = CurveKind::frontier;
  cur.orientation = Orientation::x_of_y;
  L1SlopeLevels lv = l1_levels(c);
  if (lv.lambdas.empty()) {
    cur.points.push_back({0.0, 0.0});
    return cur;
  }
  // x(y) = sum_i m_i max(lambda_i - y, 0), evaluated at each level.
  double x = 0;
  int k = 0;
  cur.points.push_back({0.0, lv.lambdas[0]});
  for (size_t i = 0; i < lv.lambdas.size(); ++i) {
    k += lv.mults[i];
    double next = i + 1 < lv.lambdas.size() ? lv.lambdas[i + 1] : 0.0;
    x += k * (lv.lambdas[i] - next);
    cur.points.push_back({x, next});
    if (i + 1 < lv.lambdas.size())
      cur.breakpoints.push_back(cur.points.size() - 1);
  }
  return cur;
}

SlopeDecomposition l1_slope_decomposition(const Vec &c) {
  L1SlopeLevels lv = l1_levels(c);
  if (lv.lambdas.empty())
    throw std::invalid_argument("l1_slope_decomposition: zero vector");
  SlopeDecomposition s;
  int k = 0;
  for (size_t i = 0; i < lv.lambdas.size(); ++i) {
    double next = i + 1 < lv.lambdas.size() ? lv.lambdas[i + 1] : 0.0;
    double step = lv.lambdas[i] - next;
    Vec ci = Vec::Zero(c.size());
    for (Eigen::Index j = 0; j < c.size(); ++j)
      if (std::abs(c[j]) >= lv.lambdas[i])
        ci[j] = sgn(c[j]) * step;
    k += lv.mults[i];
    s.components.push_back(ci);
    s.xs.push_back(k * step);
    s.ys.push_back(step);
    s.slopes.push_back(1.0 / k);
  }
  return s;
}

SVRegion l1_sv_region(const Vec &c) {
  L1SlopeLevels lv = l1_levels(c);
  SVRegion r;
  r.exact = true;
  for (size_t i = 0; i < lv.lambdas.size(); ++i) {
    r.bars.push_back({lv.lambdas[i], double(lv.mults[i])});
    r.total_area += lv.lambdas[i] * lv.mults[i];
    r.moment += lv.lambdas[i] * lv.lambdas[i] * lv.mults[i];
  }
  r.height = lv.lambdas.empty() ? 0.0 : lv.lambdas[0];
  return r;
}

} // namespace pareto
