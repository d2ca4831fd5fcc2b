#include "pareto/core.hpp"

#include <algorithm>
#include <cmath>

namespace pareto {

void require_same_dim(const Vec &u, const Vec &v, const char *what) {
  if (u.size() != v.size())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
}

double inner(const Vec &u, const Vec &v) {
  require_same_dim(u, v, "inner");
  return u.dot(v);
}

double slope_mu(const NormPair &pair, const Vec &v) {
  double nx = pair.norm_x(v);
  if (nx == 0.0)
    throw std::invalid_argument("slope_mu: zero vector");
  return pair.norm_y(v) / nx;
}

bool is_unitangent(const NormPair &pair, const Vec &v, double tol) {
  double n2 = v.squaredNorm();
  if (n2 == 0.0)
    throw std::invalid_argument("is_unitangent: zero vector");
  return std::abs(n2 - pair.norm_x(v) * pair.norm_y(v)) <= tol * n2;
}

Decomposition check_x2(const NormPair &pair, const Vec &a, const Vec &b,
                       double tol) {
  require_same_dim(a, b, "check_x2");
  Decomposition d;
  d.a = a;
  d.b = b;
  d.x = pair.norm_x(a);
  d.y = pair.norm_y(b);
  d.inner = a.dot(b);
  d.gap = d.x * d.y - d.inner;
  d.certified = d.gap <= tol * (1.0 + d.x * d.y);
  return d;
}

int gsparse(SparseTag tag, const Vec &v, double tol) {
  if (v.size() == 0 || v.isZero(0.0))
    throw std::invalid_argument("gsparse: zero vector");
  if (tol < 0)
    throw std::invalid_argument("gsparse: negative tolerance");
  const double m = v.cwiseAbs().maxCoeff();
  const double eps = tol * m;
  switch (tag) {
  case SparseTag::l1_X:
    return static_cast<int>((v.cwiseAbs().array() > eps).count());
  case SparseTag::l1_Y:
    return 1 + static_cast<int>((v.cwiseAbs().array() < m - eps).count());
  case SparseTag::tv_Y: {
    int jumps = 0;
    for (Eigen::Index i = 0; i + 1 < v.size(); ++i)
      jumps += std::abs(v[i] - v[i + 1]) > eps;
    return jumps + 1;
  }
  }
  throw std::invalid_argument("gsparse: unsupported tag");
}

SparsenessReport sparseness_l1(const Vec &a, const Vec &b, double tol) {
  require_same_dim(a, b, "sparseness_l1");
  SparsenessReport r;
  r.gsparse_x = a.isZero(0.0) ? 0 : gsparse(SparseTag::l1_X, a, tol);
  r.gsparse_y = b.isZero(0.0) ? 0 : gsparse(SparseTag::l1_Y, b, tol);
  r.bound = static_cast<int>(a.size()) + 1;
  return r;
}

// ---------------------------------------------------------------- ellipse

WeightedL2Pair::WeightedL2Pair(Vec weights, std::string name)
    : w_(std::move(weights)), name_(std::move(name)) {
  if (w_.size() == 0 || (w_.array() <= 0.0).any())
    throw std::invalid_argument("WeightedL2Pair: weights must be positive");
}

double WeightedL2Pair::norm_x(const Vec &v) const {
  require_same_dim(v, w_, "norm_x");
  return std::sqrt((w_.array() * v.array().square()).sum());
}

double WeightedL2Pair::norm_y(const Vec &v) const {
  require_same_dim(v, w_, "norm_y");
  return std::sqrt((v.array().square() / w_.array()).sum());
}

Vec WeightedL2Pair::proj_x(const Vec &c, double radius) const {
  if (radius < 0)
    throw std::invalid_argument("proj_x: negative radius");
  if (norm_x(c) <= radius)
    return c;
  if (radius == 0.0)
    return Vec::Zero(c.size());
  // a_i = c_i / (1 + mu w_i) with sum w_i a_i^2 = r^2; phi is decreasing.
  auto phi = [&](double mu) {
    return (w_.array() * (c.array() / (1.0 + mu * w_.array())).square())
               .sum() -
           radius * radius;
  };
  double lo = 0.0;
  double hi = std::sqrt((c.array().square() / w_.array()).sum()) / radius;
  while (phi(hi) > 0)
    hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (phi(mid) > 0 ? lo : hi) = mid;
  }
  return (c.array() / (1.0 + hi * w_.array())).matrix();
}

Vec WeightedL2Pair::dual_argmax(const Vec &g) const {
  Vec w = (g.array() / w_.array()).matrix();
  double n = norm_x(w);
  if (n == 0.0) {
    Vec e = Vec::Zero(g.size());
    e[0] = -1.0 / std::sqrt(w_[0]);
    return e;
  }
  return w / n;
}

// ---------------------------------------------------------------- polygon

PolygonPair::PolygonPair(std::vector<Eigen::Vector2d> vertices,
                         std::string name)
    : verts_(std::move(vertices)), name_(std::move(name)) {
  if (verts_.size() < 4)
    throw std::invalid_argument("PolygonPair: need at least 4 vertices");
  std::sort(verts_.begin(), verts_.end(),
            [](const Eigen::Vector2d &p, const Eigen::Vector2d &q) {
              return std::atan2(p.y(), p.x()) < std::atan2(q.y(), q.x());
            });
  const size_t k = verts_.size();
  for (size_t i = 0; i < k; ++i) {
    const Eigen::Vector2d &p = verts_[i];
    const Eigen::Vector2d &q = verts_[(i + 1) % k];
    Eigen::Vector2d e = q - p;
    Eigen::Vector2d perp(e.y(), -e.x());
    double s = perp.dot(p);
    if (s <= 0)
      throw std::invalid_argument("PolygonPair: origin not interior");
    normals_.push_back(perp / s);
  }
}

double PolygonPair::norm_x(const Vec &v) const {
  if (v.size() != 2)
    throw std::invalid_argument("PolygonPair: dimension must be 2");
  double m = 0.0;
  for (const auto &n : normals_)
    m = std::max(m, n.dot(Eigen::Vector2d(v[0], v[1])));
  return m;
}

double PolygonPair::norm_y(const Vec &v) const {
  if (v.size() != 2)
    throw std::invalid_argument("PolygonPair: dimension must be 2");
  double m = 0.0;
  for (const auto &p : verts_)
    m = std::max(m, p.dot(Eigen::Vector2d(v[0], v[1])));
  return m;
}

Vec PolygonPair::proj_x(const Vec &c, double radius) const {
  if (radius < 0)
    throw std::invalid_argument("proj_x: negative radius");
  if (norm_x(c) <= radius)
    return c;
  Eigen::Vector2d z(c[0], c[1]);
  Eigen::Vector2d best = Eigen::Vector2d::Zero();
  double bestd = std::numeric_limits<double>::infinity();
  const size_t k = verts_.size();
  for (size_t i = 0; i < k; ++i) {
    Eigen::Vector2d p = radius * verts_[i];
    Eigen::Vector2d q = radius * verts_[(i + 1) % k];
    Eigen::Vector2d e = q - p;
    double ee = e.squaredNorm();
    double t = ee > 0 ? std::clamp((z - p).dot(e) / ee, 0.0, 1.0) : 0.0;
    Eigen::Vector2d r = p + t * e;
    double d = (z - r).squaredNorm();
    if (d < bestd) {
      bestd = d;
      best = r;
    }
  }
  return Vec(best);
}

Vec PolygonPair::dual_argmax(const Vec &g) const {
  Eigen::Vector2d gg(g[0], g[1]);
  double m = -std::numeric_limits<double>::infinity();
  for (const auto &p : verts_)
    m = std::max(m, p.dot(gg));
  const Eigen::Vector2d *pick = nullptr;
  for (const auto &p : verts_) {
    if (p.dot(gg) != m)
      continue;
    if (!pick || std::lexicographical_compare(p.data(), p.data() + 2,
                                              pick->data(), pick->data() + 2))
      pick = &p;
  }
  return Vec(*pick);
}

PairPtr gallery_ellipse_pair() {
  Vec w(2);
  w << 0.5, 2.0;
  return std::make_shared<WeightedL2Pair>(w, "gallery-ellipse");
}

PairPtr gallery_skew_pair() {
  std::vector<Eigen::Vector2d> v{{1, 1}, {3, 1}, {-1, -1}, {-3, -1}};
  return std::make_shared<PolygonPair>(v, "gallery-skew");
}

} // namespace pareto
