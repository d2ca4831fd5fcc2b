#include "pareto/matrix.hpp"

#include "pareto/l1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pareto {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>;

// Columns of G are rotated until pairwise orthogonal; V accumulates the
// rotations so that A V = G.
SvdResult jacobi_tall(const Mat &A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  Mat G = A;
  Mat V = Mat::Identity(n, n);
  const double eps = std::numeric_limits<double>::epsilon();
  int sweeps = 0;
  for (; sweeps < 80; ++sweeps) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double alpha = G.col(p).squaredNorm();
        double beta = G.col(q).squaredNorm();
        double gamma = G.col(p).dot(G.col(q));
        if (alpha == 0 || beta == 0 ||
            std::abs(gamma) <= eps * std::sqrt(alpha * beta))
          continue;
        rotated = true;
        double zeta = (beta - alpha) / (2 * gamma);
        double t = (zeta >= 0 ? 1.0 : -1.0) /
                   (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        double cs = 1 / std::sqrt(1 + t * t), sn = cs * t;
        for (Eigen::Index i = 0; i < m; ++i) {
          double gp = G(i, p), gq = G(i, q);
          G(i, p) = cs * gp - sn * gq;
          G(i, q) = sn * gp + cs * gq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          double vp = V(i, p), vq = V(i, q);
          V(i, p) = cs * vp - sn * vq;
          V(i, q) = sn * vp + cs * vq;
        }
      }
    if (!rotated)
      break;
  }
  Vec s(n);
  for (Eigen::Index j = 0; j < n; ++j)
    s[j] = G.col(j).norm();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return s[a] > s[b]; });
  SvdResult r;
  r.sweeps = sweeps;
  r.s.resize(n);
  r.W.resize(m, n);
  r.U.resize(n, n);
  double smax = n ? s[order[0]] : 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    r.s[j] = s[order[j]];
    r.U.col(j) = V.col(order[j]);
    if (r.s[j] > smax * eps * double(std::max(m, n)) && r.s[j] > 0) {
      r.W.col(j) = G.col(order[j]) / r.s[j];
    } else {
      r.W.col(j).setZero();
    }
  }
  // Complete W to orthonormal columns where the singular value vanished.
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r.W.col(j).squaredNorm() > 0.5)
      continue;
    for (Eigen::Index e = 0; e < m; ++e) {
      Vec cand = Vec::Unit(m, e);
      for (Eigen::Index k = 0; k < n; ++k)
        if (k != j && r.W.col(k).squaredNorm() > 0.5)
          cand -= r.W.col(k).dot(cand) * r.W.col(k);
      double nn = cand.norm();
      if (nn > 0.5) {
        r.W.col(j) = cand / nn;
        break;
      }
    }
  }
  return r;
}

} // namespace

SvdResult jacobi_svd(const Mat &A) {
  if (A.rows() >= A.cols())
    return jacobi_tall(A);
  SvdResult t = jacobi_tall(A.transpose());
  std::swap(t.W, t.U);
  return t;
}

SvGroups svd(const Mat &A, double tol) {
  SvdResult r = jacobi_svd(A);
  SvGroups g;
  const Eigen::Index k = r.s.size();
  const double eps = std::numeric_limits<double>::epsilon();
  double smax = k ? r.s[0] : 0.0;
  double zero = smax * eps * double(std::max(A.rows(), A.cols())) * 4;
  Eigen::Index rank = 0;
  while (rank < k && r.s[rank] > zero && r.s[rank] > 0)
    ++rank;
  g.W = r.W.leftCols(rank);
  g.U = r.U.leftCols(rank);
  Eigen::Index i = 0;
  while (i < rank) {
    Eigen::Index j = i + 1;
    while (j < rank && (r.s[i] - r.s[j]) <= tol * r.s[i])
      ++j;
    g.lambdas.push_back(r.s.segment(i, j - i).mean());
    g.mults.push_back(static_cast<int>(j - i));
    i = j;
  }
  return g;
}

Mat to_mat(const Vec &v, int rows, int cols) {
  if (v.size() != Eigen::Index(rows) * cols)
    throw std::invalid_argument("to_mat: size mismatch");
  return Eigen::Map<const RowMat>(v.data(), rows, cols);
}

Vec to_vec(const Mat &M) {
  RowMat r = M;
  return Eigen::Map<const Vec>(r.data(), r.size());
}

Mat NuclearSpectralPair::shape(const Vec &v) const {
  if (v.size() != Eigen::Index(m_) * n_)
    throw std::invalid_argument("matrix pair: expected " + std::to_string(m_) +
                                "x" + std::to_string(n_) + " entries");
  return to_mat(v, m_, n_);
}

double NuclearSpectralPair::norm_x(const Vec &v) const {
  return nuclear_norm(shape(v));
}

double NuclearSpectralPair::norm_y(const Vec &v) const {
  return spectral_norm(shape(v));
}

Vec NuclearSpectralPair::proj_x(const Vec &c, double radius) const {
  if (radius < 0)
    throw std::invalid_argument("proj_x: negative radius");
  Mat C = shape(c);
  SvdResult r = jacobi_svd(C);
  if (r.s.sum() <= radius)
    return c;
  Vec lam = project_l1_ball(r.s, radius);
  return to_vec(r.W * lam.asDiagonal() * r.U.transpose());
}

Vec NuclearSpectralPair::dual_argmax(const Vec &g) const {
  Mat G = shape(g);
  SvdResult r = jacobi_svd(G);
  if (r.s.size() == 0 || r.s[0] == 0) {
    Mat E = Mat::Zero(m_, n_);
    E(0, 0) = 1;
    return to_vec(E);
  }
  return to_vec(r.W.col(0) * r.U.col(0).transpose());
}

PairPtr nuclear_spectral_pair(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("nuclear_spectral_pair: empty shape");
  return std::make_shared<NuclearSpectralPair>(rows, cols);
}

double nuclear_norm(const Mat &A) { return jacobi_svd(A).s.sum(); }

double spectral_norm(const Mat &A) {
  Vec s = jacobi_svd(A).s;
  return s.size() ? s[0] : 0.0;
}

Mat sigma_dual_witness(const Mat &A) {
  SvGroups g = svd(A);
  return g.W * g.U.transpose();
}

Decomposition sv_soft_threshold(const Mat &C, double y) {
  if (y < 0)
    throw std::invalid_argument("sv_soft_threshold: negative level");
  SvGroups g = svd(C);
  Vec d(g.rank());
  double x = 0;
  Eigen::Index k = 0;
  for (size_t i = 0; i < g.lambdas.size(); ++i) {
    double v = std::max(g.lambdas[i] - y, 0.0);
    x += g.mults[i] * v;
    for (int j = 0; j < g.mults[i]; ++j)
      d[k++] = v;
  }
  Mat A = g.W * d.asDiagonal() * g.U.transpose();
  Decomposition r;
  r.a = to_vec(A);
  r.b = to_vec(C) - r.a;
  r.x = x;
  r.y = g.lambdas.empty() ? 0.0 : std::min(y, g.lambdas[0]);
  r.inner = r.a.dot(r.b);
  r.gap = r.x * r.y - r.inner;
  r.certified = std::abs(r.gap) <= 1e-9 * (1 + r.x * r.y);
  return r;
}

Mat sv_hard_threshold(const Mat &C, double y) {
  if (y < 0)
    throw std::invalid_argument("sv_hard_threshold: negative level");
  SvGroups g = svd(C);
  Vec d(g.rank());
  Eigen::Index k = 0;
  for (size_t i = 0; i < g.lambdas.size(); ++i)
    for (int j = 0; j < g.mults[i]; ++j)
      d[k++] = g.lambdas[i] > y ? g.lambdas[i] : 0.0;
  return g.W * d.asDiagonal() * g.U.transpose();
}

SlopeDecomposition matrix_slope_decomposition(const Mat &C, double tol) {
  SvGroups g = svd(C, tol);
  if (g.lambdas.empty())
    throw std::invalid_argument("matrix_slope_decomposition: zero matrix");
  SlopeDecomposition s;
  int k = 0;
  for (size_t j = 0; j < g.lambdas.size(); ++j) {
    double next = j + 1 < g.lambdas.size() ? g.lambdas[j + 1] : 0.0;
    double step = g.lambdas[j] - next;
    k += g.mults[j];
    Mat Cj = step * g.W.leftCols(k) * g.U.leftCols(k).transpose();
    s.components.push_back(to_vec(Cj));
    s.xs.push_back(step * k);
    s.ys.push_back(step);
    s.slopes.push_back(1.0 / k);
  }
  return s;
}

ParetoCurve matrix_frontier(const Mat &C) {
  SvGroups g = svd(C);
  ParetoCurve cur;
  cur.kind = CurveKind::frontier;
  cur.orientation = Orientation::x_of_y;
  if (g.lambdas.empty()) {
    cur.points.push_back({0.0, 0.0});
    return cur;
  }
  cur.points.push_back({0.0, g.lambdas[0]});
  double x = 0;
  int k = 0;
  for (size_t i = 0; i < g.lambdas.size(); ++i) {
    k += g.mults[i];
    double next = i + 1 < g.lambdas.size() ? g.lambdas[i + 1] : 0.0;
    x += k * (g.lambdas[i] - next);
    cur.points.push_back({x, next});
    if (i + 1 < g.lambdas.size())
      cur.breakpoints.push_back(cur.points.size() - 1);
  }
  return cur;
}

SVRegion matrix_sv_region(const Mat &C) {
  SvGroups g = svd(C);
  SVRegion r;
  r.exact = true;
  for (size_t i = 0; i < g.lambdas.size(); ++i) {
    r.bars.push_back({g.lambdas[i], double(g.mults[i])});
    r.total_area += g.lambdas[i] * g.mults[i];
    r.moment += g.lambdas[i] * g.lambdas[i] * g.mults[i];
  }
  r.height = g.lambdas.empty() ? 0.0 : g.lambdas[0];
  return r;
}

} // namespace pareto
