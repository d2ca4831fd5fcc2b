#include "pareto/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pareto {

namespace {

double h_value(const NormPair &pair, const Vec &c, double x) {
  return pair.norm_y(c - pair.proj_x(c, x));
}

std::vector<double> slopes_of(const std::vector<Point> &p) {
  std::vector<double> s;
  for (size_t k = 0; k + 1 < p.size(); ++k)
    s.push_back((p[k + 1][1] - p[k][1]) / (p[k + 1][0] - p[k][0]));
  return s;
}

} // namespace

double ParetoCurve::y_at(double x) const {
  if (points.empty())
    throw std::invalid_argument("y_at: empty curve");
  if (x <= points.front()[0])
    return points.front()[1];
  if (x >= points.back()[0])
    return points.back()[1];
  auto it = std::upper_bound(points.begin(), points.end(), x,
                             [](double v, const Point &p) { return v < p[0]; });
  const Point &q = *it;
  const Point &p = *(it - 1);
  double t = (x - p[0]) / (q[0] - p[0]);
  return p[1] + t * (q[1] - p[1]);
}

double ParetoCurve::x_at(double y) const {
  if (points.empty())
    throw std::invalid_argument("x_at: empty curve");
  if (y >= points.front()[1])
    return points.front()[0];
  if (y <= points.back()[1])
    return points.back()[0];
  for (size_t k = 0; k + 1 < points.size(); ++k) {
    const Point &p = points[k];
    const Point &q = points[k + 1];
    if (y <= p[1] && y >= q[1]) {
      if (p[1] == q[1])
        return p[0];
      double t = (p[1] - y) / (p[1] - q[1]);
      return p[0] + t * (q[0] - p[0]);
    }
  }
  return points.back()[0];
}

Decomposition solve_m2x(const NormPair &pair, const Vec &c, double x,
                        double tol) {
  double nx = pair.norm_x(c);
  if (x < 0 || x > nx * (1 + 1e-12) + 1e-300)
    throw std::invalid_argument("solve_m2x: radius outside [0, |c|_X]");
  Vec a = pair.proj_x(c, x);
  return check_x2(pair, a, c - a, tol);
}

Decomposition proj_y_radius(const NormPair &pair, const Vec &c, double y,
                            double tol) {
  double ny = pair.norm_y(c);
  if (y < 0 || y > ny * (1 + 1e-12) + 1e-300)
    throw std::invalid_argument("proj_y_radius: level outside [0, |c|_Y]");
  double nx = pair.norm_x(c);
  if (y == 0)
    return check_x2(pair, c, Vec::Zero(c.size()), 1e-9);
  if (y >= ny)
    return check_x2(pair, Vec::Zero(c.size()), c, 1e-9);
  double lo = 0, hi = nx;
  if (h_value(pair, c, hi) > y + tol * (1 + y))
    throw SolverError("proj_y_radius: bisection not bracketing");
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    double h = h_value(pair, c, mid);
    if (std::abs(h - y) <= tol * (1 + y) && it >= 50)
      break;
    (h > y ? lo : hi) = mid;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * nx)
      break;
  }
  Vec a = pair.proj_x(c, mid);
  return check_x2(pair, a, c - a, 1e-9);
}

std::vector<double> uniform_grid(double hi, int n) {
  if (n < 1)
    throw std::invalid_argument("uniform_grid: need at least one interval");
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i)
    g[i] = hi * double(i) / n;
  g[n] = hi;
  return g;
}

ParetoCurve subfrontier(const NormPair &pair, const Vec &c,
                        const std::vector<double> &grid) {
  ParetoCurve cur;
  cur.kind = CurveKind::subfrontier;
  double nx = pair.norm_x(c);
  if (nx == 0) {
    cur.points.push_back({0.0, 0.0});
    return cur;
  }
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("subfrontier: grid must be sorted");
  for (double x : grid) {
    if (x < 0 || x > nx * (1 + 1e-9))
      throw std::invalid_argument("subfrontier: grid outside [0, |c|_X]");
    cur.points.push_back({x, h_value(pair, c, std::min(x, nx))});
  }
  return cur;
}

ParetoCurve subfrontier_adaptive(const NormPair &pair, const Vec &c, int n) {
  double nx = pair.norm_x(c);
  ParetoCurve cur = subfrontier(pair, c, uniform_grid(nx, n));
  if (nx == 0)
    return cur;
  for (int round = 0; round < 3; ++round) {
    std::vector<double> s = slopes_of(cur.points);
    double smax = 0;
    for (double v : s)
      smax = std::max(smax, std::abs(v));
    double tau = 1e-7 * smax;
    std::vector<bool> mark(s.size(), false);
    size_t count = 0;
    for (size_t k = 0; k + 1 < s.size(); ++k)
      if (std::abs(s[k + 1] - s[k]) > tau) {
        mark[k] = mark[k + 1] = true;
      }
    for (bool m : mark)
      count += m;
    if (count == 0 || count > std::max<size_t>(8, s.size() / 8))
      break;
    std::vector<double> xs;
    for (size_t k = 0; k < s.size(); ++k) {
      double x0 = cur.points[k][0], x1 = cur.points[k + 1][0];
      xs.push_back(x0);
      if (mark[k])
        for (int j = 1; j < 10; ++j)
          xs.push_back(x0 + (x1 - x0) * j / 10.0);
    }
    xs.push_back(cur.points.back()[0]);
    cur = subfrontier(pair, c, xs);
  }
  return cur;
}

FrontierPoint frontier_point(const NormPair &pair, const Vec &c, double x,
                             const FrontierOptions &opt, const Vec *warm) {
  FrontierPoint fp;
  double nx = pair.norm_x(c);
  double ny = pair.norm_y(c);
  if (x <= 0) {
    fp.value = fp.lower = ny;
    fp.a = Vec::Zero(c.size());
    fp.converged = true;
    return fp;
  }
  if (x >= nx) {
    fp.value = fp.lower = 0;
    fp.a = c;
    fp.converged = true;
    return fp;
  }
  // Douglas-Rachford on |c - a|_Y + indicator(|a|_X <= x). The prox of the
  // Y-term is v + proj_x(c - v, gamma); its step p / gamma is a dual point.
  const double gamma = 0.5 * nx;
  const double stop = opt.tol * (1 + ny);
  Vec z = warm ? *warm : pair.proj_x(c, x);
  fp.value = std::numeric_limits<double>::infinity();
  fp.lower = -std::numeric_limits<double>::infinity();
  auto lower_bound = [&](const Vec &w) {
    double wx = pair.norm_x(w);
    if (wx == 0)
      return -std::numeric_limits<double>::infinity();
    Vec ww = wx > 1 ? Vec(w / wx) : w;
    return c.dot(ww) - x * pair.norm_y(ww);
  };
  for (int k = 0; k < opt.max_iter; ++k) {
    Vec a = pair.proj_x(z, x);
    double up = pair.norm_y(c - a);
    if (up < fp.value) {
      fp.value = up;
      fp.a = a;
    }
    Vec v = 2 * a - z;
    Vec p = pair.proj_x(c - v, gamma);
    fp.lower = std::max(fp.lower, lower_bound(p / gamma));
    if (k % 16 == 0)
      fp.lower = std::max(fp.lower, lower_bound(pair.dual_argmax(c - a)));
    fp.iterations = k + 1;
    if (fp.value - fp.lower <= stop) {
      fp.converged = true;
      break;
    }
    z += v + p - a;
  }
  return fp;
}

ParetoCurve frontier(const NormPair &pair, const Vec &c,
                     const std::vector<double> &grid,
                     const FrontierOptions &opt) {
  ParetoCurve cur;
  cur.kind = CurveKind::frontier;
  double nx = pair.norm_x(c);
  if (nx == 0) {
    cur.points.push_back({0.0, 0.0});
    cur.gaps.push_back(0.0);
    return cur;
  }
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("frontier: grid must be sorted");
  for (double x : grid) {
    if (x < 0 || x > nx * (1 + 1e-9))
      throw std::invalid_argument("frontier: grid outside [0, |c|_X]");
    FrontierPoint fp = frontier_point(pair, c, x, opt);
    if (!fp.converged)
      cur.flagged.push_back(cur.points.size());
    cur.points.push_back({x, fp.value});
    cur.gaps.push_back(fp.value - fp.lower);
  }
  return cur;
}

double trapezoid_area(const ParetoCurve &curve) {
  double s = 0;
  const auto &p = curve.points;
  for (size_t k = 0; k + 1 < p.size(); ++k)
    s += 0.5 * (p[k + 1][0] - p[k][0]) * (p[k][1] + p[k + 1][1]);
  return s;
}

TightnessReport tightness_test(const NormPair &pair, const Vec &c,
                               const std::vector<double> &grid, double tol) {
  TightnessReport r;
  ParetoCurve h = subfrontier(pair, c, grid);
  ParetoCurve f = frontier(pair, c, grid);
  r.sup_gap = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < h.points.size(); ++k)
    r.sup_gap = std::max(r.sup_gap, h.points[k][1] - f.points[k][1]);
  r.area_h = trapezoid_area(h);
  r.area_f = trapezoid_area(f);
  r.tight = r.sup_gap <= tol;
  double half = 0.5 * c.squaredNorm();
  r.area_ok = std::abs(r.area_h - half) <= 1e-3 * half + 1e-12;
  return r;
}

std::optional<std::vector<Point>> linear_pieces(const std::vector<Point> &pts,
                                                double rel_tol) {
  const size_t N = pts.size();
  if (N < 2)
    return pts;
  std::vector<double> s = slopes_of(pts);
  double smax = 0;
  for (double v : s)
    smax = std::max(smax, std::abs(v));
  const double tau = 1e-6 * smax;
  // Runs of intervals with a common slope, as [begin, end) interval ranges.
  std::vector<std::pair<size_t, size_t>> runs;
  for (size_t k = 0; k < s.size();) {
    size_t e = k + 1;
    while (e < s.size() && std::abs(s[e] - s[k]) <= tau)
      ++e;
    runs.push_back({k, e});
    k = e;
  }
  struct Line {
    double slope, icpt;
    double at(double x) const { return slope * x + icpt; }
  };
  auto fit = [&](std::pair<size_t, size_t> r) {
    size_t p0 = r.first, p1 = r.second;
    if (r.second - r.first >= 3) {
      ++p0;
      --p1;
    }
    double sl = (pts[p1][1] - pts[p0][1]) / (pts[p1][0] - pts[p0][0]);
    return Line{sl, pts[p0][1] - sl * pts[p0][0]};
  };
  if (runs.size() == 1)
    return std::vector<Point>{pts.front(), pts.back()};
  std::vector<size_t> longs;
  for (size_t i = 0; i < runs.size(); ++i)
    if (runs[i].second - runs[i].first >= 2)
      longs.push_back(i);
  if (longs.empty() || longs.front() != 0 || longs.back() != runs.size() - 1)
    return std::nullopt;
  std::vector<Point> verts{pts.front()};
  for (size_t j = 0; j + 1 < longs.size(); ++j) {
    size_t ia = longs[j], ib = longs[j + 1];
    if (ib - ia > 2)
      return std::nullopt;
    Line la = fit(runs[ia]), lb = fit(runs[ib]);
    if (la.slope == lb.slope)
      return std::nullopt;
    double xv = (lb.icpt - la.icpt) / (la.slope - lb.slope);
    double lo = pts[runs[ia].second - (ib - ia == 1 ? 1 : 0)][0];
    double hi = pts[runs[ib].first + (ib - ia == 1 ? 1 : 0)][0];
    double slack = 1e-6 * (pts.back()[0] - pts.front()[0]);
    if (xv < lo - slack || xv > hi + slack)
      return std::nullopt;
    verts.push_back({xv, la.at(xv)});
  }
  verts.push_back(pts.back());
  // Every sample must lie on the reconstructed polyline.
  ParetoCurve pl;
  pl.points = verts;
  double yr = 0;
  for (const auto &p : pts)
    yr = std::max(yr, std::abs(p[1]));
  for (const auto &p : pts)
    if (std::abs(p[1] - pl.y_at(p[0])) > rel_tol * (yr + 1e-300))
      return std::nullopt;
  return verts;
}

SlopeDecomposition slope_decomposition(const NormPair &pair, const Vec &c,
                                       double tol) {
  double nx = pair.norm_x(c);
  if (nx == 0)
    throw std::invalid_argument("slope_decomposition: zero vector");
  double ny = pair.norm_y(c);
  TightnessReport t = tightness_test(pair, c, uniform_grid(nx, 32),
                                     1e-6 * ny);
  if (!t.tight)
    throw NotTightError("slope_decomposition: vector is not tight (gap " +
                        std::to_string(t.sup_gap) + ")");
  ParetoCurve h = subfrontier_adaptive(pair, c, 256);
  auto verts = linear_pieces(h.points);
  if (!verts)
    throw SolverError("slope_decomposition: breakpoint detection unstable");
  SlopeDecomposition s;
  Vec prev = Vec::Zero(c.size());
  for (size_t i = 1; i < verts->size(); ++i) {
    double z = i + 1 == verts->size() ? nx : (*verts)[i][0];
    Vec cur = i + 1 == verts->size() ? c : pair.proj_x(c, z);
    Vec ci = cur - prev;
    prev = cur;
    s.components.push_back(ci);
    s.xs.push_back(pair.norm_x(ci));
    s.ys.push_back(pair.norm_y(ci));
    s.slopes.push_back(s.ys.back() / s.xs.back());
  }
  double viol = gram_violation(s);
  if (viol > std::max(tol, 1e-6))
    throw SolverError("slope_decomposition: Gram condition violated (" +
                      std::to_string(viol) + ")");
  return s;
}

double gram_violation(const SlopeDecomposition &s) {
  double total = 0;
  Vec sum;
  for (const auto &ci : s.components)
    sum = sum.size() ? Vec(sum + ci) : ci;
  total = sum.size() ? sum.squaredNorm() : 0.0;
  double worst = 0;
  for (size_t i = 0; i < s.components.size(); ++i)
    for (size_t j = i; j < s.components.size(); ++j) {
      double d = s.components[i].dot(s.components[j]) - s.xs[i] * s.ys[j];
      worst = std::max(worst, std::abs(d));
    }
  return total > 0 ? worst / total : worst;
}

SVRegion sv_region_from_curve(const ParetoCurve &h) {
  SVRegion r;
  const auto &p = h.points;
  if (p.empty())
    return r;
  r.height = p.front()[1];
  for (size_t k = 0; k + 1 < p.size(); ++k) {
    double dx = p[k + 1][0] - p[k][0];
    double dy = p[k][1] - p[k + 1][1];
    r.total_area += dx;
    r.moment += dx * (p[k][1] + p[k + 1][1]);
    if (dy > 0)
      r.sampled.push_back({0.5 * (p[k][1] + p[k + 1][1]), dx / dy});
  }
  auto verts = linear_pieces(p);
  if (verts && verts->size() >= 2) {
    double prev = 0;
    for (size_t k = 0; k + 1 < verts->size(); ++k) {
      const Point &a = (*verts)[k];
      const Point &b = (*verts)[k + 1];
      double run = (b[0] - a[0]) / (a[1] - b[1]); // -dx/dy on this piece
      r.bars.push_back({a[1], run - prev});
      prev = run;
    }
    r.exact = true;
  }
  return r;
}

SVRegion sv_region(const NormPair &pair, const Vec &c, int n) {
  return sv_region_from_curve(subfrontier_adaptive(pair, c, n));
}

SVRegion sv_region_from_slope(const SlopeDecomposition &s) {
  SVRegion r;
  r.exact = true;
  const size_t m = s.components.size();
  double tail = 0;
  std::vector<double> heights(m);
  for (size_t i = m; i-- > 0;) {
    tail += s.ys[i];
    heights[i] = tail;
  }
  double prev = 0;
  for (size_t i = 0; i < m; ++i) {
    double mu = s.xs[i] / s.ys[i];
    r.bars.push_back({heights[i], mu - prev});
    prev = mu;
    r.total_area += heights[i] * r.bars.back().width;
    r.moment += heights[i] * heights[i] * r.bars.back().width;
  }
  r.height = m ? heights[0] : 0.0;
  return r;
}

AreaReport area_checks(const NormPair &pair, const Vec &c, double x0,
                       const std::vector<double> &grid, double rel_tol) {
  double nx = pair.norm_x(c);
  if (x0 < 0 || x0 > nx * (1 + 1e-12))
    throw std::invalid_argument("area_checks: x0 outside [0, |c|_X]");
  std::vector<double> g = grid;
  g.push_back(x0);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  ParetoCurve h = subfrontier(pair, c, g);
  AreaReport r;
  r.total = trapezoid_area(h);
  double y0 = h.y_at(x0);
  ParetoCurve left, right;
  for (const auto &p : h.points) {
    if (p[0] <= x0)
      left.points.push_back({p[0], p[1] - y0});
    if (p[0] >= x0)
      right.points.push_back(p);
  }
  r.right = trapezoid_area(right);
  r.above = trapezoid_area(left);
  r.rect = x0 * y0;
  Vec a = pair.proj_x(c, x0);
  Vec b = c - a;
  r.half_c2 = 0.5 * c.squaredNorm();
  r.half_b2 = 0.5 * b.squaredNorm();
  r.half_a2 = 0.5 * a.squaredNorm();
  r.ab = a.dot(b);
  double t = rel_tol * (r.half_c2 + 1e-300);
  r.ok = std::abs(r.total - r.half_c2) <= t &&
         std::abs(r.right - r.half_b2) <= t &&
         std::abs(r.above - r.half_a2) <= t && std::abs(r.rect - r.ab) <= t;
  return r;
}

ParetoCurve concat_curves(const ParetoCurve &u, const ParetoCurve &v) {
  auto check = [](const ParetoCurve &w) {
    if (w.points.empty())
      throw std::invalid_argument("concat_curves: empty curve");
    for (size_t k = 0; k + 1 < w.points.size(); ++k)
      if (w.points[k + 1][0] < w.points[k][0] ||
          w.points[k + 1][1] > w.points[k][1])
        throw std::invalid_argument("concat_curves: curve not decreasing");
    if (w.points.back()[1] != 0.0 || w.points.front()[0] != 0.0)
      throw std::invalid_argument("concat_curves: curve must run from x=0 "
                                  "to a zero terminal value");
  };
  check(u);
  check(v);
  ParetoCurve r;
  r.kind = u.kind;
  const double t = u.points.back()[0];
  const double v0 = v.points.front()[1];
  for (const auto &p : u.points)
    r.points.push_back({p[0], p[1] + v0});
  for (size_t k = 1; k < v.points.size(); ++k)
    r.points.push_back({v.points[k][0] + t, v.points[k][1]});
  return r;
}

} // namespace pareto
