#include "pareto/tensor.hpp"

#include "pareto/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>

namespace pareto {

namespace {

constexpr Eigen::Index kSizeCap = 10000;

Eigen::Index product(const std::vector<int> &d) {
  Eigen::Index s = 1;
  for (int v : d) {
    if (v < 1)
      throw std::invalid_argument("tensor: dimensions must be positive");
    s *= v;
    if (s > 100 * kSizeCap)
      throw std::invalid_argument("tensor: size cap exceeded");
  }
  return s;
}

// Calls f(flat, idx) for every entry in storage order.
template <class F> void for_each_index(const std::vector<int> &dims, F f) {
  std::vector<int> idx(dims.size(), 0);
  const Eigen::Index n = product(dims);
  for (Eigen::Index flat = 0; flat < n; ++flat) {
    f(flat, idx);
    for (int k = int(dims.size()) - 1; k >= 0; --k) {
      if (++idx[k] < dims[k])
        break;
      idx[k] = 0;
    }
  }
}

Vec random_unit(std::mt19937_64 &rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i)
      v[i] = N(rng);
  } while (v.norm() == 0);
  return v / v.norm();
}

double eval_rank1(const Tensor &T, const std::vector<Vec> &u) {
  return contract_except(T, u, 0).dot(u[0]);
}

bool symmetric_222(const Tensor &T) {
  if (T.dims != std::vector<int>{2, 2, 2})
    return false;
  const double tol = 1e-14 * (1 + T.data.cwiseAbs().maxCoeff());
  auto e = [&](int i, int j, int k) { return T.at({i, j, k}); };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (std::abs(e(i, j, k) - e(j, i, k)) > tol ||
            std::abs(e(i, j, k) - e(i, k, j)) > tol)
          return false;
  return true;
}

// Symmetric maximizer v (x) v (x) v over the circle: grid, then golden
// section on the best bracket.
SpectralResult symmetric_search(const Tensor &T) {
  auto f = [&](double th) {
    Vec v(2);
    v << std::cos(th), std::sin(th);
    return std::abs(eval_rank1(T, {v, v, v}));
  };
  const int G = 4096;
  const double pi = std::acos(-1.0);
  int best = 0;
  double bv = -1;
  for (int i = 0; i < G; ++i) {
    double v = f(pi * i / G);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  double a = pi * (best - 1) / G, b = pi * (best + 1) / G;
  const double r = 0.5 * (std::sqrt(5.0) - 1);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  double th = f1 > f2 ? x1 : x2;
  if (bv > std::max(f1, f2))
    th = pi * best / G;
  Vec v(2);
  v << std::cos(th), std::sin(th);
  SpectralResult res;
  res.factors = {v, v, v};
  return res;
}

} // namespace

Tensor::Tensor(std::vector<int> d) : dims(std::move(d)) {
  data = Vec::Zero(product(dims));
}

Tensor::Tensor(std::vector<int> d, Vec entries)
    : dims(std::move(d)), data(std::move(entries)) {
  if (data.size() != product(dims))
    throw std::invalid_argument("tensor: entry count does not match dims");
  if (!data.allFinite())
    throw std::invalid_argument("tensor: non-finite entry");
}

Eigen::Index Tensor::offset(const std::vector<int> &idx) const {
  if (idx.size() != dims.size())
    throw std::invalid_argument("tensor: index order mismatch");
  Eigen::Index off = 0;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dims[k])
      throw std::out_of_range("tensor: index out of range");
    off = off * dims[k] + idx[k];
  }
  return off;
}

Tensor outer(const std::vector<Vec> &factors) {
  if (factors.empty())
    throw std::invalid_argument("outer: no factors");
  std::vector<int> dims;
  for (const Vec &f : factors)
    dims.push_back(int(f.size()));
  Tensor T(dims);
  for_each_index(dims, [&](Eigen::Index flat, const std::vector<int> &idx) {
    double p = 1;
    for (size_t k = 0; k < idx.size(); ++k)
      p *= factors[k][idx[k]];
    T.data[flat] = p;
  });
  return T;
}

double tensor_inner(const Tensor &a, const Tensor &b) {
  if (a.dims != b.dims)
    throw std::invalid_argument("tensor_inner: shape mismatch");
  return a.data.dot(b.data);
}

Vec contract_except(const Tensor &T, const std::vector<Vec> &u, int k) {
  if (int(u.size()) != T.order() || k < 0 || k >= T.order())
    throw std::invalid_argument("contract_except: factor count mismatch");
  for (int m = 0; m < T.order(); ++m)
    if (u[m].size() != T.dims[m])
      throw std::invalid_argument("contract_except: factor size mismatch");
  Vec out = Vec::Zero(T.dims[k]);
  for_each_index(T.dims, [&](Eigen::Index flat, const std::vector<int> &idx) {
    double p = T.data[flat];
    if (p == 0)
      return;
    for (int m = 0; m < T.order(); ++m)
      if (m != k)
        p *= u[m][idx[m]];
    out[idx[k]] += p;
  });
  return out;
}

Mat unfold(const Tensor &T, int k) {
  const Eigen::Index cols = T.size() / T.dims[k];
  Mat M = Mat::Zero(T.dims[k], cols);
  std::vector<Eigen::Index> next(T.dims[k], 0);
  for_each_index(T.dims, [&](Eigen::Index flat, const std::vector<int> &idx) {
    M(idx[k], next[idx[k]]++) = T.data[flat];
  });
  return M;
}

std::uint64_t pareto_seed() {
  if (const char *s = std::getenv("PARETO_SEED")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0')
      return v;
  }
  return 20240601ULL;
}

SpectralResult tensor_spectral_norm(const Tensor &T, int starts, int iters,
                                    std::uint64_t seed) {
  if (T.order() < 1)
    throw std::invalid_argument("spectral_norm: empty tensor");
  if (T.size() > kSizeCap)
    throw std::invalid_argument("spectral_norm: size cap (1e4) exceeded");
  if (starts < 1 || iters < 1)
    throw std::invalid_argument("spectral_norm: need starts and iterations");
  const int d = T.order();
  SpectralResult best;
  best.value = -1;
  if (T.data.cwiseAbs().maxCoeff() == 0) {
    best.value = 0;
    for (int k = 0; k < d; ++k)
      best.factors.push_back(Vec::Unit(T.dims[k], 0));
    return best;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < starts; ++s) {
    std::vector<Vec> u(d);
    for (int k = 0; k < d; ++k) {
      if (s == 0) { // leading singular vectors of the unfoldings
        SvdResult r = jacobi_svd(unfold(T, k));
        u[k] = r.W.col(0);
      } else {
        u[k] = random_unit(rng, T.dims[k]);
      }
    }
    double prev = -1, val = 0;
    for (int it = 0; it < iters; ++it) {
      for (int k = 0; k < d; ++k) {
        Vec g = contract_except(T, u, k);
        double n = g.norm();
        if (n == 0)
          break;
        u[k] = g / n;
        val = n;
      }
      if (std::abs(val - prev) <= 1e-12 * val)
        break;
      prev = val;
    }
    double v = std::abs(eval_rank1(T, u));
    if (v > best.value) {
      best.value = v;
      best.factors = u;
      best.start = s;
    }
  }
  if (d == 3 && symmetric_222(T)) {
    SpectralResult ex = symmetric_search(T);
    double v = std::abs(eval_rank1(T, ex.factors));
    if (v > best.value) {
      best.value = v;
      best.factors = ex.factors;
      best.start = -1;
    }
  }
  if (eval_rank1(T, best.factors) < 0)
    best.factors[0] = -best.factors[0];
  best.value = eval_rank1(T, best.factors);
  return best;
}

Tensor f_t(double t) {
  Tensor T({2, 2, 2});
  T.at({1, 0, 0}) = 1;
  T.at({0, 1, 0}) = 1;
  T.at({0, 0, 1}) = 1;
  T.at({1, 1, 1}) = t;
  return T;
}

FtNorms ft_norms(double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("ft_norms: t must be finite");
  FtNorms r;
  r.sigma = (t >= 2 || t <= -1) ? std::abs(t) : 2 / std::sqrt(3 - t);
  r.nuclear = t <= 1.0 / 3 ? 3 - t : std::pow(1 + t, 1.5) / std::sqrt(t);
  r.euclid = f_t(t).data.norm();
  return r;
}

double ft_rank2_value(double t) {
  if (!(t > 0))
    throw std::invalid_argument("ft_rank2_value: t must be positive");
  return std::pow(1 + t, 1.5) / std::sqrt(t);
}

double ft_certificate_s(double t) {
  if (!(t > 0))
    throw std::invalid_argument("ft_certificate_s: t must be positive");
  return 2 - 1 / t;
}

ParetoCurve ft_subfrontier(int samples) {
  if (samples < 2)
    throw std::invalid_argument("ft_subfrontier: need at least 2 samples");
  ParetoCurve cur;
  cur.kind = CurveKind::subfrontier;
  cur.orientation = Orientation::x_of_y;
  for (int i = 0; i <= samples; ++i) {
    double t = (1.0 / 3) * i / samples;
    cur.points.push_back({(3 - t) / (t + 1), t / (1 + t)});
  }
  for (int i = 1; i <= samples; ++i) {
    double t = 1.0 / 3 + (1.0 / 6) * i / samples;
    double om = (1 - t) * (1 - t);
    cur.points.push_back({(1 - 2 * t) * std::pow(1 + t, 1.5) /
                              (om * std::sqrt(t)),
                          2 * std::pow(t, 2.5) / (om * std::sqrt(1 + t))});
  }
  std::sort(cur.points.begin(), cur.points.end());
  for (size_t k = 0; k < cur.points.size(); ++k)
    if (cur.points[k][1] == 0.25) // junction at t = 1/3
      cur.breakpoints.push_back(k);
  return cur;
}

KnownTensor matmul_tensor(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1)
    throw std::invalid_argument("matmul_tensor: sizes must be positive");
  if (Eigen::Index(p) * q * q * r * r * p > kSizeCap)
    throw std::invalid_argument("matmul_tensor: size cap exceeded");
  KnownTensor k;
  k.name = "T_" + std::to_string(p) + std::to_string(q) + std::to_string(r);
  k.T = Tensor({p * q, q * r, r * p});
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int l = 0; l < r; ++l)
        k.T.at({i * q + j, j * r + l, l * p + i}) = 1;
  k.sigma = 1;
  k.nuclear = double(p) * q * r;
  return k;
}

namespace {

KnownTensor perm_family(int n, bool sign, const char *name) {
  if (n < 1)
    throw std::invalid_argument(std::string(name) + ": n must be positive");
  Eigen::Index size = 1;
  for (int i = 0; i < n; ++i)
    size *= n;
  if (size > kSizeCap)
    throw std::invalid_argument(std::string(name) + ": size cap exceeded");
  KnownTensor k;
  k.name = name + std::to_string(n);
  k.T = Tensor(std::vector<int>(n, n));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double fact = 1;
  for (int i = 2; i <= n; ++i)
    fact *= i;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        inv += perm[i] > perm[j];
    k.T.at(perm) = sign && (inv % 2) ? -1.0 : 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (sign) {
    k.sigma = 1;
    k.nuclear = fact;
  } else {
    k.sigma = fact / std::pow(n, 0.5 * n);
    k.nuclear = std::pow(n, 0.5 * n);
  }
  return k;
}

} // namespace

KnownTensor det_tensor(int n) { return perm_family(n, true, "det_"); }
KnownTensor perm_tensor(int n) { return perm_family(n, false, "perm_"); }

std::vector<KnownTensor> known_tensors() {
  return {matmul_tensor(2, 2, 2), matmul_tensor(2, 2, 3), det_tensor(2),
          det_tensor(3),          perm_tensor(2),         perm_tensor(3)};
}

SlopeDecomposition dsvd_to_slope(const Dsvd &d, double tol) {
  const size_t r = d.lambdas.size();
  if (r == 0 || d.factors.size() != r)
    throw std::invalid_argument("dsvd_to_slope: lambdas and factors differ");
  for (size_t i = 0; i < r; ++i) {
    if (!(d.lambdas[i] > 0))
      throw std::invalid_argument("dsvd_to_slope: lambdas must be positive");
    if (i && d.lambdas[i] > d.lambdas[i - 1])
      throw std::invalid_argument("dsvd_to_slope: lambdas not sorted");
    for (const Vec &f : d.factors[i])
      if (std::abs(f.norm() - 1) > 1e-12)
        throw PreconditionError("dsvd_to_slope: factors must be unit");
  }
  std::vector<Tensor> vs;
  for (const auto &f : d.factors)
    vs.push_back(outer(f));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j)
      if (vs[i].dims != vs[j].dims ||
          std::abs(tensor_inner(vs[i], vs[j])) > tol)
        throw PreconditionError("dsvd_to_slope: terms not orthogonal");
  // Group equal singular values; w_i is the sum of the group's terms.
  std::vector<double> lam;
  std::vector<int> mult;
  std::vector<Vec> w;
  for (size_t i = 0; i < r; ++i) {
    if (lam.empty() || d.lambdas[i] != lam.back()) {
      lam.push_back(d.lambdas[i]);
      mult.push_back(0);
      w.push_back(Vec::Zero(vs[i].size()));
    }
    ++mult.back();
    w.back() += vs[i].data;
  }
  SlopeDecomposition s;
  Vec acc = Vec::Zero(w[0].size());
  int k = 0;
  for (size_t i = 0; i < lam.size(); ++i) {
    acc += w[i];
    k += mult[i];
    double step = lam[i] - (i + 1 < lam.size() ? lam[i + 1] : 0.0);
    s.components.push_back(step * acc);
    s.xs.push_back(step * k);
    s.ys.push_back(step);
    s.slopes.push_back(1.0 / k);
  }
  if (gram_violation(s) > tol)
    throw PreconditionError("dsvd_to_slope: Gram condition fails");
  return s;
}

namespace {

std::vector<std::pair<double, double>>
group_bars(const std::vector<std::pair<int, int>> &dm) {
  if (dm.empty())
    throw std::invalid_argument("group algebra: no representations");
  long long n = 0;
  for (auto [dd, m] : dm) {
    if (dd < 1 || m < 1)
      throw std::invalid_argument("group algebra: bad dimension data");
    n += (long long)m * dd * dd;
  }
  // Singular value sqrt(n/d) with multiplicity m_d d^3.
  std::map<double, double, std::greater<double>> bars;
  for (auto [dd, m] : dm)
    bars[std::sqrt(double(n) / dd)] += double(m) * dd * dd * dd;
  return {bars.begin(), bars.end()};
}

} // namespace

ParetoCurve group_algebra_frontier(const std::vector<std::pair<int, int>> &dm) {
  auto bars = group_bars(dm);
  ParetoCurve cur;
  cur.kind = CurveKind::frontier;
  cur.orientation = Orientation::x_of_y;
  auto x_of = [&](double y) {
    double x = 0;
    for (auto [lam, w] : bars)
      x += w * std::max(lam - y, 0.0);
    return x;
  };
  for (auto [lam, w] : bars) {
    (void)w;
    cur.points.push_back({x_of(lam), lam});
  }
  cur.points.push_back({x_of(0), 0.0});
  for (size_t k = 1; k + 1 < cur.points.size(); ++k)
    cur.breakpoints.push_back(k);
  return cur;
}

SVRegion group_algebra_region(const std::vector<std::pair<int, int>> &dm) {
  SVRegion r;
  r.exact = true;
  for (auto [lam, w] : group_bars(dm)) {
    r.bars.push_back({lam, w});
    r.total_area += lam * w;
    r.moment += lam * lam * w;
    r.height = std::max(r.height, lam);
  }
  return r;
}

OrthoCheck t_orthogonality_check(const std::vector<std::vector<Vec>> &vs,
                                 double t, int starts, std::uint64_t seed) {
  if (vs.empty())
    throw std::invalid_argument("t_orthogonality_check: no tensors");
  if (!(t > 0))
    throw std::invalid_argument("t_orthogonality_check: t must be positive");
  const size_t d = vs[0].size();
  for (const auto &v : vs) {
    if (v.size() != d)
      throw std::invalid_argument("t_orthogonality_check: order mismatch");
    for (size_t k = 0; k < d; ++k) {
      if (v[k].size() != vs[0][k].size())
        throw std::invalid_argument("t_orthogonality_check: shape mismatch");
      if (std::abs(v[k].norm() - 1) > 1e-12)
        throw PreconditionError("t_orthogonality_check: factors must be unit");
    }
  }
  const double p = 2 / t;
  auto value = [&](const std::vector<Vec> &w) {
    double s = 0;
    for (const auto &v : vs) {
      double z = 1;
      for (size_t k = 0; k < d; ++k)
        z *= v[k].dot(w[k]);
      s += std::pow(std::abs(z), p);
    }
    return s;
  };
  std::vector<std::vector<Vec>> inits;
  for (const auto &v : vs)
    inits.push_back(v);
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j) {
      std::vector<Vec> w(d);
      for (size_t k = 0; k < d; ++k) {
        Vec m = vs[i][k] + vs[j][k];
        w[k] = m.norm() > 1e-12 ? Vec(m / m.norm()) : vs[i][k];
      }
      inits.push_back(w);
    }
  std::mt19937_64 rng(seed);
  while (int(inits.size()) < starts) {
    std::vector<Vec> w(d);
    for (size_t k = 0; k < d; ++k)
      w[k] = random_unit(rng, int(vs[0][k].size()));
    inits.push_back(w);
  }
  OrthoCheck res;
  res.max_found = -1;
  for (auto w : inits) {
    double prev = value(w);
    for (int it = 0; it < 200; ++it) {
      for (size_t k = 0; k < d; ++k) {
        Vec g = Vec::Zero(w[k].size());
        for (const auto &v : vs) {
          double beta = 1;
          for (size_t l = 0; l < d; ++l)
            if (l != k)
              beta *= v[l].dot(w[l]);
          double z = beta * v[k].dot(w[k]);
          if (z == 0)
            continue;
          g += p * std::pow(std::abs(z), p - 1) * (z > 0 ? 1 : -1) * beta *
               v[k];
        }
        if (g.norm() > 0)
          w[k] = g / g.norm();
      }
      double cur = value(w);
      if (std::abs(cur - prev) <= 1e-14 * (1 + cur))
        break;
      prev = cur;
    }
    double v = value(w);
    if (v > res.max_found) {
      res.max_found = v;
      res.witness = w;
    }
  }
  res.pass = res.max_found <= 1 + 1e-6;
  return res;
}

} // namespace pareto
