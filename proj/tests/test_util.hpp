#pragma once

#include "pareto/core.hpp"

#include <random>

namespace testutil {

using pareto::Mat;
using pareto::Vec;
using Rng = std::mt19937_64;

inline Vec randn(int n, Rng &g) {
  std::normal_distribution<double> d;
  Vec v(n);
  for (int i = 0; i < n; ++i)
    v[i] = d(g);
  return v;
}

inline Mat randn(int r, int c, Rng &g) {
  std::normal_distribution<double> d;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m(i, j) = d(g);
  return m;
}

inline double uniform(double lo, double hi, Rng &g) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(int lo, int hi, Rng &g) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline Mat random_orthogonal(int n, Rng &g) {
  Eigen::HouseholderQR<Mat> qr(randn(n, n, g));
  return qr.householderQ() * Mat::Identity(n, n);
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

} // namespace testutil
