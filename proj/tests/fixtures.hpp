#pragma once

// Reference data and independent oracles shared by the unit tests and the
// acceptance runner.

#include "pareto/lp.hpp"
#include "pareto/tv1d.hpp"

#include <array>
#include <limits>
#include <vector>

namespace fixtures {

using pareto::Mat;
using pareto::Vec;

struct SignatureRow {
  std::vector<int> s;
  std::array<double, 3> u;
  bool corrected = false; // printed value differs from Dv
};

/// n = 3 signature sequences and their unitangent vectors. Two rows are
/// stored with the value of the construction u = Dv rather than the printed
/// one, and one printed signature lost an entry: (-1,1,0) is (-1,1,1,0),
/// the negation of (1,-1,-1,0).
inline std::vector<SignatureRow> n3_table() {
  const double t = 2.0 / 3.0;
  struct Row {
    std::vector<std::vector<int>> ss;
    std::array<double, 3> u;
    bool corrected;
  };
  const std::vector<Row> rows = {
      {{{1, 1, 1, -1}, {1, 0, 1, -1}, {0, 1, 1, -1}, {0, 0, 1, -1}}, {0, 0, -2}, false},
      {{{1, 1, 0, -1}, {0, 1, 0, -1}}, {0, -1, -1}, false},
      {{{1, 1, -1, 1}, {0, 1, -1, 1}}, {0, -2, 2}, false},
      {{{1, 1, -1, -1}, {1, 1, -1, 0}, {0, 1, -1, -1}, {0, 1, -1, 0}}, {0, -2, 0}, false},
      {{{1, 0, 0, -1}}, {-t, -t, -t}, false},
      {{{1, 0, -1, 1}}, {-1, -1, 2}, false},
      {{{1, 0, -1, -1}, {1, 0, -1, 0}}, {-1, -1, 0}, false},
      {{{1, -1, 1, 1}, {1, -1, 1, 0}}, {-2, 2, 0}, false},
      {{{1, -1, 1, -1}}, {-2, 2, -2}, false},
      {{{1, -1, 0, 1}}, {-2, 1, 1}, true}, // printed (-1,-1,1)
      {{{1, -1, -1, 1}}, {-2, 0, 2}, false},
      {{{1, -1, -1, -1}, {1, -1, -1, 0}, {1, -1, 0, -1}, {1, -1, 0, 0}}, {-2, 0, 0}, false},
      {{{-1, 1, 1, 1}, {-1, 1, 1, 0}, {-1, 1, 0, 1}, {-1, 1, 0, 0}}, {2, 0, 0}, false},
      {{{-1, 1, 1, -1}}, {2, 0, -2}, false},
      {{{-1, 1, 0, -1}}, {2, -1, -1}, true}, // printed (1,1,-1)
      {{{-1, 1, -1, 1}}, {2, -2, 2}, false},
      {{{-1, 1, -1, -1}, {-1, 1, -1, 0}}, {2, -2, 0}, false},
      {{{-1, 0, 1, 1}, {-1, 0, 1, 0}}, {1, 1, 0}, false},
      {{{-1, 0, 1, -1}}, {1, 1, -2}, false},
      {{{-1, 0, 0, 1}}, {t, t, t}, false},
      {{{-1, -1, 1, 1}, {-1, -1, 1, 0}, {0, -1, 1, 1}, {0, -1, 1, 0}}, {0, 2, 0}, false},
      {{{-1, -1, 1, -1}, {0, -1, 1, -1}}, {0, 2, -2}, false},
      {{{-1, -1, 0, 1}, {0, -1, 0, 1}}, {0, 1, 1}, false},
      {{{-1, -1, -1, 1}, {-1, 0, -1, 1}, {0, -1, -1, 1}, {0, 0, -1, 1}}, {0, 0, 2}, false},
  };
  std::vector<SignatureRow> out;
  for (const auto &r : rows)
    for (const auto &s : r.ss)
      out.push_back({s, r.u, r.corrected});
  return out;
}

/// Coefficients of (2+t)^(n+1) - 2(1+t)^(n+1) + t^(n+1) + t^n, lowest first,
/// by repeated polynomial multiplication.
inline std::vector<long long> face_polynomial(int n) {
  auto power = [](std::vector<long long> base, int e) {
    std::vector<long long> r{1};
    for (int k = 0; k < e; ++k) {
      std::vector<long long> next(r.size() + base.size() - 1, 0);
      for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < base.size(); ++j)
          next[i + j] += r[i] * base[j];
      r = next;
    }
    return r;
  };
  std::vector<long long> h = power({2, 1}, n + 1);
  std::vector<long long> one = power({1, 1}, n + 1);
  for (size_t i = 0; i < one.size(); ++i)
    h[i] -= 2 * one[i];
  h[n + 1] += 1;
  h[n] += 1;
  while (!h.empty() && h.back() == 0)
    h.pop_back();
  return h;
}

/// min |D* D a|_1 subject to |c - a|_inf <= eps, as a dense LP.
inline double taut_string_lp(const Vec &c, double eps) {
  const int m = int(c.size());
  if (m < 2)
    return 0;
  const int n = m - 1;
  Mat DD(n + 1, m);
  for (int i = 0; i < m; ++i)
    DD.col(i) = pareto::diff_adjoint(pareto::diff(Vec::Unit(m, i)));
  const int N = m + n + 1;
  pareto::LpProblem p;
  p.c = Vec::Zero(N);
  p.c.tail(n + 1).setOnes();
  p.A_ub = Mat::Zero(2 * (n + 1), N);
  p.b_ub = Vec::Zero(2 * (n + 1));
  p.A_ub.block(0, 0, n + 1, m) = DD;
  p.A_ub.block(0, m, n + 1, n + 1) = -Mat::Identity(n + 1, n + 1);
  p.A_ub.block(n + 1, 0, n + 1, m) = -DD;
  p.A_ub.block(n + 1, m, n + 1, n + 1) = -Mat::Identity(n + 1, n + 1);
  p.lo.resize(N);
  p.hi.resize(N);
  p.lo.head(m) = c.array() - eps;
  p.hi.head(m) = c.array() + eps;
  p.lo.tail(n + 1).setZero();
  p.hi.tail(n + 1).setConstant(std::numeric_limits<double>::infinity());
  return pareto::solve_lp_or_throw(p, "taut string oracle").value;
}

/// Euclidean projection of c onto the convex hull of the columns of P, by
/// enumerating affinely independent subsets of at most dim+1 points and
/// keeping the closest candidate with nonnegative barycentric weights.
inline Vec project_onto_hull(const Mat &P, const Vec &c) {
  const int m = int(P.rows()), k = int(P.cols());
  Vec best = P.col(0);
  double best_d = (c - best).squaredNorm();
  std::vector<int> idx;
  auto visit = [&](auto &&self, int start) -> void {
    if (!idx.empty()) {
      const int s = int(idx.size());
      Vec p0 = P.col(idx[0]);
      Vec cand = p0;
      bool ok = true;
      if (s > 1) {
        Mat E(m, s - 1);
        for (int j = 1; j < s; ++j)
          E.col(j - 1) = P.col(idx[j]) - p0;
        Eigen::ColPivHouseholderQR<Mat> qr(E);
        if (qr.rank() < s - 1)
          return; // supersets of a dependent set are dependent too
        {
          Vec mu = qr.solve(c - p0);
          if ((mu.array() < -1e-12).any() || mu.sum() > 1 + 1e-12)
            ok = false;
          else
            cand = p0 + E * mu;
        }
      }
      if (ok && (c - cand).squaredNorm() < best_d) {
        best_d = (c - cand).squaredNorm();
        best = cand;
      }
    }
    if (int(idx.size()) == m + 1)
      return;
    for (int j = start; j < k; ++j) {
      idx.push_back(j);
      self(self, j + 1);
      idx.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

/// Projection onto {D v : |v|_1 <= x}, the hull of 0 and +-x D e_i.
inline Vec project_quotient_l1(const Mat &D, const Vec &c, double x) {
  const int n = int(D.cols());
  Mat P(D.rows(), 2 * n + 1);
  P.col(0).setZero();
  for (int i = 0; i < n; ++i) {
    P.col(1 + 2 * i) = x * D.col(i);
    P.col(2 + 2 * i) = -x * D.col(i);
  }
  return project_onto_hull(P, c);
}

/// min |v|_1 subject to D v = c, by an LP on v = p - q.
inline double quotient_l1_norm(const Mat &D, const Vec &c) {
  const int n = int(D.cols());
  pareto::LpProblem p;
  p.c = Vec::Ones(2 * n);
  p.A_eq.resize(D.rows(), 2 * n);
  p.A_eq << D, -D;
  p.b_eq = c;
  return pareto::solve_lp_or_throw(p, "quotient oracle").value;
}

} // namespace fixtures
