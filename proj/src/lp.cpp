#include "pareto/lp.hpp"

#include <cmath>
#include <limits>

namespace pareto {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

enum class VarKind { shifted, mirrored, split };

struct VarMap {
  VarKind kind;
  Eigen::Index col; // first standard-form column
  double offset;    // lo for shifted, hi for mirrored
};

class Tableau {
public:
  Tableau(Mat T, std::vector<Eigen::Index> basis, Eigen::Index n_allowed,
          double tol)
      : T_(std::move(T)), basis_(std::move(basis)), allowed_(n_allowed),
        tol_(tol) {}

  Mat &T() { return T_; }
  std::vector<Eigen::Index> &basis() { return basis_; }
  int pivots() const { return pivots_; }

  void pivot(Eigen::Index r, Eigen::Index s) {
    T_.row(r) /= T_(r, s);
    for (Eigen::Index i = 0; i < T_.rows(); ++i)
      if (i != r && T_(i, s) != 0)
        T_.row(i) -= T_(i, s) * T_.row(r);
    basis_[r] = s;
    ++pivots_;
  }

  // Objective is the last row; returns the final status.
  LpStatus run(int max_pivots) {
    const Eigen::Index m = T_.rows() - 1, rhs = T_.cols() - 1;
    int degenerate = 0;
    for (int it = 0; it < max_pivots; ++it) {
      const bool bland = degenerate > 50;
      Eigen::Index s = -1;
      double best = -tol_;
      for (Eigen::Index j = 0; j < allowed_; ++j) {
        double d = T_(m, j);
        if (d < best) {
          s = j;
          best = d;
          if (bland)
            break;
        }
      }
      if (s < 0)
        return LpStatus::optimal;
      Eigen::Index r = -1;
      double ratio = inf;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T_(i, s) <= tol_)
          continue;
        double q = T_(i, rhs) / T_(i, s);
        if (q < ratio - tol_ ||
            (q <= ratio + tol_ && r >= 0 && basis_[i] < basis_[r])) {
          ratio = std::min(q, ratio);
          r = i;
        }
      }
      if (r < 0)
        return LpStatus::unbounded;
      degenerate = ratio <= tol_ ? degenerate + 1 : 0;
      pivot(r, s);
    }
    return LpStatus::iteration_limit;
  }

private:
  Mat T_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index allowed_;
  double tol_;
  int pivots_ = 0;
};

} // namespace

LpResult solve_lp(const LpProblem &p, double tol) {
  const Eigen::Index n = p.c.size();
  const Eigen::Index mu = p.A_ub.size() ? p.A_ub.rows() : 0;
  const Eigen::Index me = p.A_eq.size() ? p.A_eq.rows() : 0;
  if ((mu && (p.A_ub.cols() != n || p.b_ub.size() != mu)) ||
      (me && (p.A_eq.cols() != n || p.b_eq.size() != me)))
    throw std::invalid_argument("solve_lp: inconsistent dimensions");
  Vec lo = p.lo.size() ? p.lo : Vec::Zero(n);
  Vec hi = p.hi.size() ? p.hi : Vec::Constant(n, inf);
  if (lo.size() != n || hi.size() != n)
    throw std::invalid_argument("solve_lp: bound dimensions");

  std::vector<VarMap> vars(n);
  Eigen::Index nz = 0;
  std::vector<Eigen::Index> bound_rows; // variables with a finite box
  for (Eigen::Index j = 0; j < n; ++j) {
    if (lo[j] > hi[j])
      return {LpStatus::infeasible, {}, 0, 0};
    if (std::isfinite(lo[j])) {
      vars[j] = {VarKind::shifted, nz++, lo[j]};
      if (std::isfinite(hi[j]))
        bound_rows.push_back(j);
    } else if (std::isfinite(hi[j])) {
      vars[j] = {VarKind::mirrored, nz++, hi[j]};
    } else {
      vars[j] = {VarKind::split, nz, 0.0};
      nz += 2;
    }
  }
  const Eigen::Index nb = Eigen::Index(bound_rows.size());
  const Eigen::Index m = mu + nb + me;
  const Eigen::Index ns = mu + nb; // slacks
  const Eigen::Index N = nz + ns;  // non-artificial columns
  Mat A = Mat::Zero(m, N);
  Vec b(m);
  Vec cz = Vec::Zero(N);

  auto put = [&](Eigen::Index row, const Eigen::Ref<const Vec> &coef,
                 double rhs) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double a = coef[j];
      if (a == 0)
        continue;
      const VarMap &v = vars[j];
      switch (v.kind) {
      case VarKind::shifted:
        A(row, v.col) += a;
        rhs -= a * v.offset;
        break;
      case VarKind::mirrored:
        A(row, v.col) -= a;
        rhs -= a * v.offset;
        break;
      case VarKind::split:
        A(row, v.col) += a;
        A(row, v.col + 1) -= a;
        break;
      }
    }
    b[row] = rhs;
  };
  for (Eigen::Index i = 0; i < mu; ++i) {
    put(i, p.A_ub.row(i).transpose(), p.b_ub[i]);
    A(i, nz + i) = 1;
  }
  for (Eigen::Index k = 0; k < nb; ++k) {
    Eigen::Index j = bound_rows[k];
    A(mu + k, vars[j].col) = 1;
    A(mu + k, nz + mu + k) = 1;
    b[mu + k] = hi[j] - lo[j];
  }
  for (Eigen::Index i = 0; i < me; ++i)
    put(mu + nb + i, p.A_eq.row(i).transpose(), p.b_eq[i]);
  for (Eigen::Index j = 0; j < n; ++j) {
    const VarMap &v = vars[j];
    switch (v.kind) {
    case VarKind::shifted:
      cz[v.col] = p.c[j];
      break;
    case VarKind::mirrored:
      cz[v.col] = -p.c[j];
      break;
    case VarKind::split:
      cz[v.col] = p.c[j];
      cz[v.col + 1] = -p.c[j];
      break;
    }
  }
  for (Eigen::Index i = 0; i < m; ++i)
    if (b[i] < 0) {
      A.row(i) *= -1;
      b[i] = -b[i];
    }

  // Phase 1 tableau: [A I b; reduced costs].
  Mat T = Mat::Zero(m + 1, N + m + 1);
  T.topLeftCorner(m, N) = A;
  T.block(0, N, m, m).setIdentity();
  T.topRightCorner(m, 1) = b;
  for (Eigen::Index i = 0; i < m; ++i)
    T.row(m) -= T.row(i);
  for (Eigen::Index i = 0; i < m; ++i)
    T(m, N + i) = 0;
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i)
    basis[i] = N + i;

  const int cap = int(50 * (m + N) + 1000);
  Tableau tab(std::move(T), std::move(basis), N, tol);
  LpResult res;
  LpStatus s1 = tab.run(cap);
  if (s1 == LpStatus::iteration_limit) {
    res.status = s1;
    return res;
  }
  const double scale = 1 + b.lpNorm<Eigen::Infinity>();
  if (-tab.T()(m, N + m) > tol * scale * double(m + 1)) {
    res.status = LpStatus::infeasible;
    res.pivots = tab.pivots();
    return res;
  }
  // Drive artificials out of the basis where possible.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[i] < N)
      continue;
    Eigen::Index best = -1;
    double mag = tol;
    for (Eigen::Index j = 0; j < N; ++j)
      if (std::abs(tab.T()(i, j)) > mag) {
        mag = std::abs(tab.T()(i, j));
        best = j;
      }
    if (best >= 0)
      tab.pivot(i, best);
  }
  // Phase 2 reduced costs.
  Mat &T2 = tab.T();
  T2.row(m).setZero();
  T2.row(m).head(N) = cz.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index bi = tab.basis()[i];
    double cb = bi < N ? cz[bi] : 0.0;
    if (cb != 0)
      T2.row(m) -= cb * T2.row(i);
  }
  res.status = tab.run(cap);
  res.pivots = tab.pivots();
  if (res.status != LpStatus::optimal)
    return res;
  Vec z = Vec::Zero(N);
  for (Eigen::Index i = 0; i < m; ++i)
    if (tab.basis()[i] < N)
      z[tab.basis()[i]] = T2(i, N + m);
  res.x.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const VarMap &v = vars[j];
    switch (v.kind) {
    case VarKind::shifted:
      res.x[j] = v.offset + z[v.col];
      break;
    case VarKind::mirrored:
      res.x[j] = v.offset - z[v.col];
      break;
    case VarKind::split:
      res.x[j] = z[v.col] - z[v.col + 1];
      break;
    }
  }
  res.value = p.c.dot(res.x);
  return res;
}

LpResult solve_lp_or_throw(const LpProblem &p, const char *what) {
  LpResult r = solve_lp(p);
  switch (r.status) {
  case LpStatus::optimal:
    return r;
  case LpStatus::infeasible:
    throw SolverError(std::string(what) + ": LP infeasible");
  case LpStatus::unbounded:
    throw SolverError(std::string(what) + ": LP unbounded");
  default:
    throw SolverError(std::string(what) + ": LP iteration limit");
  }
}

} // namespace pareto
