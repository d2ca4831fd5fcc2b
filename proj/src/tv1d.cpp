#include "pareto/tv1d.hpp"

#include <algorithm>
#include <cmath>

namespace pareto {

Vec diff(const Vec &b) {
  if (b.size() < 1)
    throw std::invalid_argument("diff: empty input");
  return b.tail(b.size() - 1) - b.head(b.size() - 1);
}

Vec diff_adjoint(const Vec &a) {
  const Eigen::Index n = a.size();
  Vec z(n + 1);
  z[0] = n ? -a[0] : 0.0;
  for (Eigen::Index i = 1; i < n; ++i)
    z[i] = a[i - 1] - a[i];
  if (n)
    z[n] = a[n - 1];
  return z;
}

Vec cumsum0(const Vec &a) {
  Vec b(a.size() + 1);
  b[0] = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    b[i + 1] = b[i] + a[i];
  return b;
}

Vec remove_baseline(const Vec &v) {
  if (v.size() == 0)
    return v;
  return (v.array() - v.mean()).matrix();
}

namespace {

struct Pt {
  double x, y;
};

double cross(Pt u, Pt v) { return u.x * v.y - u.y * v.x; }
Pt sub(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }

// Double-ended chain over a flat buffer; the consumed prefix is dropped
// once it outweighs the live part.
class Chain {
public:
  bool empty() const { return head_ == buf_.size(); }
  size_t size() const { return buf_.size() - head_; }
  const Pt &front() const { return buf_[head_]; }
  const Pt &back() const { return buf_.back(); }
  const Pt &operator[](size_t i) const { return buf_[head_ + i]; }
  void pop_front() {
    if (++head_ >= 256 && 2 * head_ >= buf_.size()) {
      buf_.erase(buf_.begin(), buf_.begin() + std::ptrdiff_t(head_));
      head_ = 0;
    }
  }
  void pop_back() { buf_.pop_back(); }
  void push_back(Pt p) { buf_.push_back(p); }
  void clear() {
    buf_.clear();
    head_ = 0;
  }

private:
  std::vector<Pt> buf_;
  size_t head_ = 0;
};

// Funnel walk through the gates [c_i - eps, c_i + eps]. The string enters
// from the left and leaves to the right horizontally; until its first bend
// the apex sits at "left infinity" and every ray from it is horizontal.
// Fixed string segments are written straight into out.
class Funnel {
public:
  Funnel(double *out, std::vector<double> &knots, size_t n)
      : out_(out), knots_(knots), n_(n) {}

  void gate(double x, double lo, double hi) {
    Pt q{x, hi}, r{x, lo};
    if (!L_.empty() && below(q, L_.front())) {
      while (!L_.empty() && below(q, L_.front())) {
        Pt t = L_.front();
        L_.pop_front();
        advance(t);
      }
      U_.clear();
    } else {
      while (!U_.empty() && cross(edge_dir(U_), sub(q, U_.back())) <= 0)
        U_.pop_back();
    }
    U_.push_back(q);
    if (!U_.empty() && above(r, U_.front())) {
      while (!U_.empty() && above(r, U_.front())) {
        Pt t = U_.front();
        U_.pop_front();
        advance(t);
      }
      L_.clear();
    } else {
      while (!L_.empty() && cross(edge_dir(L_), sub(r, L_.back())) >= 0)
        L_.pop_back();
    }
    L_.push_back(r);
  }

  void finish() {
    const double last = double(n_ - 1);
    if (li_) {
      double h = 0.5 * (L_.front().y + U_.front().y);
      std::fill(out_, out_ + n_, h);
      return;
    }
    if (!L_.empty() && L_.front().y > P_.y) {
      while (!L_.empty() && L_.front().y > P_.y) {
        Pt t = L_.front();
        L_.pop_front();
        advance(t);
      }
    } else if (!U_.empty() && U_.front().y < P_.y) {
      while (!U_.empty() && U_.front().y < P_.y) {
        Pt t = U_.front();
        U_.pop_front();
        advance(t);
      }
    }
    if (P_.x < last)
      segment({last, P_.y});
    if (!knots_.empty() && knots_.back() == last)
      knots_.pop_back();
  }

private:
  Pt dir_to(Pt a) const { return li_ ? Pt{1, 0} : sub(a, P_); }
  Pt edge_dir(const Chain &ch) const {
    return ch.size() >= 2 ? sub(ch.back(), ch[ch.size() - 2])
                          : dir_to(ch.back());
  }
  bool below(Pt q, Pt l) const { return cross(dir_to(l), sub(q, l)) < 0; }
  bool above(Pt r, Pt u) const { return cross(dir_to(u), sub(r, u)) > 0; }

  void advance(Pt t) {
    if (li_) {
      li_ = false;
      P_ = {0.0, t.y};
      out_[0] = t.y;
    }
    if (t.x > P_.x) {
      if (P_.x > 0)
        knots_.push_back(P_.x);
      segment(t);
    }
    P_ = t;
  }

  // Fill out on (P_.x, t.x]; gate abscissae are integers.
  void segment(Pt t) {
    size_t i0 = size_t(P_.x), i1 = size_t(t.x);
    double slope = (t.y - P_.y) / (t.x - P_.x);
    for (size_t i = i0 + 1; i < i1; ++i)
      out_[i] = P_.y + slope * double(i - i0);
    out_[i1] = t.y;
  }

  double *out_;
  std::vector<double> &knots_;
  size_t n_;
  bool li_ = true;
  Pt P_{0, 0};
  Chain U_, L_;
};

} // namespace

TautStringResult taut_string(const Vec &c, double eps) {
  if (c.size() == 0)
    throw std::invalid_argument("taut_string: empty signal");
  if (!(eps >= 0))
    throw std::invalid_argument("taut_string: eps must be nonnegative");
  TautStringResult r;
  const Eigen::Index N = c.size();
  if (eps == 0 || N == 1) {
    r.a = c;
  } else {
    r.a.resize(N);
    Funnel f(r.a.data(), r.knots, size_t(N));
    for (Eigen::Index i = 0; i < N; ++i)
      f.gate(double(i), c[i] - eps, c[i] + eps);
    f.finish();
  }
  r.b.resize(N);
  r.b[0] = c[0] - r.a[0];
  // |D* D a|_1 = |z_0| + sum |z_{i-1} - z_i| + |z_last| with z = D a.
  double tv = 0, prev = 0;
  for (Eigen::Index i = 0; i + 1 < N; ++i) {
    r.b[i + 1] = c[i + 1] - r.a[i + 1];
    double z = r.a[i + 1] - r.a[i];
    tv += std::abs(prev - z);
    prev = z;
  }
  r.tv_value = N > 1 ? tv + std::abs(prev) : 0.0;
  return r;
}

double TvPair::norm_x(const Vec &v) const {
  if (v.size() != n_)
    throw std::invalid_argument("tv pair: dimension mismatch");
  return diff_adjoint(v).lpNorm<1>();
}

double TvPair::norm_y(const Vec &v) const {
  if (v.size() != n_)
    throw std::invalid_argument("tv pair: dimension mismatch");
  Vec b = cumsum0(v);
  return 0.5 * (b.maxCoeff() - b.minCoeff());
}

Vec tv_prox(const Vec &c, double eps) {
  return diff(taut_string(cumsum0(c), eps).a);
}

Vec TvPair::proj_x(const Vec &c, double radius) const {
  if (radius < 0)
    throw std::invalid_argument("proj_x: negative radius");
  double nx = norm_x(c);
  if (nx <= radius)
    return c;
  if (radius == 0)
    return Vec::Zero(c.size());
  // tv_value(eps) is continuous, piecewise linear and decreasing.
  const Vec C = cumsum0(c);
  auto tv = [&](double e) { return taut_string(C, e).tv_value; };
  double lo = 0, hi = norm_y(c);
  double vlo = nx, vhi = 0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (hi + lo); ++it) {
    double mid = 0.5 * (lo + hi);
    double v = tv(mid);
    if (v > radius) {
      lo = mid;
      vlo = v;
    } else {
      hi = mid;
      vhi = v;
    }
  }
  double e = vlo > vhi ? lo + (vlo - radius) / (vlo - vhi) * (hi - lo) : hi;
  return diff(taut_string(C, std::clamp(e, lo, hi)).a);
}

// D* w = (e_i - e_j)/2 with i, j the extremes of the preimage; then
// w_k = -(z_0 + ... + z_{k-1}).
Vec TvPair::dual_argmax(const Vec &g) const {
  if (g.size() != n_)
    throw std::invalid_argument("tv pair: dimension mismatch");
  Vec b = cumsum0(g);
  double mx = b.maxCoeff(), mn = b.minCoeff();
  Vec best;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (b[i] != mx)
      continue;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (b[j] != mn || i == j)
        continue;
      Vec w(n_);
      double s = 0;
      for (Eigen::Index k = 0; k < n_; ++k) {
        s += (k == i ? 0.5 : 0.0) - (k == j ? 0.5 : 0.0);
        w[k] = -s;
      }
      if (best.size() == 0 ||
          std::lexicographical_compare(w.data(), w.data() + n_, best.data(),
                                       best.data() + n_))
        best = w;
    }
  }
  if (best.size() == 0) { // g == 0: every unit vector is optimal
    Vec w = Vec::Zero(n_);
    w[0] = -0.5; // z = (1/2, -1/2, 0, ...)
    return w;
  }
  return best;
}

PairPtr tv_pair(int n) {
  if (n < 1)
    throw std::invalid_argument("tv_pair: n must be positive");
  return std::make_shared<TvPair>(n);
}

ParetoCurve tv_frontier(const Vec &c, std::vector<double> eps_grid) {
  if (c.size() < 2)
    throw std::invalid_argument("tv_frontier: need at least two samples");
  TvPair pair(int(c.size() - 1));
  Vec dc = diff(c);
  double ymax = pair.norm_y(dc);
  if (eps_grid.empty())
    eps_grid = uniform_grid(ymax, 256);
  ParetoCurve cur;
  cur.kind = CurveKind::frontier;
  cur.orientation = Orientation::x_of_y;
  for (double e : eps_grid) {
    if (e < 0)
      throw std::invalid_argument("tv_frontier: negative level");
    TautStringResult t = taut_string(c, std::min(e, ymax));
    cur.points.push_back({t.tv_value, pair.norm_y(diff(t.b))});
  }
  std::sort(cur.points.begin(), cur.points.end());
  return cur;
}

std::vector<Face> signature_faces(int n) {
  if (n < 1 || n > 12)
    throw std::invalid_argument("signature_faces: n must be in [1, 12]");
  std::vector<Face> out;
  const int len = n + 1;
  long long total = 1;
  for (int i = 0; i < len; ++i)
    total *= 3;
  for (long long code = 0; code < total; ++code) {
    Signature s(len);
    long long c = code;
    bool pos = false, neg = false;
    int zeros = 0;
    for (int i = len - 1; i >= 0; --i) {
      s[i] = int(c % 3) - 1;
      c /= 3;
      pos |= s[i] == 1;
      neg |= s[i] == -1;
      zeros += s[i] == 0;
    }
    if (pos && neg)
      out.push_back({s, zeros});
  }
  return out;
}

std::vector<long long> face_counts(int n) {
  std::vector<long long> h(n + 1, 0);
  for (const Face &f : signature_faces(n))
    ++h[f.dim];
  h[n] += 1; // the ball itself has no signature
  return h;
}

Vec unitangent_from_signature(const Signature &s) {
  std::vector<size_t> nz;
  bool pos = false, neg = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < -1 || s[i] > 1)
      throw std::invalid_argument("signature entries must be -1, 0 or 1");
    if (s[i] != 0)
      nz.push_back(i);
    pos |= s[i] == 1;
    neg |= s[i] == -1;
  }
  if (!pos || !neg)
    throw std::invalid_argument("signature needs both a +1 and a -1");
  Vec v(s.size());
  for (size_t k = 0; k <= nz.front(); ++k)
    v[k] = s[nz.front()];
  for (size_t m = 0; m + 1 < nz.size(); ++m) {
    size_t i = nz[m], j = nz[m + 1];
    for (size_t k = i; k <= j; ++k)
      v[k] = (double(j - k) * s[i] + double(k - i) * s[j]) / double(j - i);
  }
  for (size_t k = nz.back(); k < s.size(); ++k)
    v[k] = s[nz.back()];
  return diff(v);
}

Signature signature_of(const Vec &u, double tol) {
  Vec b = cumsum0(u);
  double mx = b.maxCoeff(), mn = b.minCoeff();
  double t = tol * std::max(1.0, mx - mn);
  Signature s(b.size());
  for (Eigen::Index i = 0; i < b.size(); ++i)
    s[i] = b[i] >= mx - t ? 1 : (b[i] <= mn + t ? -1 : 0);
  return s;
}

} // namespace pareto
