#pragma once

#include "pareto/pareto.hpp"

namespace pareto {

/// D(b) = (b_2 - b_1, ..., b_{n+1} - b_n)
Vec diff(const Vec &b);
/// D*(a) = (-a_1, a_1 - a_2, ..., a_{n-1} - a_n, a_n)
Vec diff_adjoint(const Vec &a);
/// (0, a_1, a_1 + a_2, ...): the preimage of a under D starting at 0.
Vec cumsum0(const Vec &a);
/// Removes the mean, mapping a signal into the zero-sum subspace.
Vec remove_baseline(const Vec &v);

struct TautStringResult {
  Vec a;                    // length n+1
  Vec b;                    // c - a
  std::vector<double> knots; // abscissae where the string bends
  double tv_value = 0;      // |D* D a|_1
};

/// Minimizes |D* D a|_1 subject to |c - a|_inf <= eps, in O(n).
TautStringResult taut_string(const Vec &c, double eps);

/// Pair on R^n with |a|_X = |D* a|_1 and |a|_Y = (max - min)/2 of cumsum0(a).
class TvPair : public NormPair {
public:
  explicit TvPair(int n) : n_(n) {}
  std::string name() const override { return "tv"; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;

private:
  int n_;
};

PairPtr tv_pair(int n);

/// X-part of the decomposition of c in R^n at Y-level eps.
Vec tv_prox(const Vec &c, double eps);

/// Frontier of D c for a signal c of length n+1, swept over eps levels.
/// An empty grid means 256 uniform levels.
ParetoCurve tv_frontier(const Vec &c, std::vector<double> eps_grid = {});

using Signature = std::vector<int>;

struct Face {
  Signature s;
  int dim = 0;
};

std::vector<Face> signature_faces(int n);
std::vector<long long> face_counts(int n);
Vec unitangent_from_signature(const Signature &s);
/// Sign pattern of the extremes of cumsum0(u), tolerance relative to range.
Signature signature_of(const Vec &u, double tol = 1e-12);

} // namespace pareto
