#pragma once

#include "pareto/pareto.hpp"

namespace pareto {

struct L1SlopeLevels {
  std::vector<double> lambdas; // strictly decreasing
  std::vector<int> mults;
};

/// Euclidean projection onto {a : |a|_1 <= r} by sort and threshold.
Vec project_l1_ball(const Vec &c, double r);

class L1Pair : public NormPair {
public:
  explicit L1Pair(int n) : n_(n) {}
  std::string name() const override { return "l1"; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;

private:
  int n_;
};

/// The same pair with the roles exchanged: X = l-infinity, Y = l1.
class LinfPair : public NormPair {
public:
  explicit LinfPair(int n) : n_(n) {}
  std::string name() const override { return "linf"; }
  double norm_x(const Vec &v) const override;
  double norm_y(const Vec &v) const override;
  Vec proj_x(const Vec &c, double radius) const override;
  Vec dual_argmax(const Vec &g) const override;

private:
  int n_;
};

PairPtr l1_pair(int n);
PairPtr linf_pair(int n);

Decomposition soft_threshold(const Vec &c, double y);
L1SlopeLevels l1_levels(const Vec &c);
ParetoCurve l1_frontier(const Vec &c);
SlopeDecomposition l1_slope_decomposition(const Vec &c);
SVRegion l1_sv_region(const Vec &c);

} // namespace pareto
