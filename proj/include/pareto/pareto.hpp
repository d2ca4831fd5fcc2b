#pragma once

#include "pareto/core.hpp"

#include <array>
#include <optional>
#include <vector>

namespace pareto {

using Point = std::array<double, 2>; // (x, y)

enum class CurveKind { frontier, subfrontier };
enum class Orientation { y_of_x, x_of_y };

/// Monotone curve stored as (x, y) points with x increasing.
struct ParetoCurve {
  CurveKind kind = CurveKind::subfrontier;
  Orientation orientation = Orientation::y_of_x;
  std::vector<Point> points;
  std::vector<size_t> breakpoints; // indices into points
  std::vector<size_t> flagged;     // points whose solver did not certify
  std::vector<double> gaps;        // per-point duality gap (frontier only)

  double y_at(double x) const; // piecewise-linear interpolation
  double x_at(double y) const;
};

struct SlopeDecomposition {
  std::vector<Vec> components;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> slopes; // mu_XY = y/x
};

struct Bar {
  double height = 0;
  double width = 0;
};

/// Region left of x = -dh_XY/dy. `sampled` holds (y, x) pairs.
struct SVRegion {
  std::vector<Bar> bars;
  std::vector<Point> sampled;
  bool exact = false;
  double total_area = 0;
  double height = 0;
  double moment = 0; // integral of 2y over the region
};

struct TightnessReport {
  double sup_gap = 0;
  double area_h = 0;
  double area_f = 0;
  bool tight = false;
  bool area_ok = false;
};

struct AreaReport {
  double total = 0, right = 0, above = 0, rect = 0;
  double half_c2 = 0, half_b2 = 0, half_a2 = 0, ab = 0;
  bool ok = false;
};

struct FrontierOptions {
  int max_iter = 20000;
  double tol = 1e-9; // relative duality gap
};

Decomposition solve_m2x(const NormPair &pair, const Vec &c, double x,
                        double tol = 1e-9);
Decomposition proj_y_radius(const NormPair &pair, const Vec &c, double y,
                            double tol = 1e-12);

std::vector<double> uniform_grid(double hi, int n);

ParetoCurve subfrontier(const NormPair &pair, const Vec &c,
                        const std::vector<double> &grid);
/// Uniform grid of n intervals, then local refinement around slope changes.
ParetoCurve subfrontier_adaptive(const NormPair &pair, const Vec &c, int n);

ParetoCurve frontier(const NormPair &pair, const Vec &c,
                     const std::vector<double> &grid,
                     const FrontierOptions &opt = {});

/// One frontier value with its certificate: value is feasible, lower is a
/// dual bound.
struct FrontierPoint {
  double value = 0;
  double lower = 0;
  Vec a;
  int iterations = 0;
  bool converged = false;
};
FrontierPoint frontier_point(const NormPair &pair, const Vec &c, double x,
                             const FrontierOptions &opt = {},
                             const Vec *warm = nullptr);

TightnessReport tightness_test(const NormPair &pair, const Vec &c,
                               const std::vector<double> &grid, double tol);

SlopeDecomposition slope_decomposition(const NormPair &pair, const Vec &c,
                                       double tol);
/// Max violation of <c_i,c_j> = x_i y_j (i <= j), relative to |c|^2.
double gram_violation(const SlopeDecomposition &s);

SVRegion sv_region(const NormPair &pair, const Vec &c, int n = 256);
SVRegion sv_region_from_curve(const ParetoCurve &h);
SVRegion sv_region_from_slope(const SlopeDecomposition &s);

AreaReport area_checks(const NormPair &pair, const Vec &c, double x0,
                       const std::vector<double> &grid, double rel_tol = 1e-6);

ParetoCurve concat_curves(const ParetoCurve &u, const ParetoCurve &v);

double trapezoid_area(const ParetoCurve &curve);

/// Vertices of a piecewise-linear fit when the samples are piecewise linear
/// within rel_tol, otherwise nullopt.
std::optional<std::vector<Point>> linear_pieces(const std::vector<Point> &pts,
                                                double rel_tol = 1e-7);

} // namespace pareto
