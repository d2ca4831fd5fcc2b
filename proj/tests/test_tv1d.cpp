#include "doctest.h"

#include "fixtures.hpp"
#include "pareto/tv1d.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <cmath>

using namespace pareto;
using namespace testutil;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(Eigen::Index(xs.size()));
  int i = 0;
  for (double x : xs)
    v[i++] = x;
  return v;
}

} // namespace

TEST_CASE("difference operator and adjoint") {
  CHECK(max_abs(diff(Vec::Ones(3)) - Vec::Zero(2)) == 0);
  CHECK(max_abs(diff_adjoint(vec({1, 2})) - vec({-1, -1, 2})) == 0);
  CHECK(max_abs(cumsum0(vec({1, 2})) - vec({0, 1, 3})) == 0);
  CHECK(std::abs(remove_baseline(vec({1, 2, 6})).sum()) < 1e-15);
  CHECK_THROWS_AS(diff(Vec()), std::invalid_argument);
  Rng g(41);
  for (int trial = 0; trial < 50; ++trial) {
    int n = uniform_int(1, 20, g);
    Vec b = randn(n + 1, g), a = randn(n, g);
    CHECK(std::abs(diff(b).dot(a) - b.dot(diff_adjoint(a))) < 1e-12);
  }
}

TEST_CASE("tv pair norms") {
  auto p = tv_pair(3);
  CHECK(p->norm_y(vec({2, 0, 0})) == doctest::Approx(1));
  CHECK(p->norm_x(vec({-2, 2, -2})) == doctest::Approx(12));
  CHECK(p->norm_x(Vec::Zero(3)) == 0);
  CHECK(p->norm_y(Vec::Zero(3)) == 0);
  CHECK_THROWS_AS(p->norm_x(Vec::Zero(4)), std::invalid_argument);
  CHECK_THROWS_AS(tv_pair(0), std::invalid_argument);
}

TEST_CASE("taut string examples") {
  TautStringResult r = taut_string(Vec::Constant(6, 1.5), 0.7);
  CHECK(max_abs(r.a - Vec::Constant(6, 1.5)) < 1e-15);
  CHECK(r.tv_value == 0);

  TautStringResult s = taut_string(vec({0, 2, 0}), 1);
  CHECK(max_abs(s.a - Vec::Ones(3)) < 1e-15);
  CHECK(s.tv_value == 0);

  Vec c = vec({0, 1, 5, 2, 9, 3});
  TautStringResult z = taut_string(c, 0);
  CHECK(max_abs(z.a - c) == 0);
  CHECK_THROWS_AS(taut_string(c, -1), std::invalid_argument);
  CHECK_THROWS_AS(taut_string(Vec(), 1), std::invalid_argument);
}

TEST_CASE("taut string against the LP oracle") {
  Rng g(42);
  for (int trial = 0; trial < 400; ++trial) {
    int m = uniform_int(2, 7, g);
    Vec c = randn(m, g);
    double eps = uniform(0, 1.5, g);
    TautStringResult r = taut_string(c, eps);
    CHECK((c - r.a).lpNorm<Eigen::Infinity>() <= eps * (1 + 1e-12) + 1e-15);
    CHECK(std::abs(r.tv_value - diff_adjoint(diff(r.a)).lpNorm<1>()) < 1e-12);
    CHECK(std::abs(r.tv_value - fixtures::taut_string_lp(c, eps)) < 1e-9);
  }
}

TEST_CASE("taut string gives an X2 certificate in derivative coordinates") {
  Rng g(43);
  for (int trial = 0; trial < 100; ++trial) {
    int m = uniform_int(3, 40, g);
    Vec c = cumsum0(randn(m - 1, g));
    double eps = uniform(0.01, 2, g);
    TautStringResult r = taut_string(c, eps);
    auto p = tv_pair(m - 1);
    Decomposition d = check_x2(*p, diff(r.a), diff(r.b), 1e-9);
    if (d.y < eps - 1e-9)
      continue; // tube wider than the signal: a is constant
    CHECK(d.certified);
    CHECK(d.y == doctest::Approx(eps).epsilon(1e-9));
  }
}

TEST_CASE("frontier area, endpoints, monotonicity, convexity") {
  Rng g(44);
  for (int trial = 0; trial < 10; ++trial) {
    Vec c = cumsum0(randn(15, g));
    ParetoCurve f = tv_frontier(c, {});
    auto p = tv_pair(15);
    Vec dc = diff(c);
    CHECK(f.points.front()[0] == doctest::Approx(0).epsilon(1e-12));
    CHECK(f.points.front()[1] == doctest::Approx(p->norm_y(dc)));
    CHECK(f.points.back()[0] == doctest::Approx(p->norm_x(dc)));
    CHECK(std::abs(f.points.back()[1]) < 1e-12);
    for (size_t i = 1; i < f.points.size(); ++i) {
      CHECK(f.points[i][0] >= f.points[i - 1][0]);
      CHECK(f.points[i][1] <= f.points[i - 1][1] + 1e-12);
    }
    for (size_t i = 1; i + 1 < f.points.size(); ++i) {
      double x0 = f.points[i - 1][0], x1 = f.points[i][0], x2 = f.points[i + 1][0];
      if (x2 - x0 < 1e-9)
        continue;
      double lin = f.points[i - 1][1] + (f.points[i + 1][1] - f.points[i - 1][1]) * (x1 - x0) / (x2 - x0);
      CHECK(f.points[i][1] <= lin + 1e-9);
    }
    // Exact: the frontier is piecewise linear between taut-string knots, so
    // a fine level grid integrates to the exact area.
    ParetoCurve fine = tv_frontier(c, uniform_grid(p->norm_y(dc), 4096));
    CHECK(trapezoid_area(fine) == doctest::Approx(0.5 * dc.squaredNorm()).epsilon(1e-6));
  }
}

TEST_CASE("tv frontier equals the generic sub-frontier") {
  Rng g(45);
  for (int trial = 0; trial < 5; ++trial) {
    Vec c = cumsum0(randn(10, g));
    auto p = tv_pair(10);
    Vec dc = diff(c);
    ParetoCurve h = subfrontier(*p, dc, uniform_grid(p->norm_x(dc), 64));
    // The taut string at level y attains the frontier value x(y) exactly.
    for (const auto &q : h.points)
      CHECK(std::abs(taut_string(c, q[1]).tv_value - q[0]) < 1e-6 * (1 + p->norm_x(dc)));
  }
}

TEST_CASE("face counts") {
  auto h3 = face_counts(3);
  REQUIRE(h3.size() == 4);
  CHECK(h3[0] == 14);
  CHECK(h3[2] == 12);
  long long total = 0;
  for (auto v : h3)
    total += v;
  CHECK(total == 51);
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(face_counts(n) == fixtures::face_polynomial(n));
  }
  CHECK_THROWS_AS(signature_faces(0), std::invalid_argument);
  CHECK_THROWS_AS(signature_faces(13), std::invalid_argument);
}

TEST_CASE("unitangent vectors from signatures") {
  for (const auto &row : fixtures::n3_table()) {
    Vec u = unitangent_from_signature(row.s);
    REQUIRE(u.size() == 3);
    CHECK(max_abs(u - Eigen::Vector3d(row.u[0], row.u[1], row.u[2])) < 1e-12);
  }
  std::vector<Signature> listed, all;
  for (const auto &row : fixtures::n3_table())
    listed.push_back(row.s);
  for (const Face &f : signature_faces(3))
    all.push_back(f.s);
  std::sort(listed.begin(), listed.end());
  std::sort(all.begin(), all.end());
  CHECK(listed == all);

  std::vector<int> s{0, 0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 1};
  Vec v = vec({1, 1, 1, 0.5, 0, -0.5, -1, -1, -1, -1.0 / 3, 1.0 / 3, 1});
  CHECK(max_abs(unitangent_from_signature(s) - diff(v)) < 1e-15);

  CHECK_THROWS_AS(unitangent_from_signature({1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(unitangent_from_signature({1, 2, -1}), std::invalid_argument);
}

TEST_CASE("every signature gives a unitangent vector in its face") {
  for (int n = 1; n <= 6; ++n) {
    auto p = tv_pair(n);
    for (const Face &f : signature_faces(n)) {
      if (f.s.empty())
        continue;
      Vec u = unitangent_from_signature(f.s);
      CHECK(std::abs(u.squaredNorm() - p->norm_x(u) * p->norm_y(u)) < 1e-10);
      if (f.dim == 0)
        CHECK(signature_of(u) == f.s);
    }
  }
}

TEST_CASE("derivative sparseness decreases with the level") {
  Rng g(46);
  for (int trial = 0; trial < 20; ++trial) {
    Vec c = cumsum0(randn(30, g));
    int prev = 1 << 30;
    for (double eps = 0.05; eps < 5; eps *= 1.4) {
      Vec a = taut_string(c, eps).a;
      if (diff(a).isZero(1e-12))
        break;
      int s = gsparse(SparseTag::tv_Y, diff(a), 1e-9);
      CHECK(s <= prev);
      prev = s;
    }
  }
}

TEST_CASE("tv projection and prox") {
  Rng g(47);
  auto p = tv_pair(8);
  for (int trial = 0; trial < 20; ++trial) {
    Vec c = randn(8, g);
    double r = uniform(0.1, 0.9, g) * p->norm_x(c);
    Vec a = p->proj_x(c, r);
    CHECK(p->norm_x(a) == doctest::Approx(r).epsilon(1e-9));
    CHECK(check_x2(*p, a, c - a, 1e-8).certified);
    double eps = p->norm_y(c - a);
    CHECK(max_abs(tv_prox(c, eps) - a) < 1e-7);
  }
}
