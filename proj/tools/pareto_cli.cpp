// Command-line front end: frontier, denoise, svregion, slope, faces.
//
// Exit codes: 0 ok, 2 input error, 3 solver failure, 4 precondition
// violation (for example a slope decomposition of a non-tight vector).

#include "cli_io.hpp"

#include "pareto/l1.hpp"
#include "pareto/matrix.hpp"
#include "pareto/quotient.hpp"
#include "pareto/tensor.hpp"
#include "pareto/tv1d.hpp"

#include "CLI11.hpp"
#include <fmt/format.h>

#include <algorithm>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace pareto;
using nlohmann::json;

namespace {

struct Job {
  std::string command;
  std::string pair = "l1";
  std::string input;
  std::string matrix;
  std::string out = ".";
  std::string format = "json";
  int grid = 64;
  double tol = 1e-6;
  std::optional<double> eps, x, y;
  int k = 2;
  double t = 0;
  int n = 3;
};

enum class Kind { l1, matrix, tv, tv2d, bpdn, trend, tensor_ft, ellipse, skew };

Kind parse_kind(const std::string &s) {
  if (s == "l1")
    return Kind::l1;
  if (s == "matrix")
    return Kind::matrix;
  if (s == "tv")
    return Kind::tv;
  if (s == "tv2d")
    return Kind::tv2d;
  if (s == "bpdn")
    return Kind::bpdn;
  if (s == "trend")
    return Kind::trend;
  if (s == "tensor-ft")
    return Kind::tensor_ft;
  if (s == "gallery-ellipse" || s == "ellipse")
    return Kind::ellipse;
  if (s == "gallery-skew" || s == "skew")
    return Kind::skew;
  throw cli::InputError("unknown pair '" + s + "'");
}

// The analysed vector c lives in the pair's space; for tv2d the image is
// centred first.
struct Instance {
  Kind kind;
  PairPtr pair;
  Vec c;
  Mat image;
  double mean = 0;
  Mat A;
  std::shared_ptr<const AnalysisPair> analysis;
};

// ISTA stops once its certificate holds with slack tol.
IstaOptions ista_options(const Job &job) {
  IstaOptions o;
  o.delta = std::clamp(1 - job.tol, 0.5, 1 - 1e-12);
  o.max_iter = 1000000;
  return o;
}

Instance load(const Job &job) {
  Instance in;
  in.kind = parse_kind(job.pair);
  if (in.kind == Kind::tensor_ft)
    return in;
  if (job.input.empty())
    throw cli::InputError("--input is required for pair " + job.pair);
  switch (in.kind) {
  case Kind::l1:
    in.c = cli::read_vector(job.input);
    in.pair = l1_pair(int(in.c.size()));
    break;
  case Kind::matrix:
    in.image = cli::read_matrix(job.input);
    in.c = to_vec(in.image);
    in.pair = nuclear_spectral_pair(int(in.image.rows()), int(in.image.cols()));
    break;
  case Kind::tv:
    in.c = cli::read_vector(job.input);
    in.pair = tv_pair(int(in.c.size()));
    break;
  case Kind::trend:
    in.c = cli::read_vector(job.input);
    if (job.k < 1)
      throw cli::InputError("trend: need k >= 1");
    in.analysis = trend_filter_pair(int(in.c.size()), job.k, ista_options(job));
    in.pair = in.analysis;
    break;
  case Kind::tv2d: {
    in.image = cli::read_matrix(job.input);
    in.mean = in.image.mean();
    Mat centred = in.image.array() - in.mean;
    in.c = to_vec(centred);
    in.analysis = tv2d_pair(int(in.image.rows()), int(in.image.cols()),
                            ista_options(job));
    in.pair = in.analysis;
    break;
  }
  case Kind::bpdn:
    in.c = cli::read_vector(job.input);
    if (job.matrix.empty())
      throw cli::InputError("bpdn: --matrix is required");
    in.A = cli::read_matrix(job.matrix);
    if (in.A.rows() != in.c.size())
      throw cli::InputError("bpdn: matrix rows must match the input length");
    in.pair = std::make_shared<QuotientPair>(LinearMap::from_matrix(in.A),
                                             l1_pair(int(in.A.cols())), "bpdn",
                                             ista_options(job));
    break;
  case Kind::ellipse:
  case Kind::skew:
    in.c = cli::read_vector(job.input);
    if (in.c.size() != 2)
      throw cli::InputError("gallery pairs act on R^2");
    in.pair = in.kind == Kind::ellipse ? gallery_ellipse_pair()
                                       : gallery_skew_pair();
    break;
  default:
    break;
  }
  return in;
}

fs::path prepare_out(const Job &job) {
  fs::path out(job.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (!fs::is_directory(out))
    throw cli::InputError("cannot create output directory " + job.out);
  return out;
}

void emit_curve(const fs::path &dir, const std::string &stem,
                const ParetoCurve &c, const Job &job) {
  cli::write_text(dir / (stem + ".json"), cli::curve_to_json(c).dump(2) + "\n");
  if (job.format == "csv")
    cli::write_curve_csv(dir / (stem + ".csv"), c);
}

json certificate_json(const Decomposition &d) {
  return {{"x", d.x},         {"y", d.y},     {"inner", d.inner},
          {"gap", d.gap},     {"certified", d.certified}};
}

int cmd_frontier(const Job &job) {
  fs::path out = prepare_out(job);
  Instance in = load(job);
  if (in.kind == Kind::tensor_ft) {
    ParetoCurve h = ft_subfrontier(std::max(job.grid, 2));
    emit_curve(out, "subfrontier", h, job);
    json norms;
    if (!job.input.empty()) {
      Tensor T = cli::read_tensor(job.input);
      SpectralResult s = tensor_spectral_norm(T);
      norms = {{"spectral", s.value}, {"euclid", T.data.norm()}};
    } else {
      FtNorms n = ft_norms(job.t);
      norms = {{"t", job.t},
               {"sigma", n.sigma},
               {"nuclear", n.nuclear},
               {"euclid", n.euclid},
               {"sigma_numeric", tensor_spectral_norm(f_t(job.t)).value}};
    }
    cli::write_text(out / "norms.json", norms.dump(2) + "\n");
    if (job.format == "svg")
      cli::write_text(out / "frontier.svg", cli::curves_svg({&h}));
    fmt::print("subfrontier points={}\n", h.points.size());
    return 0;
  }
  const double nx = in.pair->norm_x(in.c);
  const double ny = in.pair->norm_y(in.c);
  std::vector<double> grid = uniform_grid(nx, std::max(job.grid, 1));
  ParetoCurve h = subfrontier(*in.pair, in.c, grid);
  emit_curve(out, "subfrontier", h, job);
  std::optional<ParetoCurve> f;
  switch (in.kind) {
  case Kind::l1:
    f = l1_frontier(in.c);
    break;
  case Kind::matrix:
    f = matrix_frontier(in.image);
    break;
  case Kind::tv:
    f = tv_frontier(cumsum0(in.c), uniform_grid(ny, std::max(job.grid, 1)));
    break;
  case Kind::ellipse:
  case Kind::skew:
    f = frontier(*in.pair, in.c, grid);
    break;
  default:
    break; // quotient pairs: sub-frontier only
  }
  if (f)
    emit_curve(out, "frontier", *f, job);
  json report = {{"pair", job.pair},
                 {"norm_x", nx},
                 {"norm_y", ny},
                 {"half_c2", 0.5 * in.c.squaredNorm()},
                 {"area_h", trapezoid_area(h)}};
  if (f) {
    TightnessReport t = tightness_test(*in.pair, in.c, grid, job.tol * ny);
    report["sup_gap"] = t.sup_gap;
    report["tight"] = t.tight;
    report["area_f"] = t.area_f;
    report["area_ok"] = t.area_ok;
    cli::write_text(out / "tightness.json", report.dump(2) + "\n");
  }
  if (job.format == "svg") {
    std::vector<const ParetoCurve *> cs{&h};
    if (f)
      cs.push_back(&*f);
    cli::write_text(out / "frontier.svg", cli::curves_svg(cs));
  }
  fmt::print("{}\n", report.dump());
  return 0;
}

int cmd_denoise(const Job &job) {
  fs::path out = prepare_out(job);
  Instance in = load(job);
  if (in.kind == Kind::tensor_ft)
    throw cli::InputError("denoise: tensor-ft has no projection");
  std::optional<double> level = job.eps ? job.eps : job.y;
  if (!level == !job.x)
    throw cli::InputError("denoise: give exactly one of --eps/--y or --x");
  if ((level && *level < 0) || (job.x && *job.x < 0))
    throw cli::InputError("denoise: levels must be nonnegative");
  Decomposition d;
  Vec a_out, b_out;
  bool as_matrix = false;
  Mat shape;
  json extra = json::object();
  switch (in.kind) {
  case Kind::l1:
    d = level ? soft_threshold(in.c, *level) : solve_m2x(*in.pair, in.c, *job.x);
    break;
  case Kind::matrix:
    d = level ? sv_soft_threshold(in.image, *level)
              : solve_m2x(*in.pair, in.c, *job.x);
    as_matrix = true;
    shape = in.image;
    break;
  case Kind::tv: {
    // Level form: taut string through the running sums of c.
    Vec a = level ? Vec(diff(taut_string(cumsum0(in.c), *level).a))
                  : in.pair->proj_x(in.c, *job.x);
    d = check_x2(*in.pair, a, in.c - a, 1e-9);
    break;
  }
  case Kind::trend: {
    Vec a = level ? in.analysis->prox_level(in.c, *level)
                  : in.pair->proj_x(in.c, *job.x);
    d = check_x2(*in.pair, a, in.c - a, std::max(job.tol, 1e-9));
    break;
  }
  case Kind::tv2d: {
    Vec a = level ? in.analysis->prox_level(in.c, *level)
                  : in.pair->proj_x(in.c, *job.x);
    d = check_x2(*in.pair, a, in.c - a, 1e-6);
    Vec full = a.array() + in.mean;
    a_out = full;
    b_out = to_vec(in.image) - full;
    as_matrix = true;
    shape = in.image;
    break;
  }
  case Kind::bpdn: {
    RegressionResult r = level ? bpdn(in.A, in.c, *level, ista_options(job))
                               : lasso(in.A, in.c, *job.x, ista_options(job));
    d = r.d;
    extra["residual_l2"] = (in.c - in.A * r.v).norm();
    extra["v_l1"] = r.v.lpNorm<1>();
    cli::write_vector_csv(out / "v.csv", r.v);
    break;
  }
  case Kind::ellipse:
  case Kind::skew:
    d = level ? proj_y_radius(*in.pair, in.c, *level)
              : solve_m2x(*in.pair, in.c, *job.x);
    break;
  default:
    break;
  }
  if (a_out.size() == 0) {
    a_out = d.a;
    b_out = d.b;
  }
  if (as_matrix) {
    int R = int(shape.rows()), C = int(shape.cols());
    cli::write_matrix_csv(out / "a.csv", to_mat(a_out, R, C));
    cli::write_matrix_csv(out / "b.csv", to_mat(b_out, R, C));
  } else {
    cli::write_vector_csv(out / "a.csv", a_out);
    cli::write_vector_csv(out / "b.csv", b_out);
  }
  json cert = certificate_json(d);
  cert["pair"] = job.pair;
  cert.update(extra);
  cli::write_text(out / "certificate.json", cert.dump(2) + "\n");
  fmt::print("{}\n", cert.dump());
  return 0;
}

int cmd_svregion(const Job &job) {
  fs::path out = prepare_out(job);
  Instance in = load(job);
  SVRegion r;
  switch (in.kind) {
  case Kind::l1:
    r = l1_sv_region(in.c);
    break;
  case Kind::matrix:
    r = matrix_sv_region(in.image);
    break;
  case Kind::tensor_ft:
    r = sv_region_from_curve(ft_subfrontier(std::max(job.grid, 2)));
    break;
  default:
    r = sv_region(*in.pair, in.c, std::max(job.grid, 8));
    break;
  }
  std::string csv = "height,width\n";
  json bars = json::array();
  for (const auto &b : r.bars) {
    csv += cli::fmt17(b.height) + "," + cli::fmt17(b.width) + "\n";
    bars.push_back({b.height, b.width});
  }
  cli::write_text(out / "bars.csv", csv);
  json j = {{"exact", r.exact},   {"bars", bars},
            {"height", r.height}, {"total_area", r.total_area},
            {"moment", r.moment}};
  json sampled = json::array();
  for (const auto &p : r.sampled)
    sampled.push_back({p[0], p[1]});
  j["sampled"] = sampled;
  cli::write_text(out / "region.json", j.dump(2) + "\n");
  cli::write_text(out / "region.svg", cli::bars_svg(r));
  fmt::print("bars={} exact={}\n", r.bars.size(), r.exact);
  return 0;
}

int cmd_slope(const Job &job) {
  fs::path out = prepare_out(job);
  Instance in = load(job);
  SlopeDecomposition s;
  switch (in.kind) {
  case Kind::l1:
    s = l1_slope_decomposition(in.c);
    break;
  case Kind::matrix:
    s = matrix_slope_decomposition(in.image);
    break;
  case Kind::tensor_ft:
    if (!linear_pieces(ft_subfrontier(std::max(job.grid, 2)).points))
      throw NotTightError("slope: f_0 sub-frontier is not piecewise linear");
    break;
  default:
    s = slope_decomposition(*in.pair, in.c, job.tol);
    break;
  }
  for (size_t i = 0; i < s.components.size(); ++i) {
    fs::path p = out / fmt::format("component_{}.csv", i + 1);
    if (in.kind == Kind::matrix)
      cli::write_matrix_csv(p, to_mat(s.components[i], int(in.image.rows()),
                                      int(in.image.cols())));
    else
      cli::write_vector_csv(p, s.components[i]);
  }
  json j = {{"xs", s.xs},
            {"ys", s.ys},
            {"slopes", s.slopes},
            {"gram_violation", gram_violation(s)}};
  cli::write_text(out / "slope.json", j.dump(2) + "\n");
  fmt::print("components={}\n", s.components.size());
  return 0;
}

int cmd_faces(const Job &job) {
  fs::path out = prepare_out(job);
  if (job.n < 1 || job.n > 12)
    throw cli::InputError("faces: --n must lie in [1, 12]");
  std::vector<long long> h = face_counts(job.n);
  long long total = 0;
  std::string csv = "dim,count\n";
  for (size_t d = 0; d < h.size(); ++d) {
    csv += fmt::format("{},{}\n", d, h[d]);
    total += h[d];
  }
  cli::write_text(out / "faces.csv", csv);
  json j = {{"n", job.n}, {"counts", h}, {"total", total}};
  cli::write_text(out / "faces.json", j.dump(2) + "\n");
  fmt::print("{}\n", j.dump());
  return 0;
}

void add_common(CLI::App *s, Job &job, bool with_levels) {
  s->add_option("--pair", job.pair, "l1|matrix|tv|tv2d|bpdn|trend|tensor-ft|"
                                    "gallery-ellipse|gallery-skew");
  s->add_option("--input", job.input, "CSV (vector/matrix) or tensor JSON");
  s->add_option("--matrix", job.matrix, "design matrix CSV for bpdn");
  s->add_option("--grid", job.grid, "grid intervals")->check(CLI::Range(1, 1 << 20));
  s->add_option("--tol", job.tol, "tolerance")->check(CLI::PositiveNumber);
  s->add_option("--out", job.out, "output directory");
  s->add_option("--format", job.format, "json|csv|svg")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  s->add_option("--k", job.k, "trend filter order");
  s->add_option("--t", job.t, "f_t parameter");
  if (with_levels) {
    s->add_option("--eps", job.eps, "Y-level (tube half-width)");
    s->add_option("--y", job.y, "Y-level");
    s->add_option("--x", job.x, "X-radius");
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Pareto frontiers of dual norm pairs"};
  app.require_subcommand(1);
  Job job;
  auto *fr = app.add_subcommand("frontier", "sub-frontier and frontier curves");
  auto *dn = app.add_subcommand("denoise", "X2 / 2Y decomposition");
  auto *sv = app.add_subcommand("svregion", "singular value region");
  auto *sl = app.add_subcommand("slope", "slope decomposition");
  auto *fc = app.add_subcommand("faces", "face counts of the TV unit ball");
  add_common(fr, job, false);
  add_common(dn, job, true);
  add_common(sv, job, false);
  add_common(sl, job, false);
  fc->add_option("--n", job.n, "signal length minus one")->required();
  fc->add_option("--out", job.out, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*fr)
      return cmd_frontier(job);
    if (*dn)
      return cmd_denoise(job);
    if (*sv)
      return cmd_svregion(job);
    if (*sl)
      return cmd_slope(job);
    return cmd_faces(job);
  } catch (const cli::InputError &e) {
    fmt::print(stderr, "input error: {}\n", e.what());
    return 2;
  } catch (const std::invalid_argument &e) {
    fmt::print(stderr, "input error: {}\n", e.what());
    return 2;
  } catch (const PreconditionError &e) {
    fmt::print(stderr, "precondition violated: {}\n", e.what());
    return 4;
  } catch (const SolverError &e) {
    fmt::print(stderr, "solver failure: {}\n", e.what());
    return 3;
  } catch (const std::exception &e) {
    fmt::print(stderr, "solver failure: {}\n", e.what());
    return 3;
  }
}
