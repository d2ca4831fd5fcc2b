#include "cli_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cli {

std::string fmt17(double v) { return fmt::format("{:.17g}", v); }

std::vector<std::vector<double>> read_table(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (ss >> tok) {
      if (row.empty() && tok[0] == '#')
        break;
      try {
        size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v))
          throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception &) {
        throw InputError(fmt::format("{}:{}: not a number: '{}'", path,
                                     lineno, tok));
      }
    }
    if (!row.empty())
      rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw InputError(path + ": no data");
  return rows;
}

Vec read_vector(const std::string &path) {
  auto rows = read_table(path);
  std::vector<double> v;
  if (rows.size() == 1) {
    v = rows[0];
  } else {
    for (const auto &r : rows) {
      if (r.size() != 1)
        throw InputError(path + ": expected one value per line");
      v.push_back(r[0]);
    }
  }
  return Eigen::Map<const Vec>(v.data(), Eigen::Index(v.size()));
}

Mat read_matrix(const std::string &path) {
  auto rows = read_table(path);
  const size_t cols = rows[0].size();
  Mat M(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw InputError(path + ": ragged matrix rows");
    for (size_t j = 0; j < cols; ++j)
      M(i, j) = rows[i][j];
  }
  return M;
}

pareto::Tensor read_tensor(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path);
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    std::vector<double> e = j.at("entries").get<std::vector<double>>();
    return pareto::Tensor(dims,
                          Eigen::Map<const Vec>(e.data(), Eigen::Index(e.size())));
  } catch (const nlohmann::json::exception &ex) {
    throw InputError(path + ": " + ex.what());
  } catch (const std::invalid_argument &ex) {
    throw InputError(path + ": " + ex.what());
  }
}

void write_text(const std::filesystem::path &p, const std::string &s) {
  std::ofstream out(p, std::ios::binary);
  if (!out)
    throw InputError("cannot write " + p.string());
  out << s;
}

void write_vector_csv(const std::filesystem::path &p, const Vec &v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    s += fmt17(v[i]) + "\n";
  write_text(p, s);
}

void write_matrix_csv(const std::filesystem::path &p, const Mat &m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      s += (j ? "," : "") + fmt17(m(i, j));
    s += "\n";
  }
  write_text(p, s);
}

nlohmann::json curve_to_json(const pareto::ParetoCurve &c) {
  nlohmann::json j;
  j["kind"] = c.kind == pareto::CurveKind::frontier ? "frontier" : "subfrontier";
  j["orientation"] =
      c.orientation == pareto::Orientation::y_of_x ? "y_of_x" : "x_of_y";
  nlohmann::json pts = nlohmann::json::array();
  for (const auto &p : c.points)
    pts.push_back({p[0], p[1]});
  j["points"] = pts;
  j["breakpoints"] = c.breakpoints;
  if (!c.flagged.empty())
    j["flagged"] = c.flagged;
  if (!c.gaps.empty())
    j["gaps"] = c.gaps;
  return j;
}

pareto::ParetoCurve curve_from_json(const nlohmann::json &j) {
  pareto::ParetoCurve c;
  c.kind = j.at("kind") == "frontier" ? pareto::CurveKind::frontier
                                      : pareto::CurveKind::subfrontier;
  c.orientation = j.at("orientation") == "y_of_x"
                      ? pareto::Orientation::y_of_x
                      : pareto::Orientation::x_of_y;
  for (const auto &p : j.at("points"))
    c.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  c.breakpoints = j.value("breakpoints", std::vector<size_t>{});
  c.flagged = j.value("flagged", std::vector<size_t>{});
  c.gaps = j.value("gaps", std::vector<double>{});
  return c;
}

void write_curve_csv(const std::filesystem::path &p,
                     const pareto::ParetoCurve &c) {
  std::string s = "x,y\n";
  for (const auto &q : c.points)
    s += fmt17(q[0]) + "," + fmt17(q[1]) + "\n";
  write_text(p, s);
}

namespace {

struct Frame {
  double xmax = 1, ymax = 1;
  static constexpr double W = 400, H = 300, M = 20;
  double px(double x) const { return M + W * x / xmax; }
  double py(double y) const { return M + H * (1 - y / ymax); }
};

std::string svg_open() {
  return fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" "
                     "width=\"{}\" height=\"{}\">\n",
                     Frame::W + 2 * Frame::M, Frame::H + 2 * Frame::M);
}

} // namespace

std::string curves_svg(const std::vector<const pareto::ParetoCurve *> &cs) {
  Frame f;
  for (const auto *c : cs)
    for (const auto &p : c->points) {
      f.xmax = std::max(f.xmax, p[0]);
      f.ymax = std::max(f.ymax, p[1]);
    }
  std::string s = svg_open();
  const char *colors[] = {"blue", "green", "red"};
  for (size_t k = 0; k < cs.size(); ++k) {
    s += "<polyline fill=\"none\" stroke=\"" + std::string(colors[k % 3]) +
         "\" points=\"";
    for (const auto &p : cs[k]->points)
      s += fmt::format("{:.3f},{:.3f} ", f.px(p[0]), f.py(p[1]));
    s += "\"/>\n";
  }
  return s + "</svg>\n";
}

std::string bars_svg(const pareto::SVRegion &r) {
  Frame f;
  double x = 0;
  for (const auto &b : r.bars) {
    x += std::abs(b.width);
    f.ymax = std::max(f.ymax, b.height);
  }
  f.xmax = std::max(1.0, x);
  std::string s = svg_open();
  // Bars stack from the left; a bar of height h spans [0, h] vertically.
  double left = 0;
  for (const auto &b : r.bars) {
    double w = std::abs(b.width);
    s += fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" "
                     "height=\"{:.3f}\" fill=\"{}\"/>\n",
                     f.px(left), f.py(b.height), f.px(left + w) - f.px(left),
                     f.py(0) - f.py(b.height),
                     b.width >= 0 ? "steelblue" : "salmon");
    left += w;
  }
  return s + "</svg>\n";
}

} // namespace cli
