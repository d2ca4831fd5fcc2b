#pragma once

#include "pareto/pareto.hpp"
#include "pareto/tensor.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cli {

using pareto::Mat;
using pareto::Vec;

/// Raised for malformed input files; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Comma- or whitespace-separated numeric rows; blank lines and lines
/// starting with '#' are skipped.
std::vector<std::vector<double>> read_table(const std::string &path);
/// A vector is one value per line, or a single row.
Vec read_vector(const std::string &path);
Mat read_matrix(const std::string &path);
pareto::Tensor read_tensor(const std::string &path);

void write_vector_csv(const std::filesystem::path &p, const Vec &v);
void write_matrix_csv(const std::filesystem::path &p, const Mat &m);
void write_text(const std::filesystem::path &p, const std::string &s);

nlohmann::json curve_to_json(const pareto::ParetoCurve &c);
pareto::ParetoCurve curve_from_json(const nlohmann::json &j);
void write_curve_csv(const std::filesystem::path &p,
                     const pareto::ParetoCurve &c);

std::string curves_svg(const std::vector<const pareto::ParetoCurve *> &cs);
std::string bars_svg(const pareto::SVRegion &r);

std::string fmt17(double v);

} // namespace cli
