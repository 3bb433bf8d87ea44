#include "coherence/io.hpp"

#include <fstream>
#include <sstream>

#include "coherence/errors.hpp"

namespace coherence {

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::string_view field) {
  const std::string name(field);
  if (!j.is_array() || j.empty()) throw ParseError(name + ": expected a non-empty array of rows");
  const auto rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError(name + "[0]: expected a non-empty array of entries");
  const auto cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    const std::string row_name = name + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw ParseError(row_name + ": expected an array of entries");
    if (row.size() != cols) {
      throw ParseError(row_name + ": has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError(row_name + "[" + std::to_string(c) + "]: expected a [re, im] pair of numbers");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

namespace {

int positive_int_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string(key) + ": missing field");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) throw ParseError(std::string(key) + ": expected a positive integer");
  return v.get<int>();
}

}  // namespace

Json state_to_json(const DensityMatrix& rho) { return {{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}}; }

DensityMatrix state_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("state: expected a JSON object");
  const int dim = positive_int_field(j, "dim");
  if (!j.contains("matrix")) throw ParseError("matrix: missing field");
  const ComplexMatrix m = matrix_from_json(j.at("matrix"), "matrix");
  if (m.rows() != dim || m.cols() != dim) {
    throw ParseError("matrix: is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " but dim is " +
                     std::to_string(dim));
  }
  return DensityMatrix(m);
}

Json channel_to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& k : ch.kraus()) ops.push_back(matrix_to_json(k));
  return {{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("channel: expected a JSON object");
  const int dim_in = positive_int_field(j, "dim_in");
  const int dim_out = positive_int_field(j, "dim_out");
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) {
    throw ParseError("kraus: expected a non-empty array of matrices");
  }
  std::vector<ComplexMatrix> ops;
  for (std::size_t n = 0; n < j.at("kraus").size(); ++n) {
    const std::string field = "kraus[" + std::to_string(n) + "]";
    ComplexMatrix k = matrix_from_json(j.at("kraus")[n], field);
    if (k.rows() != dim_out || k.cols() != dim_in) {
      throw ParseError(field + ": is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + ", expected " +
                       std::to_string(dim_out) + "x" + std::to_string(dim_in));
    }
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json to_json(const ClassificationReport& report) {
  Json out;
  out["cptp"] = {{"valid", report.cptp.valid}, {"deviation", report.cptp.deviation}, {"tol", report.cptp.tol}};
  out["nc"] = {{"nc", report.nc.nc},
               {"max_offdiagonal", report.nc.max_offdiagonal},
               {"tol", report.nc.tol},
               {"witness", report.nc.witness ? Json(*report.nc.witness) : Json(nullptr)}};
  if (report.ic) {
    const auto& ic = *report.ic;
    out["ic_heuristic"] = {{"result", ic.found ? "found" : "not_found"},
                           {"violation", ic.violation},
                           {"starts_used", ic.starts_used},
                           {"starts", ic.options.starts},
                           {"iterations", ic.options.iterations},
                           {"tol", ic.options.tol},
                           {"mixing", matrix_to_json(ic.mixing)}};
  } else {
    out["ic_heuristic"] = nullptr;
  }
  return out;
}

Json to_json(const DecompositionSearchResult& result) {
  Json comps = Json::array();
  for (const auto& c : result.components) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < c.amplitudes().size(); ++i) amps.push_back({c.amplitudes()(i).real(), c.amplitudes()(i).imag()});
    comps.push_back(std::move(amps));
  }
  return {{"objective", result.objective},
          {"converged", result.converged},
          {"starts_used", result.starts_used},
          {"weights", result.weights},
          {"components", std::move(comps)}};
}

Json to_json(const PowerEstimate& estimate) {
  return {{"measure", measure_name(estimate.measure)},
          {"best_gain", estimate.best_gain},
          {"power_lower_bound", estimate.power_lower_bound},
          {"best_input", state_to_json(estimate.best_input)},
          {"starts_used", estimate.starts_used},
          {"evaluations", estimate.evaluations}};
}

Json to_json(const SuperadditivityReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"passed", c.passed}});
  return {{"input", state_to_json(report.input)},
          {"output", state_to_json(report.output)},
          {"output_residual", report.output_residual},
          {"v_residuals", report.v_residuals},
          {"cf_input", report.cf_input},
          {"grid", report.grid},
          {"delta", report.delta},
          {"delta_theta", report.delta_theta},
          {"delta_phi", report.delta_phi},
          {"cf_output_lower_bound", report.cf_output_lower},
          {"cf_output_search_upper_bound", report.cf_output_search},
          {"cf_output_search_converged", report.cf_output_search_converged},
          {"checks", std::move(checks)}};
}

}  // namespace coherence
