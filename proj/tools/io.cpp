#include "io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace schmidt_forge::io {
namespace {

Json complex_array(const Complex* data, std::size_t n) {
  Json arr = Json::array();
  for (std::size_t k = 0; k < n; ++k) arr.push_back({data[k].real(), data[k].imag()});
  return arr;
}

Json row_major(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return arr;
}

Complex parse_complex(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw StructuralError("complex entry must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

int parse_local_dim(const Json& j) {
  if (!j.is_object() || !j.contains("local_dim") || !j["local_dim"].is_number_integer()) {
    throw StructuralError("missing integer field \"local_dim\"");
  }
  const int d = j["local_dim"].get<int>();
  if (d < 1) throw StructuralError("\"local_dim\" must be positive");
  return d;
}

}  // namespace

Json to_json(const BipartiteOperator& op) {
  return {{"local_dim", op.local_dim()}, {"entries", row_major(op.matrix())}};
}

Json to_json(const PureState& state) {
  return {{"local_dim", state.local_dim()},
          {"amplitudes", complex_array(state.amplitudes().data(),
                                       static_cast<std::size_t>(state.amplitudes().size()))}};
}

Json to_json(const NormalFormResult& nf) {
  return {{"local_dim", nf.unitary.rows()},
          {"unitary", row_major(nf.unitary)},
          {"coefficients", nf.coefficients},
          {"residual", nf.residual}};
}

Json to_json(const SchmidtCertificate& cert) {
  Json chain = Json::array();
  for (const auto& step : cert.inference_chain) {
    chain.push_back({{"rule", to_string(step.rule)}, {"statement", step.statement}});
  }
  return {{"schema_version", kCertificateSchemaVersion},
          {"input_digest", cert.input_digest},
          {"method", to_string(cert.method)},
          {"measured_value", cert.measured_value},
          {"threshold_used", cert.threshold_used},
          {"schmidt_lower_bound", cert.schmidt_lower_bound},
          {"ppt_extension_bound", cert.ppt_extension_bound},
          {"inference_chain", chain},
          {"tolerance", cert.tolerance}};
}

Json to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(
        {{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed}});
  }
  return {{"passed", report.passed()}, {"checks", checks}};
}

Json to_json(const PpptResult& result, const std::string& input_digest) {
  return {{"input_digest", input_digest},
          {"local_dim", result.sigma_opt.local_dim()},
          {"p_value", result.p_value},
          {"upper_bound", result.upper_bound},
          {"status", to_string(result.status)},
          {"iterations", result.iterations},
          {"message", result.message},
          {"residuals",
           {{"psd_min", result.residuals.psd_min},
            {"ppt_min", result.residuals.ppt_min},
            {"projection_error", result.residuals.projection_error},
            {"trace_error", result.residuals.trace_error}}},
          {"sigma_opt", to_json(result.sigma_opt)},
          {"rho_s_opt", to_json(result.rho_s_opt)}};
}

BipartiteOperator operator_from_json(const Json& j) {
  const int d = parse_local_dim(j);
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw StructuralError("missing array field \"entries\"");
  }
  const auto& arr = j["entries"];
  const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (arr.size() != n * n) {
    std::ostringstream msg;
    msg << "\"entries\" must hold " << n * n << " values for local_dim " << d << ", got "
        << arr.size();
    throw StructuralError(msg.str());
  }
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < arr.size(); ++k) {
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = parse_complex(arr[k]);
  }
  return {d, std::move(m)};
}

PureState state_from_json(const Json& j) {
  const int d = parse_local_dim(j);
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) {
    throw StructuralError("missing array field \"amplitudes\"");
  }
  const auto& arr = j["amplitudes"];
  const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (arr.size() != n) {
    std::ostringstream msg;
    msg << "\"amplitudes\" must hold " << n << " values for local_dim " << d << ", got "
        << arr.size();
    throw StructuralError(msg.str());
  }
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) v(static_cast<Eigen::Index>(k)) = parse_complex(arr[k]);
  return {d, std::move(v)};
}

StateInput state_input_from_json(const Json& j) {
  if (j.is_object() && j.contains("amplitudes")) return state_from_json(j);
  return operator_from_json(j);
}

BipartiteOperator as_density(const StateInput& input) {
  if (const auto* pure = std::get_if<PureState>(&input)) return pure->projector();
  return std::get<BipartiteOperator>(input);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw StructuralError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace schmidt_forge::io
