#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "io.hpp"
#include "schmidt_forge/certify.hpp"
#include "schmidt_forge/errors.hpp"
#include "schmidt_forge/ppt_sdp.hpp"
#include "schmidt_forge/schmidt.hpp"
#include "schmidt_forge/spectral_analytic.hpp"
#include "schmidt_forge/states.hpp"
#include "schmidt_forge/tensor_core.hpp"

namespace schmidt_forge::cli {
namespace {

using io::Json;

constexpr int kMaxDim = 20;
constexpr double kSpectrumTolerance = 1e-9;
constexpr double kDeterminantTolerance = 1e-8;

// Thrown for flag combinations CLI11 cannot express; reported as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
  } else {
    io::write_text_file(cfg.output, text);
  }
}

void require_dim(const RunConfig& cfg, int min_dim = 2) {
  if (cfg.dim < min_dim || cfg.dim > kMaxDim) {
    std::ostringstream msg;
    msg << "--dim is required and must lie in [" << min_dim << ", " << kMaxDim << "]";
    throw UsageError(msg.str());
  }
}

void require_even_dim(const RunConfig& cfg) {
  require_dim(cfg);
  if (cfg.dim % 2 != 0) throw UsageError("--dim must be even");
}

void require_p(const RunConfig& cfg) {
  if (cfg.p < 0) throw UsageError("--p is required");
}

void require_f(const RunConfig& cfg) {
  if (cfg.f < 0) throw UsageError("--f is required");
}

std::string fixed(double v, int precision = 12) {
  std::ostringstream s;
  s << std::setprecision(precision) << std::scientific << v;
  return s.str();
}

PsiACoefficients coefficients_or_uniform(const RunConfig& cfg) {
  if (cfg.coeffs.empty()) return PsiACoefficients::uniform(cfg.dim);
  return PsiACoefficients(cfg.dim, cfg.coeffs);
}

Json pure_state_document(const PureState& state) {
  Json j = io::to_json(state.projector());
  j["amplitudes"] = io::to_json(state)["amplitudes"];
  return j;
}

// Rank-one density operators are turned back into a state vector.
PureState pure_state_from_input(const io::StateInput& input) {
  if (const auto* pure = std::get_if<PureState>(&input)) return *pure;
  const auto& op = std::get<BipartiteOperator>(input);
  const auto spec = hermitian_eig(op);
  const Eigen::Index n = spec.eigenvalues.size();
  const double top = spec.eigenvalues(n - 1);
  const double rest = n > 1 ? std::max(std::abs(spec.eigenvalues(0)),
                                       std::abs(spec.eigenvalues(n - 2)))
                            : 0.0;
  if (std::abs(top - 1.0) > 1e-9 || rest > 1e-9) {
    throw DomainError("operator input is not a rank-one projector", rest);
  }
  Vector v = spec.eigenvectors.col(n - 1);
  // Fix the global phase: first entry of largest modulus made real positive.
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  v *= std::conj(v(k)) / std::abs(v(k));
  return PureState::normalized(op.local_dim(), v);
}

std::string input_digest(const io::StateInput& input) {
  if (const auto* pure = std::get_if<PureState>(&input)) return state_digest(*pure);
  return state_digest(std::get<BipartiteOperator>(input));
}

bool relatively_close(double x, double y, double floor) {
  const double scale = std::max({std::abs(x), std::abs(y), floor});
  return std::abs(x - y) <= kDeterminantTolerance * scale;
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("SCHMIDT_FORGE_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0 && v < 1) return v;
  }
  return 1e-7;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  const std::string& name = cfg.constructor;
  Json doc;
  if (name == "random-antisym") {
    require_dim(cfg);
    std::mt19937_64 rng(cfg.seed);
    doc = pure_state_document(random_antisymmetric_state(cfg.dim, rng));
  } else if (name == "half-d") {
    const int d = cfg.dim;
    if (d < 4 || d > kMaxDim || d % 2 != 0) {
      throw UsageError("half-d needs an even --dim in [4, 20]");
    }
    doc = io::to_json(construct_half_d_state(d).state);
  } else if (name == "maxent") {
    require_dim(cfg);
    doc = pure_state_document(max_entangled(cfg.dim));
  } else if (name == "isotropic") {
    require_dim(cfg);
    require_f(cfg);
    doc = io::to_json(isotropic_state(cfg.dim, cfg.f));
  } else if (name == "psi0a") {
    require_even_dim(cfg);
    doc = pure_state_document(psi_0a(cfg.dim));
  } else if (name == "psia") {
    require_dim(cfg);
    if (cfg.coeffs.empty()) throw UsageError("psia needs --coeffs");
    doc = pure_state_document(psi_a(PsiACoefficients(cfg.dim, cfg.coeffs)));
  } else if (name == "sigma0") {
    require_even_dim(cfg);
    require_p(cfg);
    doc = io::to_json(sigma_0(cfg.dim, cfg.p));
  } else if (name == "sym-projector") {
    require_dim(cfg);
    doc = io::to_json(symmetric_projector(cfg.dim));
  } else if (name == "antisym-projector") {
    require_dim(cfg);
    doc = io::to_json(antisymmetric_projector(cfg.dim));
  } else if (name == "swap") {
    require_dim(cfg);
    doc = io::to_json(swap_operator(cfg.dim));
  } else if (name == "tau") {
    require_even_dim(cfg);
    doc = io::to_json(tau_operator(coefficients_or_uniform(cfg)));
  } else {
    throw UsageError("unknown constructor '" + name + "'");
  }
  emit(cfg, out, io::dump(doc));
  return kExitOk;
}

int cmd_normal_form(const RunConfig& cfg, std::ostream& out) {
  const auto input = io::state_input_from_json(io::read_json_file(cfg.input));
  const auto nf = youla_normal_form(pure_state_from_input(input));
  emit(cfg, out, io::dump(io::to_json(nf)));
  return kExitOk;
}

int cmd_p_ppt(const RunConfig& cfg, std::ostream& out) {
  const auto input = io::state_input_from_json(io::read_json_file(cfg.input));
  const PpptProblem problem(io::as_density(input), cfg.tol, cfg.max_iter);
  const auto result = solve_pppt(problem);
  Json doc = io::to_json(result, input_digest(input));
  int code = kExitOk;
  if (result.status == PpptStatus::Infeasible) {
    code = kExitUsage;
  } else {
    const auto report = verify_pppt_result(result, problem);
    doc["verification"] = io::to_json(report);
    if (result.status == PpptStatus::MaxIterations) {
      code = kExitNonConvergence;
    } else if (!report.passed()) {
      code = kExitVerificationFailure;
    }
  }
  emit(cfg, out, io::dump(doc));
  return code;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  SchmidtCertificate cert;
  switch (cfg.certify_mode) {
    case CertifyMode::FromPppt: {
      if (!cfg.input.empty()) {
        const Json doc = io::read_json_file(cfg.input);
        if (!doc.contains("status") || !doc.contains("upper_bound") ||
            !doc.contains("local_dim")) {
          throw StructuralError("not a p^PPT result document: " + cfg.input);
        }
        if (doc["status"].get<std::string>() != to_string(PpptStatus::Optimal)) {
          throw NonConvergenceError("p^PPT result did not converge; nothing to certify");
        }
        // upper_bound over-estimates p^PPT, so every exclusion stays sound.
        const double p = std::max(doc["upper_bound"].get<double>(), doc["p_value"].get<double>());
        cert = infer_from_pppt(doc["local_dim"].get<int>(), p, cfg.tol,
                               doc.value("input_digest", std::string{}));
      } else {
        require_dim(cfg);
        require_p(cfg);
        cert = infer_from_pppt(cfg.dim, cfg.p, cfg.tol);
      }
      break;
    }
    case CertifyMode::Isotropic: {
      if (!cfg.input.empty()) {
        const auto input = io::state_input_from_json(io::read_json_file(cfg.input));
        const auto rho = io::as_density(input);
        // Rounding can push a pure maximally entangled input just above 1.
        const double fraction = std::clamp(entanglement_fraction(rho), 0.0, 1.0);
        cert = isotropic_witness(rho.local_dim(), fraction, input_digest(input));
      } else {
        require_dim(cfg);
        require_f(cfg);
        cert = isotropic_witness(cfg.dim, cfg.f);
      }
      break;
    }
    case CertifyMode::Construct: {
      const int d = cfg.construct_dim;
      if (d < 4 || d > kMaxDim || d % 2 != 0) {
        throw UsageError("--construct needs an even dimension in [4, 20]");
      }
      cert = construct_half_d_state(d).certificate;
      break;
    }
    case CertifyMode::None:
      throw UsageError("certify needs one of --from-pppt, --isotropic, --construct");
  }
  emit(cfg, out, io::dump(io::to_json(cert)));
  return kExitOk;
}

int cmd_verify_appendix(const RunConfig& cfg, std::ostream& out) {
  require_even_dim(cfg);
  require_p(cfg);
  const int d = cfg.dim;
  const double p = cfg.p;

  const auto closed = closed_form_spectrum(d, p).expanded();
  const auto numeric = hermitian_eig(partial_transpose(sigma_0(d, p))).eigenvalues;
  bool ok = true;

  Json rows = Json::array();
  std::ostringstream table;
  table << "spectrum of sigma_0^G  d=" << d << "  p=" << std::setprecision(10) << p << "\n";
  table << std::setw(5) << "k" << std::setw(22) << "closed_form" << std::setw(22) << "numeric"
        << std::setw(14) << "abs_diff" << "  status\n";
  for (std::size_t k = 0; k < closed.size(); ++k) {
    const double num = numeric(static_cast<Eigen::Index>(k));
    const double diff = std::abs(closed[k] - num);
    const bool row_ok = diff <= kSpectrumTolerance;
    ok = ok && row_ok;
    rows.push_back({{"index", k}, {"closed_form", closed[k]}, {"numeric", num},
                    {"abs_diff", diff}, {"agree", row_ok}});
    table << std::setw(5) << k << std::setw(22) << fixed(closed[k]) << std::setw(22)
          << fixed(num) << std::setw(14) << fixed(diff, 2) << "  " << (row_ok ? "ok" : "MISMATCH")
          << "\n";
  }

  const auto fam = closed_form_spectrum(d, p).families;
  Json families = Json::array();
  table << "\nfamilies\n";
  for (std::size_t k = 0; k < fam.size(); ++k) {
    families.push_back({{"family", k + 1}, {"value", fam[k].value},
                        {"multiplicity", fam[k].multiplicity}});
    table << "  family" << k + 1 << "  value " << fixed(fam[k].value) << "  multiplicity "
          << fam[k].multiplicity << "\n";
  }

  const auto sym = DeterminantSymbols<double>::from_state(d, p, 0.0);
  const double floor = kDeterminantTolerance *
                       std::pow(std::abs(sym.a) + (d - 1) * std::abs(sym.b) + std::abs(sym.c), d);
  const double det_closed = determinant_closed_form(d, sym.a, sym.b, sym.c);
  const double det_rec = determinant_recurrence(d, sym.a, sym.b, sym.c);
  Json det = {{"a", sym.a}, {"b", sym.b}, {"c", sym.c}, {"lambda", 0.0},
              {"closed_form", det_closed}, {"recurrence", det_rec}};
  bool det_ok = relatively_close(det_closed, det_rec, floor);
  table << "\ndeterminant of the paired block at lambda=0\n";
  table << "  closed_form  " << fixed(det_closed) << "\n";
  table << "  recurrence   " << fixed(det_rec) << "\n";
  if (d <= 12) {
    const double det_direct = determinant_direct(d, sym.a, sym.b, sym.c);
    det["direct"] = det_direct;
    det_ok = det_ok && relatively_close(det_closed, det_direct, floor) &&
             relatively_close(det_rec, det_direct, floor);
    table << "  direct       " << fixed(det_direct) << "\n";
  } else {
    det["direct"] = nullptr;
    table << "  direct       skipped (d > 12)\n";
  }
  det["agree"] = det_ok;
  table << "  status       " << (det_ok ? "ok" : "MISMATCH") << "\n";
  ok = ok && det_ok;

  const double min_eig = numeric(0);
  const bool psd = min_eig >= -1e-10;
  table << "\nsigma_0^G " << (psd ? "is" : "is not") << " PSD (min eigenvalue "
        << fixed(min_eig) << ")\n";
  table << "result: " << (ok ? "PASS" : "FAIL") << "\n";

  if (cfg.json) {
    Json doc = {{"local_dim", d}, {"p", p}, {"spectrum", rows}, {"families", families},
                {"determinant", det}, {"min_eigenvalue", min_eig}, {"ppt", psd},
                {"passed", ok}};
    emit(cfg, out, io::dump(doc));
  } else {
    emit(cfg, out, table.str());
  }
  return ok ? kExitOk : kExitVerificationFailure;
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out) {
  Json rows = Json::array();
  std::ostringstream table;
  table << std::setw(4) << "d" << std::setw(14) << "analytic" << std::setw(14) << "sdp_p"
        << std::setw(14) << "gap" << std::setw(8) << "bound" << "  status\n";
  bool converged = true;
  for (int d : {2, 4, 6, 8}) {
    const double analytic = ppt_threshold_analytic(d);
    const auto result = solve_pppt(PpptProblem(psi_0a(d).projector(), cfg.tol, cfg.max_iter));
    const bool row_ok = result.status == PpptStatus::Optimal;
    converged = converged && row_ok;
    const double gap = result.p_value - analytic;
    Json row = {{"d", d}, {"analytic_threshold", analytic}, {"sdp_p", result.p_value},
                {"gap", gap}, {"status", to_string(result.status)},
                {"iterations", result.iterations}};
    std::string bound_text = "n/a";
    if (d >= 4) {
      const int bound = construct_half_d_state(d).certificate.schmidt_lower_bound;
      row["certified_bound"] = bound;
      bound_text = std::to_string(bound);
    } else {
      row["certified_bound"] = nullptr;
    }
    rows.push_back(row);
    table << std::setw(4) << d << std::setw(14) << std::fixed << std::setprecision(6) << analytic
          << std::setw(14) << result.p_value << std::setw(14) << std::scientific
          << std::setprecision(2) << gap << std::setw(8) << bound_text << "  "
          << (row_ok ? "ok" : "NOT CONVERGED") << "\n";
  }
  if (cfg.json) {
    emit(cfg, out, io::dump({{"rows", rows}, {"converged", converged}}));
  } else {
    emit(cfg, out, table.str());
  }
  return converged ? kExitOk : kExitNonConvergence;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.tol = default_tolerance();

  CLI::App app{"Schmidt-number certificates for PPT states", "schmidt_forge"};
  app.require_subcommand(1);
  const auto positive = CLI::PositiveNumber;
  const auto unit = CLI::Range(0.0, 1.0);
  const auto dims = CLI::Range(1, kMaxDim);

  auto* construct = app.add_subcommand("construct", "Write a named state or operator as JSON");
  construct->add_option("name", cfg.constructor,
                        "maxent | isotropic | psi0a | psia | sigma0 | sym-projector | "
                        "antisym-projector | swap | tau | random-antisym | half-d")
      ->required();
  construct->add_option("--dim", cfg.dim, "Local dimension")->check(dims);
  construct->add_option("--p", cfg.p, "Antisymmetric weight of sigma0")->check(unit);
  construct->add_option("--f", cfg.f, "Fidelity of the isotropic state")->check(unit);
  construct->add_option("--coeffs", cfg.coeffs, "Pair coefficients c_1, c_3, ...");
  construct->add_option("--seed", cfg.seed, "Seed for random-antisym");
  construct->add_option("--output,-o", cfg.output, "Output file");

  auto* normal = app.add_subcommand("normal-form", "Skew-symmetric normal form of a state");
  normal->add_option("--state", cfg.input, "State JSON")->required()->check(CLI::ExistingFile);
  normal->add_option("--output,-o", cfg.output, "Output file");

  auto* pppt = app.add_subcommand("p-ppt", "Solve the p^PPT program for an antisymmetric state");
  pppt->add_option("--state", cfg.input, "State JSON")->required()->check(CLI::ExistingFile);
  pppt->add_option("--tol", cfg.tol, "Solver tolerance")->check(positive);
  pppt->add_option("--max-iter", cfg.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  pppt->add_option("--output,-o", cfg.output, "Output file");

  auto* certify = app.add_subcommand("certify", "Emit a Schmidt-number certificate");
  std::string from_pppt;
  std::string iso_state;
  auto* opt_from = certify->add_option("--from-pppt", from_pppt, "p^PPT result JSON")
                       ->check(CLI::ExistingFile);
  auto* opt_iso = certify->add_flag("--isotropic", "Isotropic fidelity witness");
  auto* opt_con = certify->add_option("--construct", cfg.construct_dim,
                                      "Certify the half-dimension construction");
  auto* opt_p = certify->add_option("--p", cfg.p, "Measured p^PPT")->check(unit);
  certify->add_option("--f", cfg.f, "Fidelity with the maximally entangled state")->check(unit);
  certify->add_option("--dim", cfg.dim, "Local dimension")->check(dims);
  certify->add_option("--state", iso_state, "State JSON for --isotropic")
      ->check(CLI::ExistingFile);
  certify->add_option("--tol", cfg.tol, "Tolerance on the measured value")->check(positive);
  certify->add_option("--output,-o", cfg.output, "Output file");
  opt_from->excludes(opt_iso)->excludes(opt_con);
  opt_iso->excludes(opt_con);
  opt_con->excludes(opt_p);

  auto* appendix = app.add_subcommand("verify-appendix",
                                      "Compare the closed-form spectrum with numerics");
  appendix->add_option("--dim", cfg.dim, "Even local dimension")->required()->check(dims);
  appendix->add_option("--p", cfg.p, "Antisymmetric weight")->required()->check(unit);
  appendix->add_flag("--json", cfg.json, "Machine-readable output");
  appendix->add_option("--output,-o", cfg.output, "Output file");

  auto* reproduce = app.add_subcommand("reproduce", "Threshold table for d = 2, 4, 6, 8");
  reproduce->add_option("--tol", cfg.tol, "Solver tolerance")->check(positive);
  reproduce->add_option("--max-iter", cfg.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  reproduce->add_flag("--json", cfg.json, "Machine-readable output");
  reproduce->add_option("--output,-o", cfg.output, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* usage_for = &app;
  try {
    if (construct->parsed()) {
      usage_for = construct;
      cfg.subcommand = Subcommand::Construct;
      return cmd_construct(cfg, out);
    }
    if (normal->parsed()) {
      usage_for = normal;
      cfg.subcommand = Subcommand::NormalForm;
      return cmd_normal_form(cfg, out);
    }
    if (pppt->parsed()) {
      usage_for = pppt;
      cfg.subcommand = Subcommand::PPpt;
      return cmd_p_ppt(cfg, out);
    }
    if (certify->parsed()) {
      usage_for = certify;
      cfg.subcommand = Subcommand::Certify;
      if (*opt_from) {
        cfg.certify_mode = CertifyMode::FromPppt;
        cfg.input = from_pppt;
      } else if (*opt_iso) {
        cfg.certify_mode = CertifyMode::Isotropic;
        cfg.input = iso_state;
      } else if (*opt_con) {
        cfg.certify_mode = CertifyMode::Construct;
      } else if (*opt_p) {
        cfg.certify_mode = CertifyMode::FromPppt;
      }
      return cmd_certify(cfg, out);
    }
    if (appendix->parsed()) {
      usage_for = appendix;
      cfg.subcommand = Subcommand::VerifyAppendix;
      return cmd_verify_appendix(cfg, out);
    }
    usage_for = reproduce;
    cfg.subcommand = Subcommand::Reproduce;
    return cmd_reproduce(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage_for->help();
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace schmidt_forge::cli
