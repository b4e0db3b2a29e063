#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace schmidt_forge::cli {

enum class Subcommand { Construct, NormalForm, PPpt, Certify, VerifyAppendix, Reproduce };

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNonConvergence = 2,
  kExitVerificationFailure = 3,
};

enum class CertifyMode { None, FromPppt, Isotropic, Construct };

struct RunConfig {
  Subcommand subcommand = Subcommand::Construct;
  std::string constructor;  // construct NAME
  int dim = 0;
  double p = -1;  // negative when unset
  double f = -1;  // negative when unset
  double tol = 1e-7;
  int max_iter = 50000;
  std::uint64_t seed = 0;
  std::vector<double> coeffs;
  std::string input;
  std::string output;
  bool json = false;
  CertifyMode certify_mode = CertifyMode::None;
  int construct_dim = 0;
};

/// Default solver tolerance: SCHMIDT_FORGE_TOL when set, else 1e-7.
double default_tolerance();

/// Runs the tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_construct(const RunConfig& cfg, std::ostream& out);
int cmd_normal_form(const RunConfig& cfg, std::ostream& out);
int cmd_p_ppt(const RunConfig& cfg, std::ostream& out);
int cmd_certify(const RunConfig& cfg, std::ostream& out);
int cmd_verify_appendix(const RunConfig& cfg, std::ostream& out);
int cmd_reproduce(const RunConfig& cfg, std::ostream& out);

}  // namespace schmidt_forge::cli
