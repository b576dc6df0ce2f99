#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymer/admissibility.hpp"
#include "polymer/model.hpp"
#include "polymer/travwave.hpp"

namespace polymer::cli {

enum ExitCode : int { kOk = 0, kBadInput = 1, kNoSolution = 2, kValidationFailed = 3 };

/// Malformed input; `field` names the offending option or config key.
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  std::string model = "monotone";
  double mu0 = 1.0;
  double mu_slope = 1.0;
  double mu_bulge = 4.0;
  double alpha = 0.0;
  double capacity = 2.0;
  double affinity = 1.0;
  std::vector<double> alpha_seq;
  double kappa = 1.0;
  double alpha_bar = 0.5;
  double window_lo = -0.5;
  double window_hi = 3.5;
  double decay_ratio = 0.05;
  double decay_scale = 0.02;
  double persist_ratio = 0.5;
  double seed_offset = 1e-8;
  double mismatch_tol = 1e-9;
  double match_c = 0.5;
  int samples = 401;
  std::string out_dir = ".";

  /// Throws InputError on the first broken invariant.
  void validate() const;
  FluxModel flux() const;
  Adsorption adsorption() const;
  VanishingAdsorptionOptions va_options() const;
  ShootOptions shoot_options() const;
};

/// "s,c" with both entries finite and in [0, 1].
State parse_state(const std::string& text, const std::string& field);
std::vector<double> parse_list(const std::string& text, const std::string& field);
Criterion parse_criterion(const std::string& text);

/// Reads flat key=value lines; '#' starts a comment. Keys are returned as
/// long flags ("mu_slope" becomes "--mu-slope=...").
std::vector<std::string> config_file_args(const std::string& path);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polymer::cli
