#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bakerlab/config.hpp"
#include "bakerlab/function_model.hpp"

namespace bakerlab::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidConfig = 1,
  kUnwritableOutput = 2,
  kBranchLost = 3,
  kOracleInconclusive = 4,
  kVerificationFailed = 5,
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eedba4e2024ULL;

/// Dispatches on config.command(); `out` gets summaries, `err` diagnostics.
int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

int run_render(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int run_trace(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int run_perturb(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int run_classify(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// `map` = fatou | scaled, with c (+ c_im) and alpha (+ alpha_im).
EntireMap map_from_config(const ExperimentConfig& config);

struct CheckResult {
  std::string name;
  bool pass;
  std::string measured;
};

/// The property battery behind run_verify. Sampling uses config key `seed`.
std::vector<CheckResult> property_battery(const ExperimentConfig& config);

}  // namespace bakerlab::cli
