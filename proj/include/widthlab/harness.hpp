#ifndef WIDTHLAB_HARNESS_HPP
#define WIDTHLAB_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace widthlab {

inline constexpr const char* kWidthLabVersion = "0.1.0";

enum class ExitCode : int { Ok = 0, VerificationFailure = 1, ConfigError = 2, Exhausted = 3 };

struct ExperimentConfig {
  std::string subcommand;
  std::uint64_t seed = 0;
  std::string format = "csv";  // csv | jsonl
  std::map<std::string, std::string> params;
};

const std::vector<std::string>& subcommands();

/// Keys accepted by a subcommand with their default values.
std::map<std::string, std::string> default_params(const std::string& subcommand);

/// Fills in defaults; throws ConfigError for an unknown subcommand, key or format.
ExperimentConfig resolve(ExperimentConfig cfg);

/// Sorted-key JSON of the resolved config.
std::string canonical_json(const ExperimentConfig& cfg);

/// "key=value" lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Writes the header line and the rows of one experiment. Library errors
/// are reported on `err` together with the subcommand and the resolved config.
ExitCode run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace widthlab

#endif  // WIDTHLAB_HARNESS_HPP
