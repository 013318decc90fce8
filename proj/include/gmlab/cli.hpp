#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmlab/report_io.hpp"
#include "gmlab/sequence.hpp"

namespace gmlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumericalGuard = 2, kIo = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Defect, Embed, Lemma1, Converge, Diverge, Report };

/// Family name plus the parameters resolved from flags or an inline "name:args" suffix.
struct FamilySpec {
  std::string kind = "powerlog";  // thm2 | thm3 | remark3 | remark4 | powerlog | random
  Index period = 0;               // thm2, thm3, remark4
  double p = 1.0;                 // powerlog
  double q = 0.0;                 // powerlog
  Index length = 64;              // random
  std::uint64_t seed = 42;        // random

  [[nodiscard]] RealSequence build() const;
  [[nodiscard]] std::string label() const;
};

struct RunConfig {
  Command command = Command::Defect;
  FamilySpec family;
  Index r = 1;
  Index r1 = 1;
  Index r2 = 2;
  double c = 2.0;
  Index m_max = Index{1} << 13;
  Index n_max = 1024;
  std::size_t grid_size = 1024;
  Index N_max = Index{1} << 16;
  Index cap = Index{1} << 20;
  std::uint64_t seed = 42;
  Index trials = 200;
  double slope_bounded = 0.2;
  double slope_growing = 0.6;
  double remainder_tol = 0.5;
  std::filesystem::path output_path;
  Format format = Format::Csv;
  bool strict = false;
};

[[nodiscard]] std::string_view to_string(Command c);

/// Parses the arguments after the program name. Precedence is flags, then the
/// key=value file (from `file` or --config), then defaults. Throws UsageError.
[[nodiscard]] RunConfig parse_config(const std::vector<std::string>& args,
                                     const std::optional<std::filesystem::path>& file = std::nullopt);

/// Runs the command, writes the report and prints one summary line to `out`.
/// Returns an ExitCode value.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with error-to-exit-status mapping, as used by main().
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmlab::cli
