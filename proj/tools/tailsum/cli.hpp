#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace tailsum::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 2,
  kParseError = 3,
  kInvalidParameters = 4,
  kRuntimeError = 5,
};

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

enum class Format { Json, Csv };

/// Embedded in every output so the run can be repeated from it alone.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> command_line;
  std::string version;
  std::string timestamp;

  nlohmann::ordered_json to_json() const;
};

/// Library version string baked in at build time.
std::string version();

/// UTC ISO-8601; SOURCE_DATE_EPOCH overrides the clock when set.
std::string timestamp_now();

/// One observation per line; commas, semicolons and whitespace separate
/// tokens; a non-numeric first line is a header. Throws CliError(kParseError).
std::vector<double> parse_observations(std::istream& in);

/// Throws CliError(kIoError) when the file cannot be read.
std::vector<double> read_observations(const std::string& path);

struct EstimateOptions {
  std::string input;
  std::size_t k = 0;
  std::size_t l = 0;
  int pmax = 4;
  std::string domain = "frechet";
  double gamma = 1.0;
  Format format = Format::Json;
};

struct TablesOptions {
  std::string family = "beta";
  int tau = 0;
  int vmax = 10;
  int dmax = 0;  // 0: family default (10 for beta, tau for mu0, 5 for mu1)
  Format format = Format::Csv;
};

struct CovarianceOptions {
  std::string domain = "frechet";
  double gamma = 1.0;
  int pmax = 4;
  bool reduced = false;
  Format format = Format::Json;
};

struct McOptions {
  std::string dist = "pareto";
  double gamma = 1.0;
  double x0 = 2.0;
  std::size_t n = 100000;
  std::size_t k = 1000;
  std::size_t l = 0;
  int pmax = 2;
  std::size_t reps = 2000;
  std::optional<std::uint64_t> seed;
  std::string centering = "random";
  unsigned threads = 1;
  Format format = Format::Json;
};

struct OracleOptions {
  int r = 1;
  int rho = 1;
  int grid = 1024;
  double truncation = 60.0;
  bool adjudicate = false;
  int pmax = 6;
  Format format = Format::Json;
};

// Each command writes its report to `out` and diagnostics to `err`. They
// throw CliError (or a library exception, mapped by run()) on failure.
void cmd_estimate(const EstimateOptions& options, std::ostream& out, std::ostream& err);
void cmd_tables(const TablesOptions& options, std::ostream& out, std::ostream& err);
void cmd_covariance(const CovarianceOptions& options, std::ostream& out, std::ostream& err);
void cmd_mc(const McOptions& options, std::ostream& out, std::ostream& err);
void cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches, maps failures to the stable exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tailsum::cli
