#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "tailsum/combinatorics.hpp"
#include "tailsum/domains.hpp"
#include "tailsum/errors.hpp"
#include "tailsum/limit_process.hpp"
#include "tailsum/montecarlo.hpp"
#include "tailsum/tail_estimators.hpp"

#ifndef TAILSUM_VERSION
#define TAILSUM_VERSION "0.0.0"
#endif

namespace tailsum::cli {

using json = nlohmann::ordered_json;

namespace {

std::string fmt17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

json exact_to_json(exact_int value) {
  if (value <= static_cast<exact_int>(INT64_MAX) && value >= static_cast<exact_int>(INT64_MIN)) {
    return static_cast<std::int64_t>(value);
  }
  return to_string(value);
}

std::string format_name(Format format) { return format == Format::Json ? "json" : "csv"; }

void write_json(std::ostream& out, const json& document) { out << document.dump(2) << '\n'; }

void write_csv_manifest(std::ostream& out, const RunManifest& manifest) {
  out << "# manifest: " << manifest.to_json().dump() << '\n';
}

// Shell-style argument vector reproducing the run from its parameters.
std::vector<std::string> command_line_for(const std::string& command, const json& parameters,
                                          const std::vector<std::string>& positional = {}) {
  std::vector<std::string> argv{"tailsum", command};
  for (const auto& key : positional) {
    const json& v = parameters.at(key);
    argv.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  for (const auto& [key, value] : parameters.items()) {
    if (std::find(positional.begin(), positional.end(), key) != positional.end()) continue;
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) argv.push_back("--" + key);
      continue;
    }
    argv.push_back("--" + key);
    argv.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return argv;
}

RunManifest make_manifest(const std::string& command, json parameters, std::optional<std::uint64_t> seed,
                          const std::vector<std::string>& positional = {}) {
  RunManifest manifest;
  manifest.command = command;
  manifest.command_line = command_line_for(command, parameters, positional);
  manifest.parameters = std::move(parameters);
  manifest.seed = seed;
  manifest.version = version();
  manifest.timestamp = timestamp_now();
  return manifest;
}

Domain parse_domain(const std::string& name, double gamma) {
  if (name == "frechet") return Domain::frechet(gamma);
  if (name == "weibull") return Domain::weibull(gamma);
  if (name == "gumbel") return Domain::gumbel();
  throw CliError(kInvalidParameters, "unknown domain '" + name + "' (expected frechet, weibull or gumbel)");
}

TestDistribution parse_distribution(const McOptions& options) {
  if (options.dist == "pareto") return TestDistribution::pareto(options.gamma);
  if (options.dist == "power") return TestDistribution::power_endpoint(options.gamma, options.x0);
  if (options.dist == "stretched") return TestDistribution::stretched_tail();
  throw CliError(kInvalidParameters, "unknown distribution '" + options.dist + "' (expected pareto, power or stretched)");
}

Centering parse_centering(const std::string& name) {
  if (name == "random") return Centering::RandomThreshold;
  if (name == "fixed") return Centering::FixedThreshold;
  throw CliError(kInvalidParameters, "unknown centering '" + name + "' (expected random or fixed)");
}

bool parse_double(std::string_view token, double& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == ';' || c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

json RunManifest::to_json() const {
  json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["command_line"] = command_line;
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j;
}

std::string version() { return TAILSUM_VERSION; }

std::string timestamp_now() {
  std::time_t seconds;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    seconds = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    seconds = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::vector<double> parse_observations(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    std::vector<double> row;
    bool numeric = true;
    for (auto token : tokens) {
      double value = 0.0;
      if (!parse_double(token, value)) {
        numeric = false;
        break;
      }
      row.push_back(value);
    }
    if (!numeric) {
      if (values.empty() && line_number == 1) continue;  // header
      throw CliError(kParseError, "line " + std::to_string(line_number) + ": malformed numeric row '" + line + "'");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return values;
}

std::vector<double> read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kIoError, "cannot read input file '" + path + "'");
  return parse_observations(in);
}

void cmd_estimate(const EstimateOptions& options, std::ostream& out, std::ostream& err) {
  if (options.pmax < 1) throw CliError(kInvalidParameters, "--pmax must be >= 1");
  const Domain domain = parse_domain(options.domain, options.gamma);
  const std::vector<double> raw = read_observations(options.input);
  if (raw.size() < 2) throw CliError(kParseError, "input holds fewer than 2 observations");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0) || !std::isfinite(raw[i])) {
      throw CliError(kParseError, "observation " + std::to_string(i + 1) + " is not a finite positive number");
    }
  }
  const SortedSample sample = log_transform(raw);
  const TailWindow window = TailWindow::make(sample.size(), options.k, options.l);
  if (sample.below_support_warning()) err << "warning: observations below 1 give negative log values\n";
  const bool degenerate = window_degenerate(sample, window);
  if (degenerate) err << "warning: every spacing in the window is zero\n";

  const std::vector<double> ladder = t_ladder(sample, window, options.pmax);

  json parameters;
  parameters["input"] = options.input;
  parameters["k"] = options.k;
  parameters["l"] = options.l;
  parameters["pmax"] = options.pmax;
  parameters["domain"] = options.domain;
  parameters["gamma"] = options.gamma;
  parameters["format"] = format_name(options.format);
  const RunManifest manifest = make_manifest("estimate", parameters, std::nullopt);

  json results = json::array();
  for (int p = 1; p <= options.pmax; ++p) {
    const double t = ladder[static_cast<std::size_t>(p - 1)];
    json row;
    row["p"] = p;
    row["t"] = t;
    row["gamma_hat"] = t > 0.0 ? json(gamma_hat_from(t, p)) : json(nullptr);
    const double kd = static_cast<double>(window.k);
    const double nd = static_cast<double>(window.n);
    row["lil_envelope"] = (kd >= 3.0 && std::log(std::log(nd)) > 0.0) ? json(lil_envelope(p, domain, kd, nd)) : json(nullptr);
    results.push_back(row);
  }

  if (options.format == Format::Csv) {
    write_csv_manifest(out, manifest);
    out << "p,t,gamma_hat,lil_envelope\n";
    for (const auto& row : results) {
      out << row["p"].get<int>() << ',' << fmt17(row["t"].get<double>()) << ','
          << (row["gamma_hat"].is_null() ? std::string() : fmt17(row["gamma_hat"].get<double>())) << ','
          << (row["lil_envelope"].is_null() ? std::string() : fmt17(row["lil_envelope"].get<double>())) << '\n';
    }
    return;
  }
  json doc;
  doc["manifest"] = manifest.to_json();
  doc["n"] = window.n;
  doc["k"] = window.k;
  doc["l"] = window.l;
  doc["below_support_warning"] = sample.below_support_warning();
  doc["degenerate_window"] = degenerate;
  doc["results"] = results;
  write_json(out, doc);
}

void cmd_tables(const TablesOptions& options, std::ostream& out, std::ostream&) {
  Family family;
  const char* column_label = "delta";
  int dmax = options.dmax;
  if (options.family == "beta") {
    family = Family::TypeI;
    column_label = "r";
    if (dmax == 0) dmax = 10;
  } else if (options.family == "mu0") {
    family = Family::TypeII;
    if (dmax == 0) dmax = options.tau;
  } else if (options.family == "mu1") {
    family = Family::TypeIII;
    if (dmax == 0) dmax = 5;
  } else {
    throw CliError(kInvalidParameters, "unknown family '" + options.family + "' (expected beta, mu0 or mu1)");
  }
  if (family != Family::TypeI && options.tau < 1) throw CliError(kInvalidParameters, "--tau >= 1 is required for mu0/mu1");

  const NumberTable table = NumberTable::generate(family, options.vmax, dmax, options.tau);

  json parameters;
  parameters["family"] = options.family;
  parameters["tau"] = family == Family::TypeI ? json(nullptr) : json(options.tau);
  parameters["vmax"] = options.vmax;
  parameters["dmax"] = dmax;
  parameters["format"] = format_name(options.format);
  const RunManifest manifest = make_manifest("tables", parameters, std::nullopt);

  if (options.format == Format::Csv) {
    write_csv_manifest(out, manifest);
    out << "v\\" << column_label;
    for (int c = 1; c <= dmax; ++c) out << ',' << c;
    out << '\n';
    for (int v = 0; v <= options.vmax; ++v) {
      out << v;
      for (int c = 1; c <= dmax; ++c) out << ',' << to_string(table.at(v, c));
      out << '\n';
    }
    return;
  }
  json rows = json::array();
  for (int v = 0; v <= options.vmax; ++v) {
    json row = json::array();
    for (int c = 1; c <= dmax; ++c) row.push_back(exact_to_json(table.at(v, c)));
    rows.push_back(row);
  }
  json doc;
  doc["manifest"] = manifest.to_json();
  doc["family"] = options.family;
  doc["column"] = column_label;
  doc["rows"] = rows;
  write_json(out, doc);
}

void cmd_covariance(const CovarianceOptions& options, std::ostream& out, std::ostream&) {
  if (options.pmax < 1 || options.pmax > 8) throw CliError(kInvalidParameters, "--pmax must lie in [1, 8]");
  const Domain domain = parse_domain(options.domain, options.gamma);
  const CovarianceModel model = CovarianceModel::build(domain, options.pmax);
  const auto matrix = options.reduced ? model.reduced() : model.sigma;

  json parameters;
  parameters["domain"] = options.domain;
  parameters["gamma"] = domain.kind == Domain::Kind::Gumbel ? json(nullptr) : json(options.gamma);
  parameters["pmax"] = options.pmax;
  parameters["reduced"] = options.reduced;
  parameters["format"] = format_name(options.format);
  const RunManifest manifest = make_manifest("covariance", parameters, std::nullopt);

  if (options.format == Format::Csv) {
    write_csv_manifest(out, manifest);
    out << "r\\rho";
    for (int c = 1; c <= options.pmax; ++c) out << ',' << c;
    out << '\n';
    for (int r = 1; r <= options.pmax; ++r) {
      out << r;
      for (int c = 1; c <= options.pmax; ++c) out << ',' << fmt17(matrix[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)]);
      out << '\n';
    }
    return;
  }
  json c1_values = json::array();
  for (int r = 1; r <= options.pmax; ++r) c1_values.push_back(c1(r, domain));
  json doc;
  doc["manifest"] = manifest.to_json();
  doc["domain"] = domain.name();
  doc["reduced"] = options.reduced;
  doc["c1"] = c1_values;
  doc["e"] = model.e;
  doc["matrix"] = matrix;
  write_json(out, doc);
}

void cmd_mc(const McOptions& options, std::ostream& out, std::ostream& err) {
  if (!options.seed) throw CliError(kInvalidParameters, "--seed is required for mc");
  ExperimentConfig config;
  config.dist = parse_distribution(options);
  config.n = options.n;
  config.k = options.k;
  config.l = options.l;
  config.pmax = options.pmax;
  config.reps = options.reps;
  config.seed = *options.seed;
  config.centering = parse_centering(options.centering);
  config.validate();

  const ExperimentReport report = run_experiment(config, options.threads);

  json parameters;
  parameters["dist"] = options.dist;
  parameters["gamma"] = config.dist.kind() == TestDistribution::Kind::StretchedTail ? json(nullptr) : json(options.gamma);
  parameters["x0"] = config.dist.kind() == TestDistribution::Kind::PowerEndpoint ? json(options.x0) : json(nullptr);
  parameters["n"] = options.n;
  parameters["k"] = options.k;
  parameters["l"] = options.l;
  parameters["pmax"] = options.pmax;
  parameters["reps"] = options.reps;
  parameters["seed"] = *options.seed;
  parameters["centering"] = options.centering;
  parameters["format"] = format_name(options.format);
  const RunManifest manifest = make_manifest("mc", parameters, options.seed);

  for (const auto& c : report.comparisons) {
    err << (c.pass ? "PASS " : "FAIL ") << c.quantity << '(' << c.r;
    if (c.quantity == "covariance") err << ',' << c.rho;
    err << ") empirical=" << fmt17(c.empirical) << " se=" << fmt17(c.standard_error)
        << " predicted=" << fmt17(c.predicted) << " tol=" << c.tolerance << (c.relative ? " (relative)" : " (absolute)")
        << '\n';
  }

  if (options.format == Format::Csv) {
    write_csv_manifest(out, manifest);
    out << "quantity,r,rho,empirical,standard_error,predicted,tolerance,relative,pass\n";
    for (const auto& c : report.comparisons) {
      out << c.quantity << ',' << c.r << ',' << c.rho << ',' << fmt17(c.empirical) << ',' << fmt17(c.standard_error)
          << ',' << fmt17(c.predicted) << ',' << fmt17(c.tolerance) << ',' << (c.relative ? 1 : 0) << ','
          << (c.pass ? 1 : 0) << '\n';
    }
    return;
  }
  json comparisons = json::array();
  for (const auto& c : report.comparisons) {
    comparisons.push_back({{"quantity", c.quantity},
                           {"r", c.r},
                           {"rho", c.rho},
                           {"empirical", c.empirical},
                           {"standard_error", c.standard_error},
                           {"predicted", c.predicted},
                           {"tolerance", c.tolerance},
                           {"relative", c.relative},
                           {"pass", c.pass}});
  }
  json doc;
  doc["manifest"] = manifest.to_json();
  doc["domain"] = config.dist.domain().name();
  doc["mean"] = report.mean;
  doc["mean_se"] = report.mean_se;
  doc["covariance"] = report.covariance;
  doc["covariance_se"] = report.covariance_se;
  doc["predicted"] = report.predicted;
  doc["comparisons"] = comparisons;
  doc["all_pass"] = report.all_pass();
  write_json(out, doc);
}

void cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream&) {
  QuadratureOracleConfig config{options.grid, options.truncation};
  config.validate();

  json parameters;
  if (!options.adjudicate) {
    parameters["r"] = options.r;
    parameters["rho"] = options.rho;
  }
  parameters["grid"] = options.grid;
  parameters["truncation"] = options.truncation;
  parameters["adjudicate"] = options.adjudicate;
  if (options.adjudicate) parameters["pmax"] = options.pmax;
  parameters["format"] = format_name(options.format);
  const std::vector<std::string> positional =
      options.adjudicate ? std::vector<std::string>{} : std::vector<std::string>{"r", "rho"};
  const RunManifest manifest = make_manifest("oracle", parameters, std::nullopt, positional);

  if (options.adjudicate) {
    const auto rows = adjudicate_covariance(options.pmax, config);
    if (options.format == Format::Csv) {
      write_csv_manifest(out, manifest);
      out << "r,rho,recursion,closed_form,quadrature,published,verdict\n";
      for (const auto& row : rows) {
        out << row.r << ',' << row.rho << ',' << to_string(row.recursion) << ',' << to_string(row.closed_form) << ','
            << fmt17(row.quadrature) << ',' << (row.published ? std::to_string(*row.published) : std::string()) << ','
            << row.verdict << '\n';
      }
      return;
    }
    json table = json::array();
    for (const auto& row : rows) {
      table.push_back({{"r", row.r},
                       {"rho", row.rho},
                       {"recursion", exact_to_json(row.recursion)},
                       {"closed_form", exact_to_json(row.closed_form)},
                       {"quadrature", row.quadrature},
                       {"published", row.published ? json(*row.published) : json(nullptr)},
                       {"verdict", row.verdict}});
    }
    json doc;
    doc["manifest"] = manifest.to_json();
    doc["rows"] = table;
    write_json(out, doc);
    return;
  }

  const OracleResult result = quadrature_oracle_checked(options.r, options.rho, config);
  const exact_int closed = a_cov_closed(options.r, options.rho);
  const exact_int recursion = a_cov_recursion(options.r, options.rho);
  if (options.format == Format::Csv) {
    write_csv_manifest(out, manifest);
    out << "r,rho,value,refined,convergence,closed_form,recursion\n";
    out << options.r << ',' << options.rho << ',' << fmt17(result.value) << ',' << fmt17(result.refined) << ','
        << fmt17(result.convergence) << ',' << to_string(closed) << ',' << to_string(recursion) << '\n';
    return;
  }
  json doc;
  doc["manifest"] = manifest.to_json();
  doc["r"] = options.r;
  doc["rho"] = options.rho;
  doc["value"] = result.value;
  doc["refined"] = result.refined;
  doc["convergence"] = result.convergence;
  doc["closed_form"] = exact_to_json(closed);
  doc["recursion"] = exact_to_json(recursion);
  write_json(out, doc);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sum-product tail-index statistics, number tables and limit-process checks", "tailsum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  std::string output;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "T_n(1..pmax), index estimates and LIL envelopes for a data file");
  estimate->add_option("--input", est.input, "One positive observation per line")->required();
  estimate->add_option("--k", est.k, "Number of upper order statistics")->required();
  estimate->add_option("--l", est.l, "Number of top order statistics to skip");
  estimate->add_option("--pmax", est.pmax, "Highest order p");
  estimate->add_option("--domain", est.domain, "Domain for the LIL envelope: frechet, weibull, gumbel");
  estimate->add_option("--gamma", est.gamma, "Domain parameter gamma");
  estimate->add_option("--format", est.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  estimate->add_option("--output", output, "Write the report here instead of stdout");

  TablesOptions tab;
  auto* tables = app.add_subcommand("tables", "Type I/II/III number tables (CSV by default)");
  tables->add_option("--family", tab.family, "beta, mu0 or mu1")->required();
  tables->add_option("--tau", tab.tau, "Class index tau (mu0, mu1)");
  tables->add_option("--vmax", tab.vmax, "Last row v");
  tables->add_option("--dmax", tab.dmax, "Last column r or delta");
  tables->add_option("--format", tab.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  tables->add_option("--output", output);

  CovarianceOptions cov;
  auto* covariance = app.add_subcommand("covariance", "Limit-process covariance matrix");
  covariance->add_option("--domain", cov.domain, "frechet, weibull or gumbel");
  covariance->add_option("--gamma", cov.gamma);
  covariance->add_option("--pmax", cov.pmax);
  covariance->add_flag("--reduced", cov.reduced, "Covariance of the reduced process");
  covariance->add_option("--format", cov.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  covariance->add_option("--output", output);

  McOptions mco;
  std::uint64_t seed_value = 0;
  auto* mc = app.add_subcommand("mc", "Monte Carlo check of the limit theorems");
  mc->add_option("--dist", mco.dist, "pareto, power or stretched");
  mc->add_option("--gamma", mco.gamma);
  mc->add_option("--x0", mco.x0, "Upper endpoint of the power distribution");
  mc->add_option("--n", mco.n);
  mc->add_option("--k", mco.k);
  mc->add_option("--l", mco.l);
  mc->add_option("--pmax", mco.pmax);
  mc->add_option("--reps", mco.reps);
  auto* seed_opt = mc->add_option("--seed", seed_value)->required();
  mc->add_option("--centering", mco.centering, "random (tau_p at Y_{n-k,n}) or fixed (tau_p at x_n)");
  mc->add_option("--threads", mco.threads, "Worker threads; does not change results");
  mc->add_option("--format", mco.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  mc->add_option("--output", output);

  OracleOptions ora;
  auto* oracle = app.add_subcommand("oracle", "Quadrature oracle for a(r, rho)");
  oracle->add_option("r", ora.r);
  oracle->add_option("rho", ora.rho);
  oracle->add_option("--grid", ora.grid);
  oracle->add_option("--truncation", ora.truncation);
  oracle->add_flag("--adjudicate", ora.adjudicate, "Compare recursion, closed form, quadrature and the published table");
  oracle->add_option("--pmax", ora.pmax, "Largest order for --adjudicate");
  oracle->add_option("--format", ora.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  oracle->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  }
  if (seed_opt->count() > 0) mco.seed = seed_value;

  try {
    std::ostringstream buffer;
    if (estimate->parsed()) {
      cmd_estimate(est, buffer, err);
    } else if (tables->parsed()) {
      cmd_tables(tab, buffer, err);
    } else if (covariance->parsed()) {
      cmd_covariance(cov, buffer, err);
    } else if (mc->parsed()) {
      cmd_mc(mco, buffer, err);
    } else if (oracle->parsed()) {
      cmd_oracle(ora, buffer, err);
    }
    if (output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw CliError(kIoError, "cannot write output file '" + output + "'");
      file << buffer.str();
      if (!file) throw CliError(kIoError, "failed writing output file '" + output + "'");
    }
    return kOk;
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const undefined_estimate& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace tailsum::cli
