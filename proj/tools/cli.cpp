#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "pbf/bayes.hpp"
#include "pbf/error.hpp"
#include "pbf/gamma.hpp"
#include "pbf/sim.hpp"

namespace pbf::cli {
namespace {

constexpr const char* kVersion = "pbf 1.0.0";

struct ComputeOptions {
  double t = 0.0;
  double df = 0.0;
  std::string method = "analytic";
  std::optional<double> alpha;
  std::optional<int> n;
  std::string direction = "10";
  int digits = 4;
};

struct SimulateOptions {
  int n_min = 4;
  int n_max = 100;
  int iters = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string methods = "wendel,stirling,frame,bic";
  unsigned threads = 1;
};

// A failure that maps to a specific exit code and a one-line message.
struct Failure {
  ExitCode code;
  std::string message;
};

// Locale-independent fixed-point text; scientific when fixed would be unreadable.
std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[512];
  const double magnitude = std::abs(value);
  const bool tiny = magnitude != 0.0 && magnitude < 0.5 * std::pow(10.0, -digits);
  const auto fmt = (magnitude >= 1e15 || tiny) ? std::chars_format::scientific
                                               : std::chars_format::fixed;
  const auto res = std::to_chars(buf, buf + sizeof buf, value, fmt, digits);
  return std::string(buf, res.ptr);
}

class Report {
 public:
  explicit Report(int digits) : digits_(digits) {}

  void text(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }
  void number(std::string key, double value) { text(std::move(key), format_number(value, digits_)); }

  void write(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [k, v] : lines_) width = std::max(width, k.size());
    for (const auto& [k, v] : lines_) {
      out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    }
  }

 private:
  int digits_;
  std::vector<std::pair<std::string, std::string>> lines_;
};

void add_bayes_lines(Report& report, const BayesFactor& bf10, Direction direction) {
  report.number("BF_10", bf10.value());
  report.number("BF_01", flip(bf10).value());
  const bool is10 = direction == Direction::H1overH0;
  report.number(is10 ? "log_BF_10" : "log_BF_01", bf10.in_direction(direction).log_value());
}

void write_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
}

void compute(const ComputeOptions& opt, std::ostream& out) {
  const bool all = opt.method == "all";
  const bool bic = opt.method == "bic";
  const auto quotient_method = parse_quotient_method(opt.method);
  if (!all && !bic && !quotient_method) {
    throw Failure{kInvalidMethod, "unknown method '" + opt.method +
                                      "' (expected analytic, wendel, stirling, frame, bic or all)"};
  }
  if (bic && !opt.n) throw Failure{kBicNeedsN, "method bic requires --n (total sample size)"};
  if (opt.alpha && quotient_method != QuotientMethod::Analytic) {
    throw Failure{kAlphaNeedsAnalytic, "--alpha is only valid with --method analytic"};
  }
  if (opt.digits < 0 || opt.digits > 17) {
    throw Failure{kUsage, "--digits must be between 0 and 17"};
  }
  const Direction direction = opt.direction == "01" ? Direction::H0overH1 : Direction::H1overH0;

  const SummaryStats stats(opt.t, opt.df, opt.n);
  const int digits = opt.digits;

  if (all) {
    const std::string log_header = direction == Direction::H1overH0 ? "log_BF_10" : "log_BF_01";
    std::vector<std::vector<std::string>> table = {
        {"method", "C_nu", "BF_10", "BF_01", log_header, "pct_error"}};
    const PearsonTerms reference = pearson_terms(stats, QuotientMethod::Analytic);
    for (auto m : {QuotientMethod::Analytic, QuotientMethod::Wendel, QuotientMethod::Stirling,
                   QuotientMethod::Frame}) {
      const PearsonTerms terms = pearson_terms(stats, m);
      const BayesFactor bf = terms.bf10();
      table.push_back({std::string(to_string(m)), format_number(quotient(stats.nu(), m), digits),
                       format_number(bf.value(), digits), format_number(flip(bf).value(), digits),
                       format_number(bf.in_direction(direction).log_value(), digits),
                       format_number(percent_error(terms, reference), digits)});
    }
    if (stats.n_total()) {
      const BayesFactor bf = flip(bic_bf01(stats));
      table.push_back({"bic", "-", format_number(bf.value(), digits),
                       format_number(flip(bf).value(), digits),
                       format_number(bf.in_direction(direction).log_value(), digits),
                       format_number(percent_error(bf, reference.bf10()), digits)});
    }
    out << "t = " << format_number(stats.t(), digits) << ", df = "
        << format_number(stats.nu(), digits) << ", tail = "
        << format_number(tail_factor(stats), digits) << '\n';
    write_table(out, table);
    return;
  }

  Report report(digits);
  report.text("method", opt.method);
  report.number("t", stats.t());
  report.number("df", stats.nu());
  if (bic) {
    report.text("n", std::to_string(*opt.n));
    add_bayes_lines(report, flip(bic_bf01(stats)), direction);
  } else if (opt.alpha) {
    const Alpha alpha(*opt.alpha);
    report.number("alpha", alpha.value());
    report.number("C_nu", analytic_c(stats.nu()));
    report.number("prior_ratio", std::exp(ln_gamma_half_step(alpha.value() + 1.0)));
    const double exponent = 0.5 * (stats.nu() - 2.0 * alpha.value() - 2.0);
    report.number("power_term", std::exp(exponent * log1p_t2_over_nu(stats.t(), stats.nu())));
    add_bayes_lines(report, pbf10_general(stats, alpha), direction);
  } else {
    report.number("C_nu", quotient(stats.nu(), *quotient_method));
    report.number("tail", tail_factor(stats));
    add_bayes_lines(report, pbf10(stats, *quotient_method), direction);
  }
  report.write(out);
}

std::vector<ErrorMethod> parse_methods(const std::string& list) {
  std::vector<ErrorMethod> methods;
  std::stringstream ss(list);
  for (std::string name; std::getline(ss, name, ',');) {
    const auto m = parse_error_method(name);
    if (!m) {
      throw Failure{kInvalidMethod,
                    "unknown method '" + name + "' (expected wendel, stirling, frame or bic)"};
    }
    methods.push_back(*m);
  }
  if (methods.empty()) throw Failure{kInvalidMethod, "--methods must name at least one method"};
  return methods;
}

std::string first_below(const std::vector<ErrorRow>& rows, ErrorMethod method, double threshold) {
  for (const ErrorRow& row : rows) {
    if (row.method == method && row.mean_percent_error < threshold) {
      return std::to_string(row.n_total);
    }
  }
  return "none";
}

void simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  SimConfig config;
  config.n_min = opt.n_min;
  config.n_max = opt.n_max;
  config.iterations = opt.iters;
  config.seed = opt.seed;
  config.methods = parse_methods(opt.methods);
  config.threads = opt.threads;
  config.validate();

  const bool to_stdout = opt.out == "-";
  std::ofstream file;
  if (!to_stdout) {
    file.open(opt.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + opt.out + "' for writing");
  }

  const GridResult grid = run_grid_detailed(config);
  if (to_stdout) {
    emit_csv(grid.rows, out);
  } else {
    emit_csv(grid.rows, file);
    file.close();
    if (!file) throw IoError("failed writing '" + opt.out + "'");
  }

  std::ostream& summary = to_stdout ? err : out;
  summary << "wrote " << grid.rows.size() << " rows to " << (to_stdout ? "stdout" : opt.out)
          << " (N " << config.n_min << ".." << config.n_max << ", " << config.iterations
          << " iterations, seed " << config.seed << ")\n";
  std::vector<std::vector<std::string>> table = {
      {"method", "first_N_below_1pct", "first_N_below_0.01pct"}};
  for (ErrorMethod m : kAllErrorMethods) {
    if (std::find(config.methods.begin(), config.methods.end(), m) == config.methods.end()) {
      continue;
    }
    table.push_back({std::string(to_string(m)), first_below(grid.rows, m, 1.0),
                     first_below(grid.rows, m, 0.01)});
  }
  write_table(summary, table);
  if (grid.redraws > 0) {
    err << "note: " << grid.redraws << " degenerate experiments were redrawn\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pearson Bayes factors for two-sample t-tests from summary statistics", "pbf"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ComputeOptions copt;
  auto* compute_cmd = app.add_subcommand("compute", "Bayes factor from t and degrees of freedom");
  compute_cmd->add_option("--t", copt.t, "observed t statistic")->required();
  compute_cmd->add_option("--df", copt.df, "degrees of freedom")->required();
  compute_cmd->add_option("--method", copt.method,
                          "analytic, wendel, stirling, frame, bic or all")
      ->capture_default_str();
  compute_cmd->add_option("--alpha", copt.alpha, "Pearson prior scale (analytic only)");
  compute_cmd->add_option("--n", copt.n, "total sample size (needed for bic)");
  compute_cmd->add_option("--direction", copt.direction, "10 (evidence for H1) or 01")
      ->check(CLI::IsMember({"10", "01"}))
      ->capture_default_str();
  compute_cmd->add_option("--digits", copt.digits, "decimal places")->capture_default_str();

  SimulateOptions sopt;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo error study, written as CSV");
  simulate_cmd->add_option("--n-min", sopt.n_min, "smallest total N")->capture_default_str();
  simulate_cmd->add_option("--n-max", sopt.n_max, "largest total N")->capture_default_str();
  simulate_cmd->add_option("--iters", sopt.iters, "iterations per N")->capture_default_str();
  simulate_cmd->add_option("--seed", sopt.seed, "master seed")->required();
  simulate_cmd->add_option("--out", sopt.out, "CSV output path, - for stdout")->required();
  simulate_cmd->add_option("--methods", sopt.methods, "comma-separated methods")
      ->capture_default_str();
  simulate_cmd->add_option("--threads", sopt.threads, "worker threads, 0 = all cores")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (compute_cmd->parsed()) {
      compute(copt, out);
    } else {
      simulate(sopt, out, err);
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace pbf::cli
