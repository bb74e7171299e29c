#pragma once

// Monte Carlo error study of the Bayes-factor approximations.
//
// For every total sample size N in [n_min, n_max] and each iteration:
//   1. d ~ U[0, 1)
//   2. sample 1: ceil(N/2) draws from Normal(0, 1)
//   3. sample 2: floor(N/2) draws from Normal(d, 1)
//   4. pooled t-test -> (t, nu = N - 2)
//   5. PBF_10 with the exact gamma quotient (reference), PBF_10 with the
//      Wendel, Stirling and Frame quotients, and the BIC BF_10 (n = N)
//   6. percent error of each approximation against the reference
// The per-(N, method) mean of those errors is one ErrorRow.
//
// Iteration i of cell N draws only from substream(seed, N, i), and each
// cell's mean is a pairwise sum over iterations in index order, so results
// are bit-identical for any thread count.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pbf/stats.hpp"

namespace pbf {

enum class ErrorMethod { Bic, Frame, Stirling, Wendel };

/// All methods in output order (alphabetical by name).
inline constexpr std::array<ErrorMethod, 4> kAllErrorMethods = {
    ErrorMethod::Bic, ErrorMethod::Frame, ErrorMethod::Stirling, ErrorMethod::Wendel};

std::string_view to_string(ErrorMethod method);
std::optional<ErrorMethod> parse_error_method(std::string_view name);

struct SimConfig {
  int n_min = 4;
  int n_max = 100;
  int iterations = 1000;
  std::uint64_t seed = 0;
  std::vector<ErrorMethod> methods{kAllErrorMethods.begin(), kAllErrorMethods.end()};
  /// Worker threads; 0 picks the hardware concurrency. Never affects results.
  unsigned threads = 1;

  /// Throws DomainError on 4 <= n_min <= n_max violations, iterations < 1,
  /// or an empty method set.
  void validate() const;
};

struct ErrorRow {
  int n_total;
  ErrorMethod method;
  double mean_percent_error;
  int iterations_used;

  friend bool operator==(const ErrorRow&, const ErrorRow&) = default;
};

/// Per-method percent errors for one experiment (steps 5 and 6), indexed
/// like kAllErrorMethods.
using MethodErrors = std::array<double, 4>;
MethodErrors iteration_errors(const TestResult& result, int n_total);

struct CellErrors {
  MethodErrors mean_percent_error{};
  MethodErrors median_percent_error{};
  int iterations = 0;
  /// Experiments redrawn because both samples came out constant.
  int redraws = 0;

  double mean(ErrorMethod method) const;
};

/// Runs all iterations of cell N. Throws DomainError for N < 4 or iterations < 1.
CellErrors run_cell(int n_total, int iterations, std::uint64_t seed);

/// One row per (N, selected method), ordered by N then method name.
std::vector<ErrorRow> run_grid(const SimConfig& config);

/// Like run_grid, also reporting the total number of redraws.
struct GridResult {
  std::vector<ErrorRow> rows;
  long redraws = 0;
};
GridResult run_grid_detailed(const SimConfig& config);

/// Sum with pairwise (cascade) reduction in index order.
double pairwise_sum(std::span<const double> values);

/// CSV with header `n_total,method,mean_percent_error,iterations`, LF line
/// endings, 10 significant digits. Throws ArgumentError for empty rows.
void emit_csv(std::span<const ErrorRow> rows, std::ostream& out);
/// Throws IoError naming the path if it cannot be written.
void emit_csv(std::span<const ErrorRow> rows, const std::filesystem::path& path);

/// Parses the format written by emit_csv. Throws IoError on malformed input.
std::vector<ErrorRow> read_csv(std::istream& in);

}  // namespace pbf
