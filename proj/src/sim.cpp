#include "pbf/sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "pbf/bayes.hpp"
#include "pbf/error.hpp"

namespace pbf {
namespace {

constexpr std::string_view kCsvHeader = "n_total,method,mean_percent_error,iterations";

std::size_t index_of(ErrorMethod method) {
  return static_cast<std::size_t>(
      std::find(kAllErrorMethods.begin(), kAllErrorMethods.end(), method) -
      kAllErrorMethods.begin());
}

double median_of(std::vector<double> values) {
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

std::string format_significant(double value, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw IoError("malformed CSV field '" + std::string(field) + "' on line " +
                  std::to_string(line_no));
  }
  return value;
}

}  // namespace

std::string_view to_string(ErrorMethod method) {
  switch (method) {
    case ErrorMethod::Bic: return "bic";
    case ErrorMethod::Frame: return "frame";
    case ErrorMethod::Stirling: return "stirling";
    case ErrorMethod::Wendel: return "wendel";
  }
  return "unknown";
}

std::optional<ErrorMethod> parse_error_method(std::string_view name) {
  for (auto m : kAllErrorMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void SimConfig::validate() const {
  if (n_min < 4) throw DomainError("n_min must be >= 4, got " + std::to_string(n_min));
  if (n_max < n_min) {
    throw DomainError("n_max (" + std::to_string(n_max) + ") must be >= n_min (" +
                      std::to_string(n_min) + ")");
  }
  if (iterations < 1) throw DomainError("iterations must be >= 1");
  if (methods.empty()) throw DomainError("at least one method is required");
}

MethodErrors iteration_errors(const TestResult& result, int n_total) {
  const SummaryStats stats(result.t, result.nu, n_total);
  const PearsonTerms reference = pearson_terms(stats, QuotientMethod::Analytic);

  MethodErrors errors{};
  errors[index_of(ErrorMethod::Wendel)] =
      percent_error(pearson_terms(stats, QuotientMethod::Wendel), reference);
  errors[index_of(ErrorMethod::Stirling)] =
      percent_error(pearson_terms(stats, QuotientMethod::Stirling), reference);
  errors[index_of(ErrorMethod::Frame)] =
      percent_error(pearson_terms(stats, QuotientMethod::Frame), reference);
  errors[index_of(ErrorMethod::Bic)] = percent_error(flip(bic_bf01(stats)), reference.bf10());
  return errors;
}

double CellErrors::mean(ErrorMethod method) const {
  return mean_percent_error[index_of(method)];
}

CellErrors run_cell(int n_total, int iterations, std::uint64_t seed) {
  if (n_total < 4) throw DomainError("run_cell: N must be >= 4, got " + std::to_string(n_total));
  if (iterations < 1) throw DomainError("run_cell: iterations must be >= 1");

  const auto n1 = static_cast<std::size_t>((n_total + 1) / 2);
  const auto n2 = static_cast<std::size_t>(n_total / 2);

  std::array<std::vector<double>, 4> per_method;
  for (auto& v : per_method) v.reserve(static_cast<std::size_t>(iterations));

  CellErrors cell;
  cell.iterations = iterations;
  for (int i = 0; i < iterations; ++i) {
    RngStream rng = substream(seed, static_cast<std::uint32_t>(n_total),
                              static_cast<std::uint32_t>(i));
    for (;;) {
      const double d = draw_uniform(rng);
      const Sample first = draw_normal(rng, 0.0, 1.0, n1);
      const Sample second = draw_normal(rng, d, 1.0, n2);
      try {
        const MethodErrors errors = iteration_errors(two_sample_t(first, second), n_total);
        for (std::size_t m = 0; m < errors.size(); ++m) per_method[m].push_back(errors[m]);
        break;
      } catch (const DegenerateDataError&) {
        ++cell.redraws;
      }
    }
  }

  for (std::size_t m = 0; m < per_method.size(); ++m) {
    cell.mean_percent_error[m] = pairwise_sum(per_method[m]) / iterations;
    cell.median_percent_error[m] = median_of(per_method[m]);
  }
  return cell;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

GridResult run_grid_detailed(const SimConfig& config) {
  config.validate();
  const int cell_count = config.n_max - config.n_min + 1;
  std::vector<CellErrors> cells(static_cast<std::size_t>(cell_count));

  unsigned workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  workers = std::clamp(workers, 1u, static_cast<unsigned>(cell_count));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int k = next++; k < cell_count; k = next++) {
      try {
        cells[static_cast<std::size_t>(k)] =
            run_cell(config.n_min + k, config.iterations, config.seed);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ErrorMethod> selected = config.methods;
  std::sort(selected.begin(), selected.end(),
            [](ErrorMethod a, ErrorMethod b) { return to_string(a) < to_string(b); });
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

  GridResult result;
  result.rows.reserve(cells.size() * selected.size());
  for (int k = 0; k < cell_count; ++k) {
    const CellErrors& cell = cells[static_cast<std::size_t>(k)];
    result.redraws += cell.redraws;
    for (ErrorMethod m : selected) {
      result.rows.push_back({config.n_min + k, m, cell.mean(m), cell.iterations});
    }
  }
  return result;
}

std::vector<ErrorRow> run_grid(const SimConfig& config) { return run_grid_detailed(config).rows; }

void emit_csv(std::span<const ErrorRow> rows, std::ostream& out) {
  if (rows.empty()) throw ArgumentError("emit_csv: no rows to write");
  std::string text;
  text.append(kCsvHeader).push_back('\n');
  for (const ErrorRow& row : rows) {
    text += std::to_string(row.n_total);
    text += ',';
    text += to_string(row.method);
    text += ',';
    text += format_significant(row.mean_percent_error, 10);
    text += ',';
    text += std::to_string(row.iterations_used);
    text += '\n';
  }
  out << text;
}

void emit_csv(std::span<const ErrorRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw ArgumentError("emit_csv: no rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  emit_csv(rows, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<ErrorRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw IoError("CSV header must be '" + std::string(kCsvHeader) + "'");
  }
  std::vector<ErrorRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto comma = rest.find(',');
      if ((f + 1 < fields.size()) == (comma == std::string_view::npos)) {
        throw IoError("expected 4 fields on line " + std::to_string(line_no));
      }
      fields[f] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    const auto method = parse_error_method(fields[1]);
    if (!method) {
      throw IoError("unknown method '" + std::string(fields[1]) + "' on line " +
                    std::to_string(line_no));
    }
    rows.push_back({parse_field<int>(fields[0], line_no), *method,
                    parse_field<double>(fields[2], line_no), parse_field<int>(fields[3], line_no)});
  }
  return rows;
}

}  // namespace pbf
