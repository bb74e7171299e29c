#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracle_values.hpp"
#include "pbf/bayes.hpp"
#include "pbf/error.hpp"
#include "pbf/gamma.hpp"
#include "pbf/sim.hpp"

using namespace pbf;

namespace {

std::size_t slot(ErrorMethod m) {
  for (std::size_t i = 0; i < kAllErrorMethods.size(); ++i) {
    if (kAllErrorMethods[i] == m) return i;
  }
  return kAllErrorMethods.size();
}

double closed_form(int n_total, QuotientMethod m) {
  const double nu = n_total - 2;
  return 100.0 * std::abs(std::expm1(log_quotient(nu, m) - log_quotient(nu, QuotientMethod::Analytic)));
}

std::vector<ErrorRow> synthetic_rows() {
  std::vector<ErrorRow> rows;
  for (int n = 4; n <= 100; ++n) {
    for (auto m : kAllErrorMethods) {
      rows.push_back({n, m, 1.0 / (n * (1 + static_cast<int>(slot(m)))) * std::pow(10.0, 3 - n / 10), 1000});
    }
  }
  return rows;
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : kAllErrorMethods) CHECK(parse_error_method(to_string(m)) == m);
  CHECK_FALSE(parse_error_method("analytic"));
  CHECK_FALSE(parse_error_method("Wendel"));
}

TEST_CASE("SimConfig validation") {
  SimConfig config;
  CHECK_NOTHROW(config.validate());
  config.n_min = 3;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config.n_min = 20;
  config.n_max = 19;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config.n_max = 20;
  config.iterations = 0;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config.iterations = 1;
  config.methods.clear();
  CHECK_THROWS_AS(config.validate(), DomainError);
}

TEST_CASE("iteration errors for the worked example bypass the RNG") {
  const MethodErrors errors = iteration_errors(TestResult{2.0, 71.0}, 73);
  CHECK(std::abs(errors[slot(ErrorMethod::Wendel)] - 0.36) <= 0.01);
  CHECK(std::abs(errors[slot(ErrorMethod::Bic)] - 33.7) <= 0.05);
  CHECK(errors[slot(ErrorMethod::Bic)] == doctest::Approx(oracle::worked::kBicPctError).epsilon(1e-11));
  CHECK(errors[slot(ErrorMethod::Frame)] < errors[slot(ErrorMethod::Stirling)]);
}

TEST_CASE("run_cell: gamma-method errors do not depend on the draws") {
  for (int n : {4, 5, 17, 24, 73, 100}) {
    const CellErrors cell = run_cell(n, 50, 8);
    INFO("N = " << n);
    CHECK(cell.iterations == 50);
    CHECK(cell.redraws == 0);
    const std::pair<ErrorMethod, QuotientMethod> pairs[] = {
        {ErrorMethod::Wendel, QuotientMethod::Wendel},
        {ErrorMethod::Stirling, QuotientMethod::Stirling},
        {ErrorMethod::Frame, QuotientMethod::Frame}};
    for (auto [em, qm] : pairs) {
      const double expected = closed_form(n, qm);
      CHECK(std::abs(cell.mean(em) - expected) <= 1e-9 * expected);
      CHECK(cell.median_percent_error[slot(em)] == expected);
    }
    CHECK(cell.mean(ErrorMethod::Bic) > 0.0);
  }
}

TEST_CASE("run_cell: Wendel error around N = 24 matches the exact quotient") {
  // mpmath: 1.1295% at N = 24; first N below 1% is 27.
  CHECK(run_cell(24, 10, 1).mean(ErrorMethod::Wendel) ==
        doctest::Approx(oracle::kQuotients[21].wendel_pct).epsilon(1e-9));
  CHECK(run_cell(26, 10, 1).mean(ErrorMethod::Wendel) > 1.0);
  CHECK(run_cell(27, 10, 1).mean(ErrorMethod::Wendel) < 1.0);
}

TEST_CASE("run_cell rejects bad arguments") {
  CHECK_THROWS_AS(run_cell(3, 10, 1), DomainError);
  CHECK_THROWS_AS(run_cell(10, 0, 1), DomainError);
}

TEST_CASE("pairwise_sum") {
  std::vector<double> ones(1000, 1.0);
  CHECK(pairwise_sum(ones) == 1000.0);
  CHECK(pairwise_sum({}) == 0.0);
  std::vector<double> tenths(100000, 0.1);
  CHECK(std::abs(pairwise_sum(tenths) - 10000.0) < 1e-9);
}

TEST_CASE("run_grid shape and order") {
  SimConfig config;
  config.n_min = 10;
  config.n_max = 12;
  config.iterations = 3;
  config.seed = 1;
  const auto rows = run_grid(config);
  REQUIRE(rows.size() == 12);
  const char* expected_order[] = {"bic", "frame", "stirling", "wendel"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n_total == 10 + static_cast<int>(i / 4));
    CHECK(to_string(rows[i].method) == expected_order[i % 4]);
    CHECK(rows[i].iterations_used == 3);
    CHECK(rows[i].mean_percent_error >= 0.0);
  }

  config.methods = {ErrorMethod::Wendel, ErrorMethod::Bic, ErrorMethod::Wendel};
  const auto subset = run_grid(config);
  REQUIRE(subset.size() == 6);
  CHECK(subset[0].method == ErrorMethod::Bic);
  CHECK(subset[1].method == ErrorMethod::Wendel);
}

TEST_CASE("run_grid is bit-identical across thread counts") {
  SimConfig config;
  config.n_min = 4;
  config.n_max = 40;
  config.iterations = 40;
  config.seed = 77;
  config.threads = 1;
  const auto serial = run_grid(config);
  for (unsigned threads : {2u, 5u, 0u}) {
    config.threads = threads;
    CHECK(run_grid(config) == serial);
  }
  config.threads = 1;
  CHECK(run_grid(config) == serial);
}

TEST_CASE("BIC rows depend on the seed, gamma-method rows do not") {
  SimConfig a;
  a.n_min = 8;
  a.n_max = 15;
  a.iterations = 30;
  a.seed = 1;
  SimConfig b = a;
  b.seed = 2;
  const auto ra = run_grid(a);
  const auto rb = run_grid(b);
  REQUIRE(ra.size() == rb.size());
  int bic_differences = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].method == ErrorMethod::Bic) {
      bic_differences += ra[i].mean_percent_error != rb[i].mean_percent_error;
    } else {
      CHECK(ra[i].mean_percent_error == doctest::Approx(rb[i].mean_percent_error).epsilon(1e-12));
    }
  }
  CHECK(bic_differences == 8);
}

TEST_CASE("Frame <= Stirling <= Wendel for every N") {
  SimConfig config;
  config.iterations = 5;
  config.seed = 3;
  config.threads = 0;
  const auto rows = run_grid(config);
  REQUIRE(rows.size() == 388);
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    INFO("N = " << rows[i].n_total);
    CHECK(rows[i + 1].mean_percent_error <= rows[i + 2].mean_percent_error);
    CHECK(rows[i + 2].mean_percent_error <= rows[i + 3].mean_percent_error);
  }
}

TEST_CASE("CSV output") {
  const auto rows = synthetic_rows();
  REQUIRE(rows.size() == 388);
  std::ostringstream out;
  emit_csv(rows, out);
  const std::string text = out.str();
  CHECK(text.rfind("n_total,method,mean_percent_error,iterations\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 389);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find("\n4,bic,") != std::string::npos);

  std::istringstream in(text);
  const auto parsed = read_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].n_total == rows[i].n_total);
    CHECK(parsed[i].method == rows[i].method);
    CHECK(parsed[i].iterations_used == rows[i].iterations_used);
    CHECK(parsed[i].mean_percent_error == doctest::Approx(rows[i].mean_percent_error).epsilon(1e-9));
  }
  std::ostringstream again;
  emit_csv(parsed, again);
  CHECK(again.str() == text);
}

TEST_CASE("CSV prints ten significant digits") {
  std::ostringstream out;
  const std::vector<ErrorRow> rows = {{7, ErrorMethod::Frame, 0.0068318835253896573, 1000},
                                      {7, ErrorMethod::Wendel, 4.846713805185541, 1000}};
  emit_csv(rows, out);
  CHECK(out.str() ==
        "n_total,method,mean_percent_error,iterations\n"
        "7,frame,0.006831883525,1000\n"
        "7,wendel,4.846713805,1000\n");
}

TEST_CASE("CSV errors") {
  std::ostringstream out;
  CHECK_THROWS_AS(emit_csv(std::vector<ErrorRow>{}, out), ArgumentError);

  const auto rows = synthetic_rows();
  const std::filesystem::path bad = "/nonexistent-dir/for/sure/out.csv";
  try {
    emit_csv(rows, bad);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }

  std::istringstream wrong_header("n,method\n");
  CHECK_THROWS_AS(read_csv(wrong_header), IoError);
  std::istringstream bad_method("n_total,method,mean_percent_error,iterations\n4,lanczos,1.0,10\n");
  CHECK_THROWS_AS(read_csv(bad_method), IoError);
  std::istringstream bad_number("n_total,method,mean_percent_error,iterations\n4,bic,1.0x,10\n");
  CHECK_THROWS_AS(read_csv(bad_number), IoError);
  std::istringstream extra_field("n_total,method,mean_percent_error,iterations\n4,bic,1.0,10,3\n");
  CHECK_THROWS_AS(read_csv(extra_field), IoError);
}

TEST_CASE("CSV file round trip") {
  const auto rows = synthetic_rows();
  const auto path = std::filesystem::temp_directory_path() / "pbf_sim_test.csv";
  emit_csv(rows, path);
  std::ifstream in(path);
  const auto parsed = read_csv(in);
  CHECK(parsed.size() == rows.size());
  std::filesystem::remove(path);
}
