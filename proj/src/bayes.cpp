#include "pbf/bayes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pbf/error.hpp"

namespace pbf {
namespace {

const double kLogPi = std::log(std::numbers::pi);

}  // namespace

SummaryStats::SummaryStats(double t, double nu, std::optional<int> n_total)
    : t_(t), nu_(nu), n_total_(n_total) {
  if (!std::isfinite(t)) throw DomainError("t statistic must be finite");
  if (!std::isfinite(nu) || !(nu > 0.0)) {
    throw DomainError("degrees of freedom must be finite and > 0, got " + std::to_string(nu));
  }
  if (n_total && *n_total < 3) {
    throw DomainError("total sample size must be >= 3, got " + std::to_string(*n_total));
  }
}

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value) || !(value > -1.0)) {
    throw DomainError("alpha must be finite and > -1, got " + std::to_string(value));
  }
}

double BayesFactor::value() const { return std::exp(log_value_); }

BayesFactor BayesFactor::in_direction(Direction direction) const {
  return direction == direction_ ? *this : flip(*this);
}

BayesFactor flip(const BayesFactor& bf) {
  const Direction other =
      bf.direction() == Direction::H1overH0 ? Direction::H0overH1 : Direction::H1overH0;
  return {-bf.log_value(), other};
}

double log1p_t2_over_nu(double t, double nu) {
  const double ratio = t * t / nu;
  if (std::isfinite(ratio)) return std::log1p(ratio);
  // ln(t^2/nu) + log1p(nu/t^2); the second term is below one ulp here.
  return 2.0 * std::log(std::abs(t)) - std::log(nu);
}

double log_tail_factor(const SummaryStats& stats) {
  const double nu = stats.nu();
  return 0.5 * ((nu - 1.0) * log1p_t2_over_nu(stats.t(), nu) - kLogPi);
}

double tail_factor(const SummaryStats& stats) { return std::exp(log_tail_factor(stats)); }

PearsonTerms pearson_terms(const SummaryStats& stats, QuotientMethod method) {
  return {log_quotient(stats.nu(), method), log_tail_factor(stats)};
}

BayesFactor pbf10(const SummaryStats& stats, QuotientMethod method) {
  return pearson_terms(stats, method).bf10();
}

BayesFactor pbf10_general(const SummaryStats& stats, Alpha alpha) {
  const double nu = stats.nu();
  const double a = alpha.value();
  // Gamma(nu/2)/Gamma(nu/2 + 1/2) and Gamma(a + 3/2)/Gamma(a + 1) are both half steps.
  const double log_gammas = -ln_gamma_half_step(0.5 * nu) + ln_gamma_half_step(a + 1.0);
  const double exponent = 0.5 * (nu - 2.0 * a - 2.0);
  const double log_power = exponent == 0.0 ? 0.0 : exponent * log1p_t2_over_nu(stats.t(), nu);
  return {log_gammas + log_power, Direction::H1overH0};
}

BayesFactor bic_bf01(const SummaryStats& stats) {
  if (!stats.n_total()) {
    throw ArgumentError("BIC Bayes factor requires the total sample size n");
  }
  const double n = *stats.n_total();
  return {0.5 * (std::log(n) - n * log1p_t2_over_nu(stats.t(), stats.nu())),
          Direction::H0overH1};
}

double percent_error(double approx, double reference) {
  if (!std::isfinite(reference) || !(reference > 0.0)) {
    throw DomainError("percent_error: reference must be finite and > 0");
  }
  if (!std::isfinite(approx) || approx < 0.0) {
    throw DomainError("percent_error: approximation must be finite and >= 0");
  }
  return 100.0 * std::abs(approx - reference) / reference;
}

double percent_error(const BayesFactor& approx, const BayesFactor& reference) {
  if (approx.direction() != reference.direction()) {
    throw ArgumentError("percent_error: Bayes factors express different directions");
  }
  return 100.0 * std::abs(std::expm1(approx.log_value() - reference.log_value()));
}

double percent_error(const PearsonTerms& approx, const PearsonTerms& reference) {
  const double delta = (approx.log_quotient - reference.log_quotient) +
                       (approx.log_tail - reference.log_tail);
  return 100.0 * std::abs(std::expm1(delta));
}

}  // namespace pbf
