#pragma once

// Bayes factors for the two-independent-samples design, computed from the
// summary statistics (t, nu) alone.
//
// The Pearson Bayes factor with the default prior scale factors as
//
//   PBF_10 = C(nu) * sqrt((1/pi) (1 + t^2/nu)^(nu - 1))
//
// where C(nu) is the gamma quotient from gamma.hpp. Everything is carried as
// logarithms: (1 + t^2/nu)^(nu-1) overflows a double long before the Bayes
// factor itself does.

#include <optional>

#include "pbf/gamma.hpp"

namespace pbf {

enum class Direction { H1overH0, H0overH1 };

/// Summary statistics of a two-sample t-test. n_total (total N) is only
/// needed for the BIC approximation.
class SummaryStats {
 public:
  /// Throws DomainError unless t is finite, nu > 0 and finite, and n_total
  /// (if given) is >= 3.
  SummaryStats(double t, double nu, std::optional<int> n_total = std::nullopt);

  double t() const { return t_; }
  double nu() const { return nu_; }
  std::optional<int> n_total() const { return n_total_; }

 private:
  double t_;
  double nu_;
  std::optional<int> n_total_;
};

/// Scale parameter of the Pearson Type-VI prior; must exceed -1.
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const { return value_; }

  static Alpha standard() { return Alpha(-0.5); }

 private:
  double value_;
};

/// A positive evidence ratio stored as its natural log plus the direction
/// it expresses (H1 over H0, or H0 over H1).
class BayesFactor {
 public:
  BayesFactor(double log_value, Direction direction)
      : log_value_(log_value), direction_(direction) {}

  double log_value() const { return log_value_; }
  Direction direction() const { return direction_; }
  double value() const;

  /// Same evidence expressed in the requested direction.
  BayesFactor in_direction(Direction direction) const;

  friend bool operator==(const BayesFactor&, const BayesFactor&) = default;

 private:
  double log_value_;
  Direction direction_;
};

BayesFactor flip(const BayesFactor& bf);

/// PBF_10 kept as its two log factors so that two Pearson Bayes factors for
/// the same data can be compared with the common tail cancelling exactly.
struct PearsonTerms {
  double log_quotient;
  double log_tail;

  BayesFactor bf10() const { return {log_quotient + log_tail, Direction::H1overH0}; }
};

/// ln(1 + t^2/nu), without overflow for huge |t|.
double log1p_t2_over_nu(double t, double nu);

double log_tail_factor(const SummaryStats& stats);
/// sqrt((1/pi) (1 + t^2/nu)^(nu - 1))
double tail_factor(const SummaryStats& stats);

PearsonTerms pearson_terms(const SummaryStats& stats, QuotientMethod method);

/// Pearson Bayes factor at the default prior scale alpha = -1/2.
BayesFactor pbf10(const SummaryStats& stats, QuotientMethod method);

/// Pearson Bayes factor for an arbitrary prior scale, exact gamma evaluation:
///   Gamma(nu/2) Gamma(a + 3/2) / (Gamma((nu+1)/2) Gamma(a + 1)) (1 + t^2/nu)^((nu - 2a - 2)/2)
BayesFactor pbf10_general(const SummaryStats& stats, Alpha alpha);

/// BIC approximation BF_01 = sqrt(n (1 + t^2/nu)^-n), n = total sample size.
/// Throws ArgumentError when stats carries no n_total.
BayesFactor bic_bf01(const SummaryStats& stats);

/// 100 |approx - reference| / reference. Throws DomainError unless reference > 0
/// and approx >= 0, both finite.
double percent_error(double approx, double reference);

/// Same quantity computed from the logs, 100 |exp(log a - log r) - 1|.
/// Both factors must express the same direction (ArgumentError otherwise).
double percent_error(const BayesFactor& approx, const BayesFactor& reference);

/// Term-wise version: the quotient and tail differences are formed before
/// summing, so identical tails contribute exactly zero.
double percent_error(const PearsonTerms& approx, const PearsonTerms& reference);

}  // namespace pbf
