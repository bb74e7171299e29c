#include "pbf/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "pbf/error.hpp"

namespace pbf {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln sqrt(2 pi)

// zeta(k) - 1 for k = 2..41.
constexpr std::array<double, 40> kZetaMinusOne = {
    6.4493406684822644e-1,  2.0205690315959429e-1,  8.2323233711138192e-2,
    3.6927755143369926e-2,  1.734306198444914e-2,   8.3492773819228268e-3,
    4.0773561979443394e-3,  2.0083928260822144e-3,  9.9457512781808534e-4,
    4.9418860411946456e-4,  2.460865533080483e-4,   1.2271334757848915e-4,
    6.1248135058704829e-5,  3.0588236307020494e-5,  1.5282259408651872e-5,
    7.6371976378997623e-6,  3.8172932649998399e-6,  1.9082127165539389e-6,
    9.5396203387279611e-7,  4.7693298678780646e-7,  2.3845050272773299e-7,
    1.1921992596531107e-7,  5.960818905125948e-8,   2.980350351465228e-8,
    1.4901554828365041e-8,  7.4507117898354295e-9,  3.7253340247884571e-9,
    1.862659723513049e-9,   9.3132743241966818e-10, 4.6566290650337841e-10,
    2.3283118336765055e-10, 1.164155017270052e-10,  5.8207720879027009e-11,
    2.9103850444970997e-11, 1.4551921891041984e-11, 7.275959835057481e-12,
    3.6379795473786512e-12, 1.8189896503070659e-12, 9.0949478402638893e-13,
    4.547473783042154e-13,
};

// B_2k / (2k (2k - 1)), k = 1..8.
constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,    -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,  -691.0 / 360360.0,    1.0 / 156.0,  -3617.0 / 122400.0,
};

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

// ln Gamma(2 + z) for |z| <= 1/2 from its Taylor series at 2:
//   (1 - euler) z + sum_{k>=2} (-1)^k (zeta(k) - 1) / k z^k.
// The series vanishes exactly at z = 0, so relative accuracy holds at the root.
double ln_gamma_near_two(double z) {
  double acc = 0.0;
  for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
    const double k = static_cast<double>(i + 2);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    acc = acc * z + sign * kZetaMinusOne[i] / k;
  }
  return z * ((1.0 - std::numbers::egamma) + z * acc);
}

// Asymptotic tail ln Gamma(x) - [(x - 1/2) ln x - x + ln sqrt(2 pi)]; x >= 10.
double stirling_series_tail(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (std::size_t i = kStirlingCoefficients.size(); i-- > 0;) {
    acc = acc * inv2 + kStirlingCoefficients[i];
  }
  return acc * inv;
}

constexpr double kAsymptoticCutoff = 10.0;

}  // namespace

std::string_view to_string(QuotientMethod method) {
  switch (method) {
    case QuotientMethod::Analytic: return "analytic";
    case QuotientMethod::Wendel: return "wendel";
    case QuotientMethod::Stirling: return "stirling";
    case QuotientMethod::Frame: return "frame";
  }
  return "unknown";
}

std::optional<QuotientMethod> parse_quotient_method(std::string_view name) {
  for (auto m : {QuotientMethod::Analytic, QuotientMethod::Wendel, QuotientMethod::Stirling,
                 QuotientMethod::Frame}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double ln_gamma(double x) {
  require_positive(x, "ln_gamma");
  if (x < 0.5) {
    return ln_gamma(x + 1.0) - std::log(x);
  }
  if (x < 1.5) {
    // Gamma(x) = Gamma(x + 1) / x; z = x - 1 is exact here.
    const double z = x - 1.0;
    return ln_gamma_near_two(z) - std::log1p(z);
  }
  if (x < 2.5) {
    return ln_gamma_near_two(x - 2.0);
  }
  if (x < kAsymptoticCutoff) {
    double y = x;
    double product = 1.0;
    while (y >= 2.5) {
      y -= 1.0;
      product *= y;
    }
    return ln_gamma_near_two(y - 2.0) + std::log(product);
  }
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_series_tail(x);
}

double ln_gamma_half_step(double x) {
  require_positive(x, "ln_gamma_half_step");
  if (x < kAsymptoticCutoff) {
    return ln_gamma(x + 0.5) - ln_gamma(x);
  }
  // x ln(x + 1/2) - (x - 1/2) ln x - 1/2 = 1/2 ln x + (x log1p(1/(2x)) - 1/2)
  return 0.5 * std::log(x) + (x * std::log1p(0.5 / x) - 0.5) +
         (stirling_series_tail(x + 0.5) - stirling_series_tail(x));
}

double ln_stirling_gamma(double x) {
  require_positive(x, "stirling_gamma");
  return kHalfLog2Pi + (x - 0.5) * std::log(x) - x;
}

double stirling_gamma(double x) { return std::exp(ln_stirling_gamma(x)); }

double frame_quotient(double n, double u) {
  if (!std::isfinite(n) || !std::isfinite(u)) {
    throw DomainError("frame_quotient: arguments must be finite");
  }
  const double base = n * n + (1.0 - u * u) / 12.0;
  if (!(base > 0.0) || !std::isfinite(base)) {
    throw DomainError("frame_quotient: n^2 + (1 - u^2)/12 must be positive, got " +
                      std::to_string(base));
  }
  return std::pow(base, 0.5 * u);
}

double log_quotient(double nu, QuotientMethod method) {
  require_positive(nu, "quotient");
  switch (method) {
    case QuotientMethod::Analytic:
      return -ln_gamma_half_step(0.5 * nu);
    case QuotientMethod::Wendel:
      return 0.5 * (std::numbers::ln2 - std::log(nu));
    case QuotientMethod::Stirling:
      // (nu - 1) ln nu - nu ln(nu + 1) = -ln nu - nu log1p(1/nu)
      return 0.5 * (1.0 + std::numbers::ln2 - std::log(nu) - nu * std::log1p(1.0 / nu));
    case QuotientMethod::Frame: {
      // 2 nu^2 - 2 nu + 1, factored as nu^2 (2 - 2/nu + 1/nu^2) once nu^2 could overflow
      const double log_denominator =
          nu < 1.0 ? std::log(2.0 * nu * nu - 2.0 * nu + 1.0)
                   : 2.0 * std::log(nu) + std::log(2.0 - 2.0 / nu + 1.0 / (nu * nu));
      return 0.25 * (3.0 * std::numbers::ln2 - log_denominator);
    }
  }
  throw DomainError("quotient: unknown method");
}

double analytic_c(double nu) { return std::exp(log_quotient(nu, QuotientMethod::Analytic)); }

double wendel_c(double nu) {
  require_positive(nu, "wendel_c");
  return std::sqrt(2.0 / nu);
}

double stirling_c(double nu) { return std::exp(log_quotient(nu, QuotientMethod::Stirling)); }

double frame_c(double nu) { return std::exp(log_quotient(nu, QuotientMethod::Frame)); }

double quotient(double nu, QuotientMethod method) {
  switch (method) {
    case QuotientMethod::Analytic: return analytic_c(nu);
    case QuotientMethod::Wendel: return wendel_c(nu);
    case QuotientMethod::Stirling: return stirling_c(nu);
    case QuotientMethod::Frame: return frame_c(nu);
  }
  throw DomainError("quotient: unknown method");
}

}  // namespace pbf
