#pragma once

// Jacobi theta functions theta_j(z | i a), j = 2, 3, 4, for real z and a
// purely imaginary lattice parameter i a (nome q = exp(-pi a)), unit period
// convention:
//
//   theta_3(z | i a) = sum_n q^{n^2} exp(2 pi i n z)
//   theta_4(z | i a) = theta_3(z + 1/2 | i a)
//   theta_2(z | i a) = sum_n q^{(n+1/2)^2} exp(2 pi i (n+1/2) z)
//
// For a < 1 the nome approaches 1 and the q-series stalls, so the imaginary
// transformation is applied first:
//
//   theta_3(z | i a) = a^{-1/2} sum_n exp(-pi (z - n)^2 / a)
//   theta_2(z | i a) = a^{-1/2} sum_n (-1)^n exp(-pi (z - n)^2 / a)

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "finphase/errors.hpp"
#include "finphase/finite_algebra.hpp"

namespace finphase {

namespace theta_detail {

inline constexpr int kMaxTerms = 512;
inline constexpr double kRelTol = 1e-16;

inline void check_args(int j, double z, double a) {
  if (j < 2 || j > 4) throw DomainError("theta: index must be 2, 3 or 4");
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("theta: lattice parameter a must be positive and finite");
  }
  if (!std::isfinite(z)) throw DomainError("theta: argument z must be finite");
}

[[noreturn]] inline void cap_exceeded(const char* route, double a) {
  throw NumericalError("theta", std::string(route) + " series did not reach relative tolerance 1e-16 within 512 terms (a=" +
                                    std::to_string(a) + ")");
}

}  // namespace theta_detail

/// Direct q-series. Accurate for a >= 1; usable down to a ~ 0.02 before the
/// term cap is hit.
inline double theta_series(int j, double z, double a) {
  using namespace theta_detail;
  check_args(j, z, a);
  constexpr double pi = std::numbers::pi;
  const double log_q = -pi * a;
  double sum = (j == 2) ? 0.0 : 1.0;
  double magnitude = std::abs(sum);
  for (int k = (j == 2 ? 0 : 1); k < kMaxTerms; ++k) {
    double bound;
    double term;
    if (j == 2) {
      const double e = k + 0.5;
      bound = 2.0 * std::exp(log_q * e * e);
      term = bound * std::cos(2.0 * pi * e * z);
    } else {
      bound = 2.0 * std::exp(log_q * double(k) * k);
      const double sign = (j == 4 && (k % 2 != 0)) ? -1.0 : 1.0;
      term = sign * bound * std::cos(2.0 * pi * k * z);
    }
    if (magnitude > 0.0 && bound < kRelTol * magnitude) return sum;
    sum += term;
    magnitude += std::abs(bound);
  }
  cap_exceeded("q", a);
}

/// Sum after the imaginary (modular) transformation. Accurate for a <= 1.
inline double theta_dual(int j, double z, double a) {
  using namespace theta_detail;
  check_args(j, z, a);
  constexpr double pi = std::numbers::pi;
  double shift = std::round(z);
  double z0 = z - shift;
  // theta_2 picks up (-1) per unit shift; theta_4 is theta_3 moved by 1/2.
  double overall = 1.0;
  if (j == 2 && std::fmod(std::abs(shift), 2.0) == 1.0) overall = -1.0;
  if (j == 4) {
    z0 += 0.5;
    z0 -= std::round(z0);
  }
  const bool alternating = (j == 2);
  auto gauss = [&](long k) {
    const double d = z0 - double(k);
    return std::exp(-pi * d * d / a);
  };
  double sum = gauss(0);
  double magnitude = sum;
  for (long k = 1; k < kMaxTerms; ++k) {
    const double plus = gauss(k);
    const double minus = gauss(-k);
    if (plus + minus < kRelTol * magnitude) {
      return overall * sum / std::sqrt(a);
    }
    const double sign = (alternating && (k % 2 != 0)) ? -1.0 : 1.0;
    sum += sign * (plus + minus);
    magnitude += plus + minus;
  }
  cap_exceeded("dual", a);
}

/// theta_j(z | i a), picking the convergent route.
inline double theta(int j, double z, double a) {
  theta_detail::check_args(j, z, a);
  return a >= 1.0 ? theta_series(j, z, a) : theta_dual(j, z, a);
}

enum class MVariant {
  general,  ///< complex M(eta, xi) governing coherent-state overlaps
  doubled,  ///< real M(2 eta, 2 xi) governing coherent-state Wigner values
};

/// Lattice parameter a = 1/(2n) used by the coherent-state family.
inline double coherent_lattice(const Dimension& dim) { return 0.5 / dim.n(); }

/// The theta combination M. For the doubled variant (eta, xi) are the halves
/// of the arguments, so the returned value is M(2 eta, 2 xi).
inline Complex m_func(const Dimension& dim, MVariant variant, long long eta, long long xi) {
  const double a = coherent_lattice(dim);
  const double root_a = std::sqrt(a);
  const double e = static_cast<double>(eta);
  const double x = static_cast<double>(xi);
  if (variant == MVariant::doubled) {
    return root_a * (theta(3, 2.0 * a * e, a) * theta(3, 4.0 * a * x, 4.0 * a) +
                     theta(4, 2.0 * a * e, a) * theta(2, 4.0 * a * x, 4.0 * a));
  }
  // e^{i pi eta} and e^{i pi xi} are exact signs for integer arguments.
  const double s_eta = (eta % 2 == 0) ? 1.0 : -1.0;
  const double s_xi = (xi % 2 == 0) ? 1.0 : -1.0;
  const double t3e = theta(3, a * e, a);
  const double t4e = theta(4, a * e, a);
  const double t3x = theta(3, a * x, a);
  const double t4x = theta(4, a * x, a);
  return 0.5 * root_a * (t3e * (t3x + s_eta * t4x) + s_xi * t4e * (t3x - s_eta * t4x));
}

/// K = M / M(0,0), each variant normalised by its own value at the origin.
inline Complex k_func(const Dimension& dim, MVariant variant, long long eta, long long xi) {
  if (eta == 0 && xi == 0) return 1.0;
  return m_func(dim, variant, eta, xi) / m_func(dim, variant, 0, 0);
}

}  // namespace finphase
