#pragma once

// Discrete vacuum and coherent states built from theta functions, with their
// closed-form Wigner functions, overlaps and marginal distributions.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "finphase/mapping_kernel.hpp"
#include "finphase/theta.hpp"

namespace finphase {

/// Unit-norm state in the {|u_g>} basis.
class StateVector {
 public:
  static constexpr double kNormTol = 1e-12;

  StateVector(Dimension dim, Vector amplitudes)
      : dim_(dim), amps_(std::move(amplitudes)) {
    if (amps_.size() != dim_.n()) throw ValidationError("StateVector: wrong length");
    if (std::abs(amps_.norm() - 1.0) > kNormTol) {
      throw ValidationError("StateVector: norm differs from 1 by more than 1e-12");
    }
  }

  /// Rescales `raw` to unit norm first.
  static StateVector normalized(Dimension dim, const Vector& raw) {
    const double norm = raw.norm();
    if (!(norm > 0.0)) throw ValidationError("StateVector: zero vector");
    return {dim, raw / norm};
  }

  const Dimension& dim() const noexcept { return dim_; }
  const Vector& amplitudes() const noexcept { return amps_; }
  Complex at(long long gamma) const { return amps_(dim_.index(gamma)); }

  /// <this|other>
  Complex inner(const StateVector& other) const { return amps_.dot(other.amps_); }

  Operator projector() const { return {dim_, amps_ * amps_.adjoint()}; }

 private:
  Dimension dim_;
  Vector amps_;
};

inline StateVector apply(const Operator& op, const StateVector& s) {
  if (!(op.dim() == s.dim())) throw ValidationError("apply: dimension mismatch");
  return StateVector::normalized(s.dim(), op.matrix() * s.amplitudes());
}

/// |u_alpha>
inline StateVector basis_u(const Dimension& dim, long long alpha) {
  Vector v = Vector::Zero(dim.n());
  v(dim.index(alpha)) = 1.0;
  return {dim, std::move(v)};
}

/// |v_beta>, the eigenvector of V with eigenvalue omega^beta.
inline StateVector basis_v(const Dimension& dim, long long beta) {
  return StateVector::normalized(dim, fourier(dim).matrix().col(dim.index(beta)));
}

/// I / n.
inline Operator maximally_mixed(const Dimension& dim) {
  return Operator::identity(dim) * Complex(1.0 / dim.n());
}

/// Pure state with i.i.d. standard-normal real and imaginary parts,
/// normalised. Deterministic for a given (n, seed) with a given standard
/// library.
inline StateVector random_pure_state(const Dimension& dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim.n());
  for (int i = 0; i < dim.n(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return StateVector::normalized(dim, v);
}

/// The +1 eigenstate of the Fourier operator,
/// <u_g|0> = sqrt(2a / M(0,0)) theta_3(2 a g | 2 i a), a = 1/(2n).
inline StateVector vacuum(const Dimension& dim) {
  const double a = coherent_lattice(dim);
  const double m00 = m_func(dim, MVariant::doubled, 0, 0).real();
  const double norm = std::sqrt(2.0 * a / m00);
  Vector v(dim.n());
  for (int i = 0; i < dim.n(); ++i) {
    v(i) = norm * theta(3, 2.0 * a * dim.label_at(i), 2.0 * a);
  }
  return {dim, std::move(v)};
}

/// |kappa, tau> = D(kappa, tau)|0>.
inline StateVector coherent_state(const Dimension& dim, long long kappa, long long tau) {
  return {dim, displacement(dim, kappa, tau).matrix() * vacuum(dim).amplitudes()};
}

/// W_{kappa,tau}(mu, nu) = K(2(kappa - mu), 2(tau - nu)) from the doubled
/// theta combination.
inline double coherent_wigner_closed(const Dimension& dim, long long kappa, long long tau,
                                     long long mu, long long nu) {
  const long long eta = dim.reduce(kappa) - dim.reduce(mu);
  const long long xi = dim.reduce(tau) - dim.reduce(nu);
  return k_func(dim, MVariant::doubled, eta, xi).real();
}

enum class WignerMethod { closed, trace };

/// Wigner grid of |kappa, tau>. The closed form costs O(n^2) theta
/// evaluations; `trace` goes through the kernel for cross-checks.
inline PhaseFunction coherent_wigner(const Dimension& dim, long long kappa, long long tau,
                                     WignerMethod method = WignerMethod::closed) {
  if (method == WignerMethod::trace) {
    return wigner(coherent_state(dim, kappa, tau).projector());
  }
  PhaseFunction w(dim);
  for (int i = 0; i < dim.n(); ++i) {
    for (int j = 0; j < dim.n(); ++j) {
      const int mu = dim.label_at(i);
      const int nu = dim.label_at(j);
      w.at(mu, nu) = coherent_wigner_closed(dim, kappa, tau, mu, nu);
    }
  }
  return w;
}

/// <kappa', tau' | kappa, tau> from the general theta combination. The bra
/// labels come first.
///
/// The half-integer power omega^{(kappa-kappa')(tau+tau')/2} is taken as
/// exp(i pi (kappa-kappa')(tau+tau') / n) on the symmetric-reduced labels.
inline Complex coherent_overlap_closed(const Dimension& dim, long long kappa_bra,
                                       long long tau_bra, long long kappa_ket,
                                       long long tau_ket) {
  const long long kp = dim.reduce(kappa_bra);
  const long long tp = dim.reduce(tau_bra);
  const long long k = dim.reduce(kappa_ket);
  const long long t = dim.reduce(tau_ket);
  const long long h1 = half_phase(dim, 1, k * tp - kp * t);
  const long long m = (k - kp) * (t + tp);
  const long long h2 = half_phase(dim, 1, m);
  const long long two_n = 2LL * dim.n();
  long long half_exponent = (m - 2 * h2) % two_n;
  if (half_exponent < 0) half_exponent += two_n;
  const double angle = std::numbers::pi * static_cast<double>(half_exponent) / dim.n();
  const Complex half_phase_factor(std::cos(angle), std::sin(angle));
  return dim.omega_pow(h1) * half_phase_factor * k_func(dim, MVariant::general, k - kp, t - tp);
}

enum class MarginalAxis { coordinate, momentum };

struct MarginalDistribution {
  Dimension dim;
  MarginalAxis axis;
  std::vector<double> values;  ///< indexed by label + l

  double at(long long label) const { return values[dim.index(label)]; }
  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

struct Marginals {
  MarginalDistribution coordinate;  ///< Q_tau(nu)
  MarginalDistribution momentum;    ///< R_kappa(mu)
};

/// Closed-form coordinate marginal Q_tau(nu) and momentum marginal
/// R_kappa(mu) of |kappa, tau>.
///
/// Both are the squared vacuum profile (2a / M(0,0)) theta_3(2a d | 2ia)^2
/// at the label offset d. The equivalent sum theta_3 theta_3 + theta_2 theta_2
/// over the 4a lattice cancels to zero in the far tails for large n, while the
/// squared form keeps full relative accuracy there.
inline Marginals marginals_closed(const Dimension& dim, long long kappa, long long tau) {
  const double a = coherent_lattice(dim);
  const double scale = 2.0 * a / m_func(dim, MVariant::doubled, 0, 0).real();
  auto profile = [&](long long offset) {
    const double t = theta(3, 2.0 * a * static_cast<double>(dim.reduce(offset)), 2.0 * a);
    return scale * t * t;
  };
  const long long k = dim.reduce(kappa);
  const long long t = dim.reduce(tau);
  Marginals out{{dim, MarginalAxis::coordinate, std::vector<double>(dim.n())},
                {dim, MarginalAxis::momentum, std::vector<double>(dim.n())}};
  for (int i = 0; i < dim.n(); ++i) {
    out.coordinate.values[i] = profile(t - dim.label_at(i));
    out.momentum.values[i] = profile(k - dim.label_at(i));
  }
  return out;
}

/// Marginals by partial sums (1/n) sum of a Wigner grid.
inline Marginals marginals_from_grid(const PhaseFunction& w) {
  const Dimension& dim = w.dim();
  const double inv_n = 1.0 / dim.n();
  Marginals out{{dim, MarginalAxis::coordinate, std::vector<double>(dim.n())},
                {dim, MarginalAxis::momentum, std::vector<double>(dim.n())}};
  for (int i = 0; i < dim.n(); ++i) {
    out.coordinate.values[i] = w.values().col(i).sum().real() * inv_n;
    out.momentum.values[i] = w.values().row(i).sum().real() * inv_n;
  }
  return out;
}

}  // namespace finphase
