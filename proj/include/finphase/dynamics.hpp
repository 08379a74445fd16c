#pragma once

// Mapped von Neumann-Liouville dynamics on the discrete phase space: the
// Liouvillian kernel, the Harper Hamiltonian, phase-space propagators and a
// finite-difference residual for the Harper propagator equation.
//
// Rank-4 grids over (mu, nu | mu', nu') are stored as n^2 x n^2 matrices with
// flat index (mu + l) n + (nu + l), so composition is a matrix product.

#include <Eigen/Eigenvalues>

#include <functional>
#include <utility>

#include "finphase/mapping_kernel.hpp"

namespace finphase {

struct HbarConfig {
  double hbar = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
      throw ValidationError("HbarConfig: hbar must be positive and finite");
    }
  }
};

/// Flat position of (mu, nu) in a rank-4 grid.
inline int phase_index(const Dimension& dim, long long mu, long long nu) {
  return dim.index(mu) * dim.n() + dim.index(nu);
}

/// Column vector of a phase function in flat order.
inline Vector flatten(const PhaseFunction& f) {
  const int n = f.dim().n();
  Vector v(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) v(i * n + j) = f.values()(i, j);
  }
  return v;
}

inline PhaseFunction unflatten(const Dimension& dim, const Vector& v) {
  const int n = dim.n();
  if (v.size() != n * n) throw ValidationError("unflatten: expected n^2 entries");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  }
  return {dim, std::move(m)};
}

/// Rank-4 grid over pairs of phase-space points.
class PhaseGrid4 {
 public:
  PhaseGrid4(Dimension dim, Matrix values) : dim_(dim), values_(std::move(values)) {
    const int nn = dim_.n() * dim_.n();
    if (values_.rows() != nn || values_.cols() != nn) {
      throw ValidationError("rank-4 grid must be n^2 x n^2");
    }
  }

  const Dimension& dim() const noexcept { return dim_; }
  const Matrix& values() const noexcept { return values_; }

  Complex at(long long mu, long long nu, long long mu1, long long nu1) const {
    return values_(phase_index(dim_, mu, nu), phase_index(dim_, mu1, nu1));
  }

  /// g(mu, nu) = sum_{mu', nu'} grid(mu, nu, mu', nu') f(mu', nu').
  PhaseFunction apply(const PhaseFunction& f) const {
    if (!(f.dim() == dim_)) throw ValidationError("rank-4 grid: dimension mismatch");
    return unflatten(dim_, values_ * flatten(f));
  }

 protected:
  Dimension dim_;
  Matrix values_;
};

/// L(mu, nu, mu', nu') with i hbar dW(mu, nu)/dt = sum L(mu, nu, mu', nu') W(mu', nu').
class LiouvillianKernel : public PhaseGrid4 {
 public:
  using PhaseGrid4::PhaseGrid4;
};

/// W(mu, nu; t) = sum P(mu, nu; t | a, b; t0) W(a, b; t0).
class PhasePropagator : public PhaseGrid4 {
 public:
  PhasePropagator(Dimension dim, Matrix values, double t, double t0)
      : PhaseGrid4(dim, std::move(values)), t_(t), t0_(t0) {}

  double t() const noexcept { return t_; }
  double t0() const noexcept { return t0_; }

  /// (this o earlier): propagates from earlier.t0() to this->t().
  PhasePropagator compose(const PhasePropagator& earlier) const {
    if (!(earlier.dim() == dim_)) throw ValidationError("compose: dimension mismatch");
    return {dim_, values_ * earlier.values_, t_, earlier.t0_};
  }

 private:
  double t_;
  double t0_;
};

/// H = 2 - (U + U^dagger)/2 - (V + V^dagger)/2.
inline Operator harper_hamiltonian(const Dimension& dim) {
  const auto [u, v] = schwinger_pair(dim);
  return Operator::identity(dim) * Complex(2.0) - (u + u.adjoint()) * Complex(0.5) -
         (v + v.adjoint()) * Complex(0.5);
}

/// Generic mapped Liouvillian
/// L = -(2i/n^2) sum Im[omega^{2[(mu-mu'')(nu-nu') - (mu-mu')(nu-nu'')]}] H(mu'', nu'').
inline LiouvillianKernel liouvillian(const Dimension& dim, const PhaseFunction& h_map) {
  if (!(h_map.dim() == dim)) throw ValidationError("liouvillian: dimension mismatch");
  if (h_map.max_imag() > kDensityTol) {
    throw ValidationError("liouvillian: mapped Hamiltonian must be real");
  }
  const int n = dim.n();
  std::vector<double> sine(n);
  for (int k = 0; k < n; ++k) sine[k] = dim.omega_pow(k).imag();
  const Eigen::MatrixXd h = h_map.values().real();
  Matrix out = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    const long long mu = dim.label_at(i);
    for (int j = 0; j < n; ++j) {
      const long long nu = dim.label_at(j);
      for (int i1 = 0; i1 < n; ++i1) {
        const long long mu1 = dim.label_at(i1);
        for (int j1 = 0; j1 < n; ++j1) {
          const long long nu1 = dim.label_at(j1);
          double acc = 0.0;
          for (int i2 = 0; i2 < n; ++i2) {
            const long long mu2 = dim.label_at(i2);
            for (int j2 = 0; j2 < n; ++j2) {
              const long long nu2 = dim.label_at(j2);
              const long long e = 2 * ((mu - mu2) * (nu - nu1) - (mu - mu1) * (nu - nu2));
              acc += sine[dim.residue(e)] * h(i2, j2);
            }
          }
          out(i * n + j, i1 * n + j1) = Complex(0.0, -2.0 * acc / (double(n) * n));
        }
      }
    }
  }
  return {dim, std::move(out)};
}

/// Closed-form Harper Liouvillian: 2i Im[omega^{2(mu nu' - nu mu')}] times
/// [2 d(mu',mu) d(nu',nu) - (d(mu',mu+h) + d(mu',mu-h)) d(nu',nu)/2
///  - d(mu',mu) (d(nu',nu+h) + d(nu',nu-h))/2], h = {2^-1}, d mod n.
inline Complex harper_liouvillian_closed(const Dimension& dim, long long mu, long long nu,
                                         long long mu1, long long nu1) {
  const long long h = dim.inv2();
  auto delta = [&](long long x, long long y) { return dim.residue(x - y) == 0 ? 1.0 : 0.0; };
  const double bracket =
      2.0 * delta(mu1, mu) * delta(nu1, nu) -
      0.5 * (delta(mu1, mu + h) + delta(mu1, mu - h)) * delta(nu1, nu) -
      0.5 * delta(mu1, mu) * (delta(nu1, nu + h) + delta(nu1, nu - h));
  if (bracket == 0.0) return 0.0;
  const long long e = 2 * (dim.reduce(mu) * dim.reduce(nu1) - dim.reduce(nu) * dim.reduce(mu1));
  return Complex(0.0, 2.0 * dim.omega_pow(e).imag() * bracket);
}

inline LiouvillianKernel harper_liouvillian(const Dimension& dim) {
  const int n = dim.n();
  Matrix out(n * n, n * n);
  for (int a = 0; a < n * n; ++a) {
    for (int b = 0; b < n * n; ++b) {
      out(a, b) = harper_liouvillian_closed(dim, dim.label_at(a / n), dim.label_at(a % n),
                                            dim.label_at(b / n), dim.label_at(b % n));
    }
  }
  return {dim, std::move(out)};
}

struct PropagatorMode {
  enum class Kind { exact, series };
  Kind kind = Kind::exact;
  int order = 0;

  static PropagatorMode exact() { return {Kind::exact, 0}; }
  static PropagatorMode series(int k) {
    if (k < 0) throw ValidationError("series order must be >= 0");
    return {Kind::series, k};
  }
};

/// exp(-i s H / hbar) from a Hermitian eigendecomposition.
inline Operator evolution_operator(const Operator& h, double s, const HbarConfig& cfg = {}) {
  cfg.validate();
  if (!h.is_hermitian(kDensityTol)) throw ValidationError("Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw NumericalError("dynamics", "Hermitian eigensolver did not converge");
  }
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -s / cfg.hbar)).array().exp();
  return {h.dim(), es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint()};
}

/// P(mu, nu; t | a, b; t0).
///
/// exact: (1/n) Tr[Delta(mu,nu) E Delta(a,b) E^dagger] with E = exp(-i(t-t0)H/hbar),
/// which carries W(t0) to the Wigner function of E rho E^dagger.
/// series(k): sum_{j<=k} (-i(t-t0)/hbar)^j L^j / j! with the generic Liouvillian.
inline PhasePropagator propagator(const Dimension& dim, const Operator& h, double t, double t0,
                                  PropagatorMode mode, const HbarConfig& cfg = {}) {
  cfg.validate();
  if (!(h.dim() == dim)) throw ValidationError("propagator: dimension mismatch");
  if (!h.is_hermitian(kDensityTol)) throw ValidationError("Hamiltonian is not Hermitian");
  const int n = dim.n();
  const int nn = n * n;
  const double s = t - t0;
  if (mode.kind == PropagatorMode::Kind::series) {
    const LiouvillianKernel l = liouvillian(dim, map_operator(h));
    const Complex step(0.0, -s / cfg.hbar);
    Matrix term = Matrix::Identity(nn, nn);
    Matrix sum = term;
    for (int j = 1; j <= mode.order; ++j) {
      term = (term * l.values()) * (step / double(j));
      sum += term;
    }
    return {dim, std::move(sum), t, t0};
  }
  const Operator e = evolution_operator(h, s, cfg);
  const auto table = kernels(dim);
  Matrix rows(nn, nn);
  Matrix cols(nn, nn);
  table->for_each([&](int mu, int nu, const Operator& delta) {
    const int a = phase_index(dim, mu, nu);
    const Matrix dt = delta.matrix().transpose();
    rows.row(a) = Eigen::Map<const Eigen::RowVectorXcd>(dt.data(), nn);
    const Matrix moved = e.matrix() * delta.matrix() * e.matrix().adjoint();
    cols.col(a) = Eigen::Map<const Vector>(moved.data(), nn);
  });
  Matrix values = rows * cols / static_cast<double>(n);
  return {dim, std::move(values), t, t0};
}

/// W(mu, nu; t) = sum P(mu, nu; t | a, b; t0) W(a, b; t0).
inline PhaseFunction evolve_wigner(const PhaseFunction& w0, const PhasePropagator& prop) {
  return prop.apply(w0);
}

using PropagatorFamily = std::function<PhasePropagator(double t)>;

struct OdeResidualOptions {
  double hopping = 1.0;     ///< weight of the U and V hopping terms; 0 for H = 2
  bool richardson = false;  ///< combine steps dt and dt/2 for an O(dt^4) derivative
};

/// max |i hbar dP/dt - RHS| over all (mu, nu, a, b), where the derivative is
/// a centred difference and
/// RHS(mu, nu) = -i g [Im w^{-nu} P(mu+h, nu) + Im w^{nu} P(mu-h, nu)
///                    + Im w^{mu} P(mu, nu+h) + Im w^{-mu} P(mu, nu-h)].
inline double harper_ode_residual(const Dimension& dim, const PropagatorFamily& prop_fn,
                                  double t, double dt, const HbarConfig& cfg = {},
                                  const OdeResidualOptions& opts = {}) {
  cfg.validate();
  if (!(dt > 0.0)) throw ValidationError("harper_ode_residual: dt must be positive");
  auto centred = [&](double step) {
    return Matrix((prop_fn(t + step).values() - prop_fn(t - step).values()) / (2.0 * step));
  };
  Matrix deriv = centred(dt);
  if (opts.richardson) deriv = (4.0 * centred(0.5 * dt) - deriv) / 3.0;
  const PhasePropagator p = prop_fn(t);
  if (!(p.dim() == dim)) throw ValidationError("harper_ode_residual: dimension mismatch");
  const int n = dim.n();
  const long long h = dim.inv2();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const long long mu = dim.label_at(i);
    for (int j = 0; j < n; ++j) {
      const long long nu = dim.label_at(j);
      const int row = phase_index(dim, mu, nu);
      const double s_nu = dim.omega_pow(nu).imag();
      const double s_mu = dim.omega_pow(mu).imag();
      for (int b = 0; b < n * n; ++b) {
        const Complex sum = -s_nu * p.values()(phase_index(dim, mu + h, nu), b) +
                            s_nu * p.values()(phase_index(dim, mu - h, nu), b) +
                            s_mu * p.values()(phase_index(dim, mu, nu + h), b) -
                            s_mu * p.values()(phase_index(dim, mu, nu - h), b);
        const Complex rhs = Complex(0.0, -opts.hopping) * sum;
        const Complex lhs = Complex(0.0, cfg.hbar) * deriv(row, b);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst;
}

}  // namespace finphase
