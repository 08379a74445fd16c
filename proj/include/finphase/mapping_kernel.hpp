#pragma once

// The mod(N)-invariant mapping kernel Delta(mu, nu) = D(mu,nu) P D(mu,nu)^dagger
// and the operator <-> phase-function correspondence it induces.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "finphase/finite_algebra.hpp"

namespace finphase {

/// n x n grid of complex values indexed by symmetric labels (mu, nu).
/// mu is the momentum-like label, nu the coordinate-like one.
class PhaseFunction {
 public:
  explicit PhaseFunction(Dimension dim)
      : dim_(dim), values_(Matrix::Zero(dim.n(), dim.n())) {}

  PhaseFunction(Dimension dim, Matrix values)
      : dim_(dim), values_(std::move(values)) {
    if (values_.rows() != dim_.n() || values_.cols() != dim_.n()) {
      throw ValidationError("PhaseFunction: grid must be n x n");
    }
  }

  const Dimension& dim() const noexcept { return dim_; }
  const Matrix& values() const noexcept { return values_; }

  Complex at(long long mu, long long nu) const {
    return values_(dim_.index(mu), dim_.index(nu));
  }
  Complex& at(long long mu, long long nu) {
    return values_(dim_.index(mu), dim_.index(nu));
  }

  double max_imag() const { return values_.imag().cwiseAbs().maxCoeff(); }
  Complex sum() const { return values_.sum(); }

  void check_same(const PhaseFunction& o) const {
    if (!(dim_ == o.dim_)) throw ValidationError("PhaseFunction: dimension mismatch");
  }

 private:
  Dimension dim_;
  Matrix values_;
};

struct FidelityValue {
  double value;
};

/// Delta(mu, nu) by conjugating the parity operator.
inline Operator kernel(const Dimension& dim, long long mu, long long nu) {
  const Operator d = displacement(dim, mu, nu);
  return d * parity(dim) * d.adjoint();
}

/// All n^2 kernels of one dimension. Up to kMaxCachedN they are built once
/// and kept; above that each access regenerates the requested kernel.
class KernelTable {
 public:
  static constexpr int kMaxCachedN = 61;

  explicit KernelTable(Dimension dim) : dim_(dim) {
    if (dim_.n() > kMaxCachedN) return;
    const int n = dim_.n();
    table_.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        table_.push_back(kernel(dim_, dim_.label_at(i), dim_.label_at(j)));
      }
    }
  }

  const Dimension& dim() const noexcept { return dim_; }
  bool cached() const noexcept { return !table_.empty(); }

  Operator at(long long mu, long long nu) const {
    if (cached()) return table_[flat(mu, nu)];
    return kernel(dim_, mu, nu);
  }

  /// Calls f(mu, nu, Delta(mu, nu)) over the grid in row-major label order.
  template <class F>
  void for_each(F&& f) const {
    const int n = dim_.n();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int mu = dim_.label_at(i);
        const int nu = dim_.label_at(j);
        if (cached()) {
          f(mu, nu, table_[static_cast<std::size_t>(i) * n + j]);
        } else {
          f(mu, nu, kernel(dim_, mu, nu));
        }
      }
    }
  }

 private:
  std::size_t flat(long long mu, long long nu) const {
    return static_cast<std::size_t>(dim_.index(mu)) * dim_.n() + dim_.index(nu);
  }

  Dimension dim_;
  std::vector<Operator> table_;
};

/// Process-wide kernel tables, one per dimension. Access is synchronised;
/// the returned table is immutable.
inline std::shared_ptr<const KernelTable> kernels(const Dimension& dim) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const KernelTable>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(dim.n()); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const KernelTable>(dim);
  std::lock_guard lock(mutex);
  return cache.try_emplace(dim.n(), std::move(table)).first->second;
}

/// Tr[A B] without forming the product.
inline Complex trace_product(const Matrix& a, const Matrix& b) {
  return a.transpose().cwiseProduct(b).sum();
}

/// O(mu, nu) = Tr[Delta(mu, nu) O].
inline PhaseFunction map_operator(const Operator& o) {
  PhaseFunction f(o.dim());
  kernels(o.dim())->for_each([&](int mu, int nu, const Operator& delta) {
    f.at(mu, nu) = trace_product(delta.matrix(), o.matrix());
  });
  return f;
}

/// O = (1/n) sum_{mu,nu} O(mu, nu) Delta(mu, nu).
inline Operator reconstruct(const PhaseFunction& f) {
  Operator o = Operator::zero(f.dim());
  kernels(f.dim())->for_each([&](int mu, int nu, const Operator& delta) {
    o.matrix() += f.at(mu, nu) * delta.matrix();
  });
  o.matrix() /= static_cast<double>(f.dim().n());
  return o;
}

inline constexpr double kDensityTol = 1e-10;

/// Throws ValidationError unless rho is Hermitian with unit trace, and,
/// when `require_psd` is set, has no eigenvalue below -tol.
inline void validate_density(const Operator& rho, bool require_psd = true,
                             double tol = kDensityTol) {
  if (!rho.is_hermitian(tol)) {
    throw ValidationError("density matrix is not Hermitian to " + std::to_string(tol));
  }
  if (std::abs(rho.trace() - 1.0) > tol) {
    throw ValidationError("density matrix trace differs from 1 by more than " +
                          std::to_string(tol));
  }
  if (require_psd) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
      throw ValidationError("density matrix has a negative eigenvalue below -" +
                            std::to_string(tol));
    }
  }
}

/// Discrete Wigner function W(mu, nu) = Tr[Delta(mu, nu) rho].
inline PhaseFunction wigner(const Operator& rho) {
  validate_density(rho, /*require_psd=*/false);
  return map_operator(rho);
}

/// Tr[A B].
inline Complex overlap(const Operator& a, const Operator& b) {
  a.check_same(b);
  return trace_product(a.matrix(), b.matrix());
}

/// (1/n) sum O(mu, nu) W(mu, nu): the mean value of O in the state whose
/// Wigner function is W. Also the phase-space form of Tr[A B].
inline Complex mean_value(const PhaseFunction& o_map, const PhaseFunction& w) {
  o_map.check_same(w);
  return o_map.values().cwiseProduct(w.values()).sum() /
         static_cast<double>(o_map.dim().n());
}

/// Tr[rho sigma] + sqrt(1 - Tr rho^2) sqrt(1 - Tr sigma^2).
inline FidelityValue fidelity(const Operator& rho, const Operator& sigma) {
  validate_density(rho);
  validate_density(sigma);
  rho.check_same(sigma);
  auto linear_entropy = [](const Operator& s) {
    double r = 1.0 - overlap(s, s).real();
    if (r < 0.0 && r >= -1e-12) r = 0.0;
    return r;
  };
  const double cross = overlap(rho, sigma).real();
  return {cross + std::sqrt(linear_entropy(rho)) * std::sqrt(linear_entropy(sigma))};
}

enum class BracketKind { commutator, anticommutator };

/// Phase-space value at (mu, nu) of [A, B] or {A, B} from the mapped
/// factors alone. Costs O(n^4) per point; the direct trace is the scalable
/// route and this exists to exhibit the sine/cosine structure.
inline Complex mapped_bracket(const PhaseFunction& a_map, const PhaseFunction& b_map,
                              BracketKind kind, long long mu, long long nu) {
  a_map.check_same(b_map);
  const Dimension& dim = a_map.dim();
  const int n = dim.n();
  std::vector<double> weight(n);
  for (int k = 0; k < n; ++k) {
    const Complex w = dim.omega_pow(k);
    weight[k] = kind == BracketKind::commutator ? w.imag() : w.real();
  }
  const long long m = dim.reduce(mu);
  const long long v = dim.reduce(nu);
  Complex acc = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const long long m1 = dim.label_at(i1);
    for (int j1 = 0; j1 < n; ++j1) {
      const long long n1 = dim.label_at(j1);
      const Complex a = a_map.values()(i1, j1);
      for (int i2 = 0; i2 < n; ++i2) {
        const long long m2 = dim.label_at(i2);
        for (int j2 = 0; j2 < n; ++j2) {
          const long long n2 = dim.label_at(j2);
          const long long e = 2 * ((m - m2) * (v - n1) - (m - m1) * (v - n2));
          acc += weight[dim.residue(e)] * a * b_map.values()(i2, j2);
        }
      }
    }
  }
  const double scale = 2.0 / (static_cast<double>(n) * n);
  return kind == BracketKind::commutator ? Complex(0.0, scale) * acc : scale * acc;
}

/// Largest deviations from the defining kernel properties for one dimension.
struct KernelPropertyReport {
  double resolution;      ///< |(1/n) sum Delta - I|
  double unit_trace;      ///< |Tr Delta - 1|
  double orthonormality;  ///< |Tr[Delta Delta'] - n delta delta|
  double triple_product;  ///< |Tr[Delta Delta' Delta''] - omega^{...}|
  long long triples_checked;
};

/// Checks every kernel and every kernel pair. Triples are exhaustive when
/// n^6 <= max_triples, otherwise `max_triples` triples are drawn with a
/// seeded generator.
inline KernelPropertyReport kernel_properties(const Dimension& dim,
                                              long long max_triples = 20000,
                                              std::uint64_t seed = 1) {
  const auto table = kernels(dim);
  const int n = dim.n();
  const int nn = n * n;
  std::vector<Operator> all;
  all.reserve(nn);
  table->for_each([&](int, int, const Operator& d) { all.push_back(d); });
  KernelPropertyReport r{0.0, 0.0, 0.0, 0.0, 0};
  Matrix sum = Matrix::Zero(n, n);
  for (int a = 0; a < nn; ++a) {
    sum += all[a].matrix();
    r.unit_trace = std::max(r.unit_trace, std::abs(all[a].trace() - 1.0));
    for (int b = 0; b < nn; ++b) {
      const double expect = a == b ? double(n) : 0.0;
      r.orthonormality = std::max(
          r.orthonormality, std::abs(trace_product(all[a].matrix(), all[b].matrix()) - expect));
    }
  }
  r.resolution =
      (sum / static_cast<double>(n) - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  auto check_triple = [&](int a, int b, int c) {
    const long long m = dim.label_at(a / n), v = dim.label_at(a % n);
    const long long m1 = dim.label_at(b / n), v1 = dim.label_at(b % n);
    const long long m2 = dim.label_at(c / n), v2 = dim.label_at(c % n);
    const Complex expect = dim.omega_pow(2 * ((m - m2) * (v - v1) - (m - m1) * (v - v2)));
    const Matrix bc = all[b].matrix() * all[c].matrix();
    r.triple_product =
        std::max(r.triple_product, std::abs(trace_product(all[a].matrix(), bc) - expect));
    ++r.triples_checked;
  };
  const long long total = static_cast<long long>(nn) * nn * nn;
  if (total <= max_triples) {
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b)
        for (int c = 0; c < nn; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, nn - 1);
    for (long long k = 0; k < max_triples; ++k) {
      const int a = pick(rng);
      const int b = pick(rng);
      check_triple(a, b, pick(rng));
    }
  }
  return r;
}

/// mapped_bracket evaluated over the full grid.
inline PhaseFunction mapped_bracket_grid(const PhaseFunction& a_map,
                                         const PhaseFunction& b_map, BracketKind kind) {
  const Dimension& dim = a_map.dim();
  PhaseFunction out(dim);
  for (int i = 0; i < dim.n(); ++i) {
    for (int j = 0; j < dim.n(); ++j) {
      out.at(dim.label_at(i), dim.label_at(j)) =
          mapped_bracket(a_map, b_map, kind, dim.label_at(i), dim.label_at(j));
    }
  }
  return out;
}

}  // namespace finphase
