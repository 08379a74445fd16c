#pragma once

// Modular arithmetic on the odd-dimensional label set [-l, l] and the
// Schwinger/Weyl operator family built on it. Every matrix in this library
// is written in the coordinate-like basis {|u_g>}, rows and columns ordered
// by label -l, ..., l.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "finphase/errors.hpp"

namespace finphase {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Odd Hilbert-space dimension n >= 3 together with l = (n-1)/2 and the
/// multiplicative inverse of 2 modulo n.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 3 || n % 2 == 0) {
      throw ValidationError("Dimension: n must be odd and >= 3, got " +
                            std::to_string(n));
    }
  }

  int n() const noexcept { return n_; }
  int ell() const noexcept { return (n_ - 1) / 2; }
  int inv2() const noexcept { return (n_ + 1) / 2; }

  /// Least non-negative residue of `raw` modulo n.
  int residue(long long raw) const noexcept {
    long long r = raw % n_;
    return static_cast<int>(r < 0 ? r + n_ : r);
  }

  /// Representative of `raw` in the symmetric interval [-l, l].
  int reduce(long long raw) const noexcept {
    int r = residue(raw);
    return r > ell() ? r - n_ : r;
  }

  /// Row/column index of a (raw) label.
  int index(long long label) const noexcept { return reduce(label) + ell(); }
  int label_at(int index) const noexcept { return index - ell(); }

  /// omega^k with omega = exp(2 pi i / n); k is reduced before exponentiating.
  Complex omega_pow(long long k) const {
    const double angle = 2.0 * std::numbers::pi * reduce(k) / n_;
    return {std::cos(angle), std::sin(angle)};
  }

  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  int n_;
};

/// A phase-space label stored reduced to [-l, l].
class Label {
 public:
  Label(const Dimension& dim, long long raw) : value_(dim.reduce(raw)) {}
  int value() const noexcept { return value_; }
  operator int() const noexcept { return value_; }

 private:
  int value_;
};

/// Dense n x n operator tagged with its dimension.
class Operator {
 public:
  Operator(Dimension dim, Matrix m) : dim_(dim), m_(std::move(m)) {
    if (m_.rows() != dim_.n() || m_.cols() != dim_.n()) {
      throw ValidationError("Operator: matrix is " + std::to_string(m_.rows()) +
                            "x" + std::to_string(m_.cols()) +
                            ", expected n=" + std::to_string(dim_.n()));
    }
  }

  static Operator identity(Dimension dim) {
    return {dim, Matrix::Identity(dim.n(), dim.n())};
  }
  static Operator zero(Dimension dim) {
    return {dim, Matrix::Zero(dim.n(), dim.n())};
  }

  const Dimension& dim() const noexcept { return dim_; }
  const Matrix& matrix() const noexcept { return m_; }
  Matrix& matrix() noexcept { return m_; }

  /// Matrix element <u_row| O |u_col> addressed by labels.
  Complex at(long long row, long long col) const {
    return m_(dim_.index(row), dim_.index(col));
  }

  Operator adjoint() const { return {dim_, m_.adjoint()}; }
  Complex trace() const { return m_.trace(); }

  bool is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
  bool is_unitary(double tol) const {
    const Matrix eye = Matrix::Identity(dim_.n(), dim_.n());
    return (m_ * m_.adjoint() - eye).cwiseAbs().maxCoeff() <= tol &&
           (m_.adjoint() * m_ - eye).cwiseAbs().maxCoeff() <= tol;
  }

  Operator& operator+=(const Operator& o) {
    check_same(o);
    m_ += o.m_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    check_same(o);
    m_ -= o.m_;
    return *this;
  }
  Operator& operator*=(Complex s) {
    m_ *= s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b) {
    a.check_same(b);
    return {a.dim_, a.m_ * b.m_};
  }

  void check_same(const Operator& o) const {
    if (!(dim_ == o.dim_)) {
      throw ValidationError("dimension mismatch: n=" + std::to_string(dim_.n()) +
                            " vs n=" + std::to_string(o.dim_.n()));
    }
  }

 private:
  Dimension dim_;
  Matrix m_;
};

inline double max_abs_diff(const Operator& a, const Operator& b) {
  a.check_same(b);
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

inline Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}
inline Operator anticommutator(const Operator& a, const Operator& b) {
  return a * b + b * a;
}

/// {2^-1 eta xi}: the least non-negative x with 2x = eta*xi (mod n).
inline int half_phase(const Dimension& dim, long long eta, long long xi) {
  const long long e = dim.reduce(eta);
  const long long x = dim.reduce(xi);
  return dim.residue(static_cast<long long>(dim.inv2()) * dim.residue(e * x));
}

struct SchwingerPair {
  Operator u;
  Operator v;
};

/// U = diag(omega^g); V|u_a> = |u_{a-1}>.
inline SchwingerPair schwinger_pair(const Dimension& dim) {
  const int n = dim.n();
  Matrix u = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int g = dim.label_at(i);
    u(i, i) = dim.omega_pow(g);
    v(dim.index(g - 1), i) = 1.0;
  }
  return {Operator(dim, std::move(u)), Operator(dim, std::move(v))};
}

/// D(eta, xi) = omega^{-{2^-1 eta xi}} U^eta V^{-xi}, assembled directly as
/// the monomial matrix sum_g omega^{-h + g eta} |u_g><u_{g-xi}|.
inline Operator displacement(const Dimension& dim, long long eta, long long xi) {
  const int n = dim.n();
  const long long e = dim.reduce(eta);
  const long long x = dim.reduce(xi);
  const int h = half_phase(dim, e, x);
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const long long g = dim.label_at(i);
    d(i, dim.index(g - x)) = dim.omega_pow(g * e - h);
  }
  return {dim, std::move(d)};
}

/// Parity: sum_k |u_{-k}><u_k|.
inline Operator parity(const Dimension& dim) {
  const int n = dim.n();
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) p(dim.index(-dim.label_at(i)), i) = 1.0;
  return {dim, std::move(p)};
}

/// Discrete Fourier operator, entry (a, b) = omega^{ab} / sqrt(n). Its
/// columns are the momentum-like eigenvectors |v_b> in the u-basis.
inline Operator fourier(const Dimension& dim) {
  const int n = dim.n();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix f(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      f(i, j) = norm * dim.omega_pow(static_cast<long long>(dim.label_at(i)) *
                                     dim.label_at(j));
    }
  }
  return {dim, std::move(f)};
}

}  // namespace finphase
