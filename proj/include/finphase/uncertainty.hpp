#pragma once

// Discrete coordinate and momentum operators with physical scaling, and the
// family of uncertainty bounds evaluated on density matrices: the
// Robertson-Schrodinger relation for (Q, P), the unitary variances of U and V,
// the Massar-Spindel bound, the sine/cosine suite and the GUP expansion.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "finphase/coherent_states.hpp"
#include "finphase/mapping_kernel.hpp"
#include "finphase/theta.hpp"

namespace finphase {

/// Eigenvalue spacings of Q and P. With eps = sqrt(2 pi / n):
/// d_q = eps^{2 - delta} q0, d_p = eps^delta p0, and q0 p0 = hbar.
class ScaleParams {
 public:
  static constexpr double kRelTol = 1e-12;

  ScaleParams(Dimension dim, double delta, double q0, double p0, double hbar = 1.0,
              std::string length_unit = "L_P", std::string momentum_unit = "hbar/L_P")
      : dim_(dim),
        delta_(delta),
        q0_(q0),
        p0_(p0),
        hbar_(hbar),
        length_unit_(std::move(length_unit)),
        momentum_unit_(std::move(momentum_unit)) {
    if (!(delta >= 0.0 && delta <= 2.0)) {
      throw ValidationError("ScaleParams: delta must lie in [0, 2]");
    }
    for (double v : {q0, p0, hbar}) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError("ScaleParams: q0, p0 and hbar must be positive and finite");
      }
    }
    if (std::abs(q0 * p0 - hbar) > kRelTol * hbar) {
      throw ValidationError("ScaleParams: q0 * p0 must equal hbar");
    }
  }

  /// p0 chosen as hbar / q0.
  static ScaleParams from_q0(Dimension dim, double delta, double q0, double hbar = 1.0) {
    return {dim, delta, q0, hbar / q0, hbar};
  }

  const Dimension& dim() const noexcept { return dim_; }
  double delta() const noexcept { return delta_; }
  double q0() const noexcept { return q0_; }
  double p0() const noexcept { return p0_; }
  double hbar() const noexcept { return hbar_; }
  const std::string& length_unit() const noexcept { return length_unit_; }
  const std::string& momentum_unit() const noexcept { return momentum_unit_; }

  double eps() const { return std::sqrt(2.0 * std::numbers::pi / dim_.n()); }
  double d_q() const { return std::pow(eps(), 2.0 - delta_) * q0_; }
  double d_p() const { return std::pow(eps(), delta_) * p0_; }
  double r_q() const { return dim_.ell() * d_q(); }
  double r_p() const { return dim_.ell() * d_p(); }

 private:
  Dimension dim_;
  double delta_;
  double q0_;
  double p0_;
  double hbar_;
  std::string length_unit_;
  std::string momentum_unit_;
};

enum class PresetKind { delta0, delta1, delta2, scaled };

/// Planck-unit presets with L_P = hbar = 1. `s` and `delta` are used only by
/// the scaled preset, where q0 = s L_P.
inline ScaleParams planck_preset(PresetKind kind, const Dimension& dim, double s = 1.0,
                                 double delta = 1.0) {
  const double eps = std::sqrt(2.0 * std::numbers::pi / dim.n());
  switch (kind) {
    case PresetKind::delta0:
      return {dim, 0.0, 1.0 / eps, eps};
    case PresetKind::delta1:
      return {dim, 1.0, 1.0, 1.0};
    case PresetKind::delta2:
      return {dim, 2.0, eps, 1.0 / eps};
    case PresetKind::scaled:
      if (!(s > 0.0) || !std::isfinite(s)) {
        throw ValidationError("planck_preset: scale factor s must be positive");
      }
      return {dim, delta, s, 1.0 / s};
  }
  throw ValidationError("planck_preset: unknown preset");
}

struct QPOperators {
  Operator q;
  Operator p;
};

/// Q = diag(d_q a), P = F diag(d_p b) F^dagger.
inline QPOperators qp_operators(const Dimension& dim, const ScaleParams& scale) {
  if (!(scale.dim() == dim)) throw ValidationError("qp_operators: dimension mismatch");
  const int n = dim.n();
  Eigen::VectorXcd q_diag(n);
  Eigen::VectorXcd p_diag(n);
  for (int i = 0; i < n; ++i) {
    q_diag(i) = scale.d_q() * dim.label_at(i);
    p_diag(i) = scale.d_p() * dim.label_at(i);
  }
  const Matrix f = fourier(dim).matrix();
  return {Operator(dim, Matrix(q_diag.asDiagonal())),
          Operator(dim, f * p_diag.asDiagonal() * f.adjoint())};
}

/// <Q^k> and <P^k> for k = 0..k_max.
struct MomentSet {
  std::vector<double> q;
  std::vector<double> p;

  double q_variance() const { return q.at(2) - q.at(1) * q.at(1); }
  double p_variance() const { return p.at(2) - p.at(1) * p.at(1); }
};

/// Moments from the diagonal of rho in the coordinate and momentum bases.
inline MomentSet moments(const Operator& rho, const ScaleParams& scale, int k_max) {
  validate_density(rho);
  if (k_max < 2) throw ValidationError("moments: k_max must be >= 2");
  const Dimension& dim = rho.dim();
  if (!(scale.dim() == dim)) throw ValidationError("moments: dimension mismatch");
  const Matrix f = fourier(dim).matrix();
  const Eigen::VectorXd q_prob = rho.matrix().diagonal().real();
  const Eigen::VectorXd p_prob = (f.adjoint() * rho.matrix() * f).diagonal().real();
  MomentSet m{std::vector<double>(k_max + 1, 0.0), std::vector<double>(k_max + 1, 0.0)};
  for (int i = 0; i < dim.n(); ++i) {
    const double qv = scale.d_q() * dim.label_at(i);
    const double pv = scale.d_p() * dim.label_at(i);
    double qk = 1.0;
    double pk = 1.0;
    for (int k = 0; k <= k_max; ++k) {
      m.q[k] += qk * q_prob(i);
      m.p[k] += pk * p_prob(i);
      qk *= qv;
      pk *= pv;
    }
  }
  return m;
}

/// Ordered named values plus the inequality read off them:
/// slack = lhs - rhs.
struct UncertaintyReport {
  UncertaintyReport() = default;
  explicit UncertaintyReport(std::string report_name) : name(std::move(report_name)) {}

  std::string name;
  std::vector<std::pair<std::string, double>> entries;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;

  void add(std::string key, double value) { entries.emplace_back(std::move(key), value); }

  double get(const std::string& key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return v;
    }
    throw ValidationError("UncertaintyReport '" + name + "': no entry '" + key + "'");
  }

  void set_bound(double left, double right) {
    lhs = left;
    rhs = right;
    slack = left - right;
  }
};

namespace uncertainty_detail {

inline Complex mean(const Operator& op, const Operator& rho) { return overlap(op, rho); }

struct RsTerms {
  double var_a;
  double var_b;
  double cov;
  double u;
  double bound;
};

/// Robertson-Schrodinger terms for Hermitian A, B.
inline RsTerms rs_terms(const Operator& a, const Operator& b, const Operator& rho) {
  const double ma = mean(a, rho).real();
  const double mb = mean(b, rho).real();
  const double va = mean(a * a, rho).real() - ma * ma;
  const double vb = mean(b * b, rho).real() - mb * mb;
  const double cov = 0.5 * mean(anticommutator(a, b), rho).real() - ma * mb;
  const double comm = std::abs(mean(commutator(a, b), rho));
  return {va, vb, cov, va * vb - cov * cov, 0.25 * comm * comm};
}

}  // namespace uncertainty_detail

/// Robertson-Schrodinger relation V_Q V_P - C_QP^2 >= |<[Q, P]>|^2 / 4.
inline UncertaintyReport rs_qp(const Operator& rho, const ScaleParams& scale) {
  validate_density(rho);
  const auto [q, p] = qp_operators(rho.dim(), scale);
  const auto t = uncertainty_detail::rs_terms(q, p, rho);
  UncertaintyReport r{"rs-qp"};
  r.add("V_Q", t.var_a);
  r.add("V_P", t.var_b);
  r.add("C_QP", t.cov);
  r.add("U_QP", t.u);
  r.add("bound", t.bound);
  r.set_bound(t.u, t.bound);
  return r;
}

/// Phase-space value of [Q, P] (factor 2i, sine weights) or {Q, P}
/// (factor 2, cosine weights) at (mu, nu), summed over the spectra.
inline Complex mapped_qp_bracket(const ScaleParams& scale, BracketKind kind, long long mu,
                                 long long nu) {
  const Dimension& dim = scale.dim();
  const double dpdq = scale.d_p() * scale.d_q();
  const double pm = scale.d_p() * dim.reduce(mu);
  const double qn = scale.d_q() * dim.reduce(nu);
  double acc = 0.0;
  for (int i = 0; i < dim.n(); ++i) {
    const double pe = scale.d_p() * dim.label_at(i);
    for (int j = 0; j < dim.n(); ++j) {
      const double qx = scale.d_q() * dim.label_at(j);
      const double arg = 2.0 / scale.hbar() * (pe - pm) * (qx - qn);
      acc += pe * qx * (kind == BracketKind::commutator ? std::sin(arg) : std::cos(arg));
    }
  }
  const double weight = 2.0 * dpdq / (2.0 * std::numbers::pi * scale.hbar());
  return kind == BracketKind::commutator ? Complex(0.0, weight * acc) : Complex(weight * acc);
}

inline PhaseFunction mapped_qp_bracket_grid(const ScaleParams& scale, BracketKind kind) {
  const Dimension& dim = scale.dim();
  PhaseFunction g(dim);
  for (int i = 0; i < dim.n(); ++i) {
    for (int j = 0; j < dim.n(); ++j) {
      const int mu = dim.label_at(i);
      const int nu = dim.label_at(j);
      g.at(mu, nu) = mapped_qp_bracket(scale, kind, mu, nu);
    }
  }
  return g;
}

/// 1 - |Tr[W rho]|^2 for a unitary W.
inline double unitary_variance(const Operator& w, const Operator& rho) {
  const double m = std::abs(overlap(w, rho));
  return 1.0 - m * m;
}

inline UncertaintyReport unitary_variances(const Operator& rho) {
  validate_density(rho);
  const auto [u, v] = schwinger_pair(rho.dim());
  UncertaintyReport r{"unitary-variances"};
  const double vu = unitary_variance(u, rho);
  const double vv = unitary_variance(v, rho);
  r.add("V_U", vu);
  r.add("V_V", vv);
  r.set_bound(vu * vv, 0.0);
  return r;
}

/// (1 + 2A) V_U V_V + A^2 (V_U + V_V - 1) >= 0 with A = tan(pi / n).
inline UncertaintyReport massar_spindel(const Operator& rho) {
  validate_density(rho);
  const auto [u, v] = schwinger_pair(rho.dim());
  const double vu = unitary_variance(u, rho);
  const double vv = unitary_variance(v, rho);
  const double a = std::tan(std::numbers::pi / rho.dim().n());
  const double lhs = (1.0 + 2.0 * a) * vu * vv + a * a * (vu + vv - 1.0);
  UncertaintyReport r{"massar-spindel"};
  r.add("V_U", vu);
  r.add("V_V", vv);
  r.add("A", a);
  r.add("U_UV", lhs);
  r.set_bound(lhs, 0.0);
  return r;
}

struct SinCosOperators {
  Operator c_u;
  Operator s_u;
  Operator c_v;
  Operator s_v;
};

/// C = (W + W^dagger)/2, S = (W - W^dagger)/(2i) for W = U, V.
inline SinCosOperators sincos_operators(const Dimension& dim) {
  const auto [u, v] = schwinger_pair(dim);
  const Complex half(0.5);
  const Complex minus_half_i(0.0, -0.5);
  return {(u + u.adjoint()) * half, (u - u.adjoint()) * minus_half_i,
          (v + v.adjoint()) * half, (v - v.adjoint()) * minus_half_i};
}

/// The four Robertson-Schrodinger relations for the pairs (C_U, C_V),
/// (C_U, S_V), (S_U, C_V), (S_U, S_V). Entries per pair tag XY: U_XY, cov_XY,
/// bound_XY, slack_XY. The report's lhs is the sum of the four U, its rhs the
/// sum of the four bounds, so slack is the summed slack.
inline UncertaintyReport sincos_suite(const Operator& rho) {
  validate_density(rho);
  const SinCosOperators ops = sincos_operators(rho.dim());
  UncertaintyReport r{"sincos"};
  for (const auto& [name, op] :
       {std::pair{"C_U", &ops.c_u}, {"S_U", &ops.s_u}, {"C_V", &ops.c_v}, {"S_V", &ops.s_v}}) {
    const double m = uncertainty_detail::mean(*op, rho).real();
    r.add(std::string("mean_") + name, m);
    r.add(std::string("V_") + name, uncertainty_detail::mean(*op * *op, rho).real() - m * m);
  }
  const std::pair<const char*, std::pair<const Operator*, const Operator*>> pairs[] = {
      {"CuCv", {&ops.c_u, &ops.c_v}},
      {"CuSv", {&ops.c_u, &ops.s_v}},
      {"SuCv", {&ops.s_u, &ops.c_v}},
      {"SuSv", {&ops.s_u, &ops.s_v}},
  };
  double sum_u = 0.0;
  double sum_bound = 0.0;
  double min_slack = 0.0;
  bool first = true;
  for (const auto& [tag, ab] : pairs) {
    const auto t = uncertainty_detail::rs_terms(*ab.first, *ab.second, rho);
    const std::string s(tag);
    r.add("U_" + s, t.u);
    r.add("cov_" + s, t.cov);
    r.add("bound_" + s, t.bound);
    r.add("slack_" + s, t.u - t.bound);
    sum_u += t.u;
    sum_bound += t.bound;
    min_slack = first ? t.u - t.bound : std::min(min_slack, t.u - t.bound);
    first = false;
  }
  r.add("sum_U", sum_u);
  r.add("sum_bound", sum_bound);
  r.add("sum_slack", sum_u - sum_bound);
  r.add("min_slack", min_slack);
  r.set_bound(sum_u, sum_bound);
  return r;
}

/// Closed-form total slack of the sine/cosine suite on any coherent state:
/// 1 - K(1,0)^2 - K(0,1)^2 - K(1,1)^2 + 2 cos(pi/n) K(1,0) K(0,1) K(1,1).
inline double sincos_coherent_sum(const Dimension& dim) {
  const double kp = k_func(dim, MVariant::general, 1, 0).real();
  const double kq = k_func(dim, MVariant::general, 0, 1).real();
  const double kpq = k_func(dim, MVariant::general, 1, 1).real();
  return 1.0 - kp * kp - kq * kq - kpq * kpq +
         2.0 * std::cos(std::numbers::pi / dim.n()) * kp * kq * kpq;
}

/// Closed-form sine/cosine means on |kappa, tau>, in a fixed order:
/// C_U, S_U, C_V, S_V, C_U^2, S_U^2, C_V^2, S_V^2, [C_U,C_V], [C_U,S_V],
/// [S_U,C_V], [S_U,S_V].
inline std::vector<std::pair<std::string, Complex>> coherent_table_means(
    const Dimension& dim, long long kappa, long long tau, const ScaleParams& scale) {
  if (!(scale.dim() == dim)) throw ValidationError("coherent_table_means: dimension mismatch");
  const double hbar = scale.hbar();
  const double q_tau = scale.d_q() * dim.reduce(tau);
  const double p_kappa = scale.d_p() * dim.reduce(kappa);
  const double a_u = scale.d_p() * q_tau / hbar;
  const double a_v = scale.d_q() * p_kappa / hbar;
  const double s_half = std::sin(scale.d_p() * scale.d_q() / (2.0 * hbar));
  // One label step in either direction is one eigenvalue spacing D_p or D_q.
  const double k10 = k_func(dim, MVariant::general, 1, 0).real();
  const double k01 = k_func(dim, MVariant::general, 0, 1).real();
  const double k20 = k_func(dim, MVariant::general, 2, 0).real();
  const double k02 = k_func(dim, MVariant::general, 0, 2).real();
  const double k11 = k_func(dim, MVariant::general, 1, 1).real();
  const Complex two_i(0.0, 2.0);
  return {
      {"C_U", std::cos(a_u) * k10},
      {"S_U", std::sin(a_u) * k10},
      {"C_V", std::cos(a_v) * k01},
      {"S_V", std::sin(a_v) * k01},
      {"C_U^2", 0.5 * (1.0 + std::cos(2.0 * a_u) * k20)},
      {"S_U^2", 0.5 * (1.0 - std::cos(2.0 * a_u) * k20)},
      {"C_V^2", 0.5 * (1.0 + std::cos(2.0 * a_v) * k02)},
      {"S_V^2", 0.5 * (1.0 - std::cos(2.0 * a_v) * k02)},
      {"[C_U,C_V]", two_i * s_half * std::sin(a_v) * std::sin(a_u) * k11},
      {"[C_U,S_V]", -two_i * s_half * std::cos(a_v) * std::sin(a_u) * k11},
      {"[S_U,C_V]", -two_i * s_half * std::sin(a_v) * std::cos(a_u) * k11},
      {"[S_U,S_V]", two_i * s_half * std::cos(a_v) * std::cos(a_u) * k11},
  };
}

/// Truncated small-spacing expansions of V_U and V_V in powers of x_U = D_p/hbar
/// and x_V = D_q/hbar, the exact values, their differences, and the GUP bound
/// V_Q V_P >= (hbar^2/4) {1 - [trunc_U + trunc_V]}.
inline UncertaintyReport gup_expansion(const Operator& rho, const ScaleParams& scale, int order) {
  if (order != 2 && order != 4) throw ValidationError("gup_expansion: order must be 2 or 4");
  validate_density(rho);
  const MomentSet m = moments(rho, scale, 4);
  const auto [u, v] = schwinger_pair(rho.dim());
  const double x_u = scale.d_p() / scale.hbar();
  const double x_v = scale.d_q() / scale.hbar();
  auto fourth = [](const std::vector<double>& mk) {
    return mk[4] / 12.0 + mk[2] * mk[2] / 4.0 - mk[1] * mk[3] / 3.0;
  };
  const double vq = m.q_variance();
  const double vp = m.p_variance();
  double trunc_u = x_u * x_u * vq;
  double trunc_v = x_v * x_v * vp;
  if (order == 4) {
    trunc_u -= std::pow(x_u, 4) * fourth(m.q);
    trunc_v -= std::pow(x_v, 4) * fourth(m.p);
  }
  const double vu = unitary_variance(u, rho);
  const double vv = unitary_variance(v, rho);
  const double h = scale.hbar();
  const double rhs = 0.25 * h * h * (1.0 - (trunc_u + trunc_v));
  UncertaintyReport r{"gup"};
  r.add("order", order);
  r.add("x_U", x_u);
  r.add("x_V", x_v);
  r.add("V_Q", vq);
  r.add("V_P", vp);
  r.add("V_U", vu);
  r.add("V_V", vv);
  r.add("trunc_U", trunc_u);
  r.add("trunc_V", trunc_v);
  r.add("err_U", std::abs(vu - trunc_u));
  r.add("err_V", std::abs(vv - trunc_v));
  r.add("rhs", rhs);
  r.set_bound(vq * vp, rhs);
  return r;
}

}  // namespace finphase
