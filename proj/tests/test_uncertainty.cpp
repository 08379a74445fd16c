#include <gtest/gtest.h>

#include "finphase/coherent_states.hpp"
#include "finphase/uncertainty.hpp"
#include "oracles.hpp"

using namespace finphase;

namespace {

struct OracleQP {
  Matrix q;
  Matrix p;
};

OracleQP oracle_qp(int n, double d_q, double d_p) {
  Matrix q = Matrix::Zero(n, n);
  Matrix pd = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    q(i, i) = d_q * oracle::lab(n, i);
    pd(i, i) = d_p * oracle::lab(n, i);
  }
  const Matrix f = oracle::dft(n);
  return {q, f * pd * f.adjoint()};
}

Complex tr(const Matrix& a, const Matrix& rho) { return (a * rho).trace(); }

Operator op(int n, const Matrix& m) { return {Dimension(n), m}; }

Matrix sin_cos(const Matrix& w, bool sine) {
  return sine ? Matrix((w - w.adjoint()) / Complex(0.0, 2.0)) : Matrix((w + w.adjoint()) / 2.0);
}

double one_minus_abs2(const Matrix& w, const Matrix& rho) { return 1.0 - std::norm(tr(w, rho)); }

Matrix coherent_rho(int n, int k, int t) {
  return coherent_state(Dimension(n), k, t).projector().matrix();
}

}  // namespace

TEST(ScaleParams, PresetsAndInvariants) {
  const Dimension d(7);
  const double eps = std::sqrt(2.0 * oracle::kPi / 7);
  const ScaleParams s1 = planck_preset(PresetKind::delta1, d);
  EXPECT_DOUBLE_EQ(s1.q0(), 1.0);
  EXPECT_DOUBLE_EQ(s1.p0(), 1.0);
  const ScaleParams s0 = planck_preset(PresetKind::delta0, d);
  EXPECT_NEAR(s0.q0(), 1.0 / eps, 1e-15);
  EXPECT_NEAR(s0.p0(), eps, 1e-15);
  const ScaleParams s2 = planck_preset(PresetKind::delta2, d);
  EXPECT_NEAR(s2.q0(), eps, 1e-15);
  const ScaleParams sc = planck_preset(PresetKind::scaled, d, 2.0, 1.0);
  EXPECT_NEAR(sc.d_q(), 2.0 * eps, 1e-14);
  EXPECT_NEAR(sc.d_p(), eps / 2.0, 1e-14);
  for (const ScaleParams& s : {s0, s1, s2, sc}) {
    EXPECT_NEAR(s.d_p() * s.d_q() / (2.0 * oracle::kPi * s.hbar()), 1.0 / 7, 1e-12 / 7);
    EXPECT_NEAR(s.q0() * s.p0(), s.hbar(), 1e-12);
  }
  EXPECT_THROW(planck_preset(PresetKind::scaled, d, 0.0), ValidationError);
  EXPECT_THROW(planck_preset(PresetKind::scaled, d, -1.0), ValidationError);
}

TEST(ScaleParams, SweepKeepsSpacingProduct) {
  for (int n : {3, 11, 51}) {
    const Dimension d(n);
    for (double delta : {0.0, 0.5, 1.0, 1.5, 2.0})
      for (double s : {0.5, 1.0, 2.0})
        for (double hbar : {1.0, 0.3}) {
          const ScaleParams sp = ScaleParams::from_q0(d, delta, s, hbar);
          EXPECT_NEAR(sp.d_p() * sp.d_q() / (2.0 * oracle::kPi * hbar) * n, 1.0, 1e-12);
          EXPECT_NEAR(sp.r_q(), sp.d_q() * (n - 1) / 2, 1e-12 * sp.r_q());
        }
  }
}

TEST(ScaleParams, Validation) {
  const Dimension d(5);
  EXPECT_THROW(ScaleParams(d, -0.1, 1.0, 1.0), ValidationError);
  EXPECT_THROW(ScaleParams(d, 2.1, 1.0, 1.0), ValidationError);
  EXPECT_THROW(ScaleParams(d, 1.0, 2.0, 2.0), ValidationError);
  EXPECT_THROW(ScaleParams(d, 1.0, 0.0, 1.0), ValidationError);
  EXPECT_THROW(ScaleParams(d, 1.0, 1.0, 1.0, -1.0), ValidationError);
}

TEST(QPOperators, SpectraAndMatrices) {
  const Dimension d3(3);
  const ScaleParams s3 = planck_preset(PresetKind::delta1, d3);
  const auto [q3, p3] = qp_operators(d3, s3);
  const double eps = std::sqrt(2.0 * oracle::kPi / 3);
  EXPECT_NEAR(q3.matrix()(0, 0).real(), -eps, 1e-15);
  EXPECT_NEAR(q3.matrix()(1, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(q3.matrix()(2, 2).real(), eps, 1e-15);
  for (int n : {5, 9}) {
    const Dimension d(n);
    const ScaleParams s = ScaleParams::from_q0(d, 0.5, 1.7);
    const auto [q, p] = qp_operators(d, s);
    const OracleQP o = oracle_qp(n, s.d_q(), s.d_p());
    EXPECT_LT(oracle::max_abs(q.matrix() - o.q), 1e-13);
    EXPECT_LT(oracle::max_abs(p.matrix() - o.p), 1e-13);
    EXPECT_TRUE(q.is_hermitian(1e-14));
    EXPECT_TRUE(p.is_hermitian(1e-14));
    for (int i = 0; i + 1 < n; ++i) {
      EXPECT_NEAR((q.matrix()(i + 1, i + 1) - q.matrix()(i, i)).real(), s.d_q(), 1e-13);
    }
  }
}

TEST(QPOperators, ExponentiateToSchwingerPair) {
  for (int n : {5, 7}) {
    const Dimension d(n);
    for (double delta : {0.0, 1.0, 2.0}) {
      const ScaleParams s = ScaleParams::from_q0(d, delta, 1.3, 0.8);
      const auto [q, p] = qp_operators(d, s);
      const Matrix eu = oracle::expm(Complex(0.0, s.d_p() / s.hbar()) * q.matrix());
      const Matrix ev = oracle::expm(Complex(0.0, s.d_q() / s.hbar()) * p.matrix());
      EXPECT_LT(oracle::max_abs(eu - oracle::clock(n)), 1e-12);
      EXPECT_LT(oracle::max_abs(ev - oracle::shift(n)), 1e-12);
    }
  }
}

TEST(Moments, MatchTraces) {
  const int n = 9;
  const Dimension d(n);
  const ScaleParams s = ScaleParams::from_q0(d, 0.7, 1.4);
  const OracleQP o = oracle_qp(n, s.d_q(), s.d_p());
  const Matrix rho = oracle::random_density(n, 5);
  const MomentSet m = moments(op(n, rho), s, 4);
  ASSERT_EQ(m.q.size(), 5u);
  Matrix qk = Matrix::Identity(n, n);
  Matrix pk = Matrix::Identity(n, n);
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(m.q[k], tr(qk, rho).real(), 1e-9) << "k=" << k;
    EXPECT_NEAR(m.p[k], tr(pk, rho).real(), 1e-9) << "k=" << k;
    qk = qk * o.q;
    pk = pk * o.p;
  }
  EXPECT_GE(m.q_variance(), 0.0);
  EXPECT_GE(m.p_variance(), 0.0);
}

TEST(Moments, Examples) {
  const Dimension d21(21);
  const ScaleParams s21 = planck_preset(PresetKind::delta1, d21);
  const MomentSet mix = moments(maximally_mixed(d21), s21, 2);
  EXPECT_NEAR(mix.q[1], 0.0, 1e-12);
  EXPECT_NEAR(mix.p[1], 0.0, 1e-12);
  const MomentSet vac = moments(vacuum(d21).projector(), s21, 3);
  EXPECT_NEAR(vac.q[0], 1.0, 1e-12);
  EXPECT_NEAR(vac.q[1], 0.0, 1e-12);
  EXPECT_NEAR(vac.p[1], 0.0, 1e-12);
  EXPECT_NEAR(vac.q[3], 0.0, 1e-12);
  EXPECT_NEAR(vac.p[3], 0.0, 1e-12);
  const Dimension d5(5);
  const ScaleParams s5 = planck_preset(PresetKind::delta1, d5);
  const MomentSet e = moments(basis_u(d5, 1).projector(), s5, 2);
  EXPECT_NEAR(e.q[1], s5.d_q(), 1e-14);
  EXPECT_NEAR(e.q[2], s5.d_q() * s5.d_q(), 1e-14);
  EXPECT_THROW(moments(vacuum(d5).projector(), s5, 1), ValidationError);
}

TEST(RsQP, MatchesDirectTraces) {
  const int n = 7;
  const Dimension d(n);
  const ScaleParams s = planck_preset(PresetKind::delta1, d);
  const OracleQP o = oracle_qp(n, s.d_q(), s.d_p());
  for (unsigned seed : {1u, 2u, 3u}) {
    const Matrix rho = oracle::random_density(n, seed);
    const UncertaintyReport r = rs_qp(op(n, rho), s);
    const double mq = tr(o.q, rho).real();
    const double mp = tr(o.p, rho).real();
    const double vq = tr(o.q * o.q, rho).real() - mq * mq;
    const double vp = tr(o.p * o.p, rho).real() - mp * mp;
    const double c = 0.5 * tr(o.q * o.p + o.p * o.q, rho).real() - mq * mp;
    const double b = 0.25 * std::norm(tr(o.q * o.p - o.p * o.q, rho));
    EXPECT_NEAR(r.get("V_Q"), vq, 1e-10);
    EXPECT_NEAR(r.get("V_P"), vp, 1e-10);
    EXPECT_NEAR(r.get("C_QP"), c, 1e-10);
    EXPECT_NEAR(r.lhs, vq * vp - c * c, 1e-10);
    EXPECT_NEAR(r.rhs, b, 1e-10);
    EXPECT_GE(r.slack, -1e-10);
  }
}

TEST(RsQP, Examples) {
  const Dimension d3(3);
  const ScaleParams s3 = planck_preset(PresetKind::delta1, d3);
  const UncertaintyReport e = rs_qp(basis_u(d3, 0).projector(), s3);
  EXPECT_NEAR(e.get("V_Q"), 0.0, 1e-15);
  EXPECT_NEAR(e.lhs, -e.get("C_QP") * e.get("C_QP"), 1e-15);
  EXPECT_GE(e.rhs, 0.0);
  const Dimension d21(21);
  const ScaleParams s21 = planck_preset(PresetKind::delta1, d21);
  EXPECT_GE(rs_qp(vacuum(d21).projector(), s21).slack, -1e-10);
  const UncertaintyReport mix = rs_qp(maximally_mixed(d21), s21);
  EXPECT_NEAR(mix.rhs, 0.0, 1e-12);
  EXPECT_GE(mix.lhs, 0.0);
  EXPECT_THROW(UncertaintyReport("x").get("missing"), ValidationError);
}

TEST(MappedQPBracket, AveragesReproduceTraces) {
  for (int n : {5, 7}) {
    const Dimension d(n);
    const ScaleParams s = ScaleParams::from_q0(d, 1.0, 1.0);
    const OracleQP o = oracle_qp(n, s.d_q(), s.d_p());
    const PhaseFunction comm = mapped_qp_bracket_grid(s, BracketKind::commutator);
    const PhaseFunction anti = mapped_qp_bracket_grid(s, BracketKind::anticommutator);
    EXPECT_LT(comm.values().real().cwiseAbs().maxCoeff(), 1e-15);
    for (const Matrix& rho : {Matrix(vacuum(d).projector().matrix()), oracle::random_density(n, 8)}) {
      const PhaseFunction w = wigner(op(n, rho));
      const Complex mc = (comm.values().array() * w.values().array()).sum() / double(n);
      const Complex ma = (anti.values().array() * w.values().array()).sum() / double(n);
      EXPECT_LT(std::abs(mc - tr(o.q * o.p - o.p * o.q, rho)), 1e-8);
      EXPECT_LT(std::abs(ma - tr(o.q * o.p + o.p * o.q, rho)), 1e-8);
    }
    const Complex mix = comm.sum() / double(n * n);
    EXPECT_LT(std::abs(mix), 1e-10);
  }
}

TEST(UnitaryVariances, Examples) {
  const Dimension d(7);
  const UncertaintyReport e = unitary_variances(basis_u(d, 0).projector());
  EXPECT_NEAR(e.get("V_U"), 0.0, 1e-14);
  EXPECT_NEAR(e.get("V_V"), 1.0, 1e-14);
  for (int n : {5, 21}) {
    const Dimension dn(n);
    const double k = k_func(dn, MVariant::general, 1, 0).real();
    const UncertaintyReport c = unitary_variances(coherent_state(dn, 1, -2).projector());
    EXPECT_NEAR(c.get("V_U"), 1.0 - k * k, 1e-12);
    EXPECT_NEAR(c.get("V_V"), 1.0 - k * k, 1e-12);
    EXPECT_NEAR(c.get("V_U"), one_minus_abs2(oracle::clock(n), coherent_rho(n, 1, -2)), 1e-12);
  }
}

TEST(UnitaryVariances, PhaseInvariantAndBounded) {
  const int n = 9;
  const Dimension d(n);
  const auto [u, v] = schwinger_pair(d);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Operator rho = random_pure_state(d, seed).projector();
    const double vu = unitary_variance(u, rho);
    EXPECT_NEAR(unitary_variance(u * std::polar(1.0, 0.73), rho), vu, 1e-14);
    EXPECT_GE(vu, 0.0);
    EXPECT_LE(vu, 1.0 + 1e-12);
  }
}

TEST(MassarSpindel, LocalisedStateSaturates) {
  const Dimension d(5);
  const UncertaintyReport r = massar_spindel(basis_u(d, 0).projector());
  EXPECT_NEAR(r.lhs, 0.0, 1e-14);
  EXPECT_NEAR(r.get("A"), std::tan(oracle::kPi / 5), 1e-15);
}

TEST(MassarSpindel, VacuumValues) {
  const UncertaintyReport r3 = massar_spindel(vacuum(Dimension(3)).projector());
  const Matrix rho = coherent_rho(3, 0, 0);
  const double vu = one_minus_abs2(oracle::clock(3), rho);
  const double vv = one_minus_abs2(oracle::shift(3), rho);
  const double a = std::tan(oracle::kPi / 3);
  EXPECT_NEAR(r3.lhs, (1 + 2 * a) * vu * vv + a * a * (vu + vv - 1), 1e-12);
  EXPECT_GT(r3.lhs, 1.4);
  EXPECT_LT(r3.lhs, 1.5);
  double prev_u = 1e9;
  double prev_ratio = 0.0;
  for (int n = 5; n <= 25; n += 2) {
    const UncertaintyReport r = massar_spindel(vacuum(Dimension(n)).projector());
    EXPECT_GE(r.lhs, -1e-10);
    EXPECT_LT(r.lhs, prev_u) << "n=" << n;
    prev_u = r.lhs;
    const double ratio = n * n * r.get("V_U") * r.get("V_V") / (oracle::kPi * oracle::kPi);
    EXPECT_GT(ratio, prev_ratio) << "n=" << n;
    EXPECT_LT(ratio, 1.0);
    prev_ratio = ratio;
  }
}

TEST(SinCos, OperatorIdentities) {
  for (int n : {3, 5, 7, 9}) {
    const Dimension d(n);
    const SinCosOperators s = sincos_operators(d);
    const Matrix id = Matrix::Identity(n, n);
    EXPECT_LT(oracle::max_abs((s.c_u * s.c_u + s.s_u * s.s_u).matrix() - id), 1e-12);
    EXPECT_LT(oracle::max_abs((s.c_v * s.c_v + s.s_v * s.s_v).matrix() - id), 1e-12);
    EXPECT_LT(oracle::max_abs(s.c_u.matrix() - sin_cos(oracle::clock(n), false)), 1e-15);
    EXPECT_LT(oracle::max_abs(s.s_v.matrix() - sin_cos(oracle::shift(n), true)), 1e-15);
    const Complex it(0.0, std::tan(oracle::kPi / n));
    auto comm = [](const Operator& a, const Operator& b) { return commutator(a, b).matrix(); };
    auto anti = [](const Operator& a, const Operator& b) { return anticommutator(a, b).matrix(); };
    EXPECT_LT(oracle::max_abs(comm(s.c_u, s.c_v) - it * anti(s.s_u, s.s_v)), 1e-12);
    EXPECT_LT(oracle::max_abs(comm(s.c_u, s.s_v) + it * anti(s.s_u, s.c_v)), 1e-12);
    EXPECT_LT(oracle::max_abs(comm(s.s_u, s.c_v) + it * anti(s.c_u, s.s_v)), 1e-12);
    EXPECT_LT(oracle::max_abs(comm(s.s_u, s.s_v) - it * anti(s.c_u, s.c_v)), 1e-12);
  }
}

TEST(SinCos, VacuumExamples) {
  const UncertaintyReport r3 = sincos_suite(vacuum(Dimension(3)).projector());
  EXPECT_NEAR(r3.get("U_CuSv"), r3.get("U_SuCv"), 1e-12);
  for (int n : {3, 7, 21}) {
    const UncertaintyReport r = sincos_suite(vacuum(Dimension(n)).projector());
    EXPECT_NEAR(r.get("mean_S_U"), 0.0, 1e-14);
    EXPECT_NEAR(r.get("mean_S_V"), 0.0, 1e-14);
    EXPECT_GT(r.get("mean_C_U"), 0.0);
    EXPECT_GT(r.get("mean_C_V"), 0.0);
  }
}

TEST(SinCos, RandomStateProperties) {
  for (int n : {3, 5, 7}) {
    const Dimension d(n);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Operator rho = random_pure_state(d, 1000 * n + seed).projector();
      const UncertaintyReport uv = unitary_variances(rho);
      const UncertaintyReport sc = sincos_suite(rho);
      const double vu = uv.get("V_U");
      const double vv = uv.get("V_V");
      // Each sine/cosine variance product is bounded by V_U V_V.
      for (const char* a : {"V_C_U", "V_S_U"})
        for (const char* b : {"V_C_V", "V_S_V"}) EXPECT_GE(vu * vv - sc.get(a) * sc.get(b), -1e-10);
      // Squared sine and cosine means add up to the squared modulus of <U>.
      const Complex mu = tr(oracle::clock(n), rho.matrix());
      EXPECT_NEAR(std::pow(sc.get("mean_C_U"), 2) + std::pow(sc.get("mean_S_U"), 2), std::norm(mu), 1e-12);
      // Product decomposition.
      EXPECT_NEAR(vu * vv,
                  (sc.get("V_C_U") + sc.get("V_S_U")) * (sc.get("V_C_V") + sc.get("V_S_V")), 1e-12);
      for (const char* tag : {"slack_CuCv", "slack_CuSv", "slack_SuCv", "slack_SuSv"}) {
        EXPECT_GE(sc.get(tag), -1e-10) << tag;
      }
      EXPECT_GE(sc.get("min_slack"), -1e-10);
    }
  }
}

TEST(SinCos, CoherentSlackSumIsLabelIndependent) {
  for (int n : {3, 5, 9, 21}) {
    const Dimension d(n);
    const double closed = sincos_coherent_sum(d);
    for (auto [k, t] : {std::pair{0, 0}, std::pair{1, 2}, std::pair{-d.ell(), 1}}) {
      const UncertaintyReport r = sincos_suite(coherent_state(d, k, t).projector());
      EXPECT_NEAR(r.get("sum_slack"), closed, 1e-9) << "n=" << n << " k=" << k << " t=" << t;
      EXPECT_NEAR(r.slack, closed, 1e-9);
    }
  }
}

TEST(SinCos, SlackSumTrendsToZero) {
  const double s3 = sincos_coherent_sum(Dimension(3));
  const double s51 = sincos_coherent_sum(Dimension(51));
  EXPECT_GE(s51, 0.0);
  EXPECT_LT(s51, s3);
  double prev = s3;
  for (int n = 5; n <= 51; n += 2) {
    const double s = sincos_coherent_sum(Dimension(n));
    EXPECT_GE(s, 0.0);
    EXPECT_LT(s, prev) << "n=" << n;
    prev = s;
  }
}

TEST(SinCos, AnticommutatorLowerBound) {
  // Literal form on the vacuum. For displaced states U and V are first
  // rephased so that <U> and <V> are real and positive; without that phase
  // choice the inequality fails once cos(D_p q_tau / hbar) is small.
  auto gap = [](int n, const Matrix& rho, bool rephase) {
    Matrix u = oracle::clock(n);
    Matrix v = oracle::shift(n);
    if (rephase) {
      u *= std::polar(1.0, -std::arg(tr(u, rho)));
      v *= std::polar(1.0, -std::arg(tr(v, rho)));
    }
    const Matrix cu = sin_cos(u, false);
    const Matrix cv = sin_cos(v, false);
    const double vu = one_minus_abs2(u, rho);
    const double vv = one_minus_abs2(v, rho);
    const double lhs = std::abs(0.5 * tr(cu * cv + cv * cu, rho));
    return lhs - (std::sqrt(1 - vu) * std::sqrt(1 - vv) - std::sqrt(vu * vv));
  };
  for (int n = 3; n <= 21; n += 2) {
    EXPECT_GE(gap(n, coherent_rho(n, 0, 0), false), -1e-12) << "n=" << n;
    for (auto [k, t] : {std::pair{1, -1}, std::pair{2, 1}, std::pair{-1, 3}}) {
      EXPECT_GE(gap(n, coherent_rho(n, k, t), true), -1e-12) << "n=" << n << " k=" << k << " t=" << t;
    }
  }
  EXPECT_LT(gap(7, coherent_rho(7, 2, 1), false), -1e-3);
}

TEST(CoherentTable, MatchesTraces) {
  const std::vector<std::pair<int, int>> labels = {{0, 0}, {1, 2}, {-2, 1}};
  for (int n : {5, 9}) {
    const Dimension d(n);
    const Matrix u = oracle::clock(n);
    const Matrix v = oracle::shift(n);
    const Matrix cu = sin_cos(u, false);
    const Matrix su = sin_cos(u, true);
    const Matrix cv = sin_cos(v, false);
    const Matrix sv = sin_cos(v, true);
    auto cm = [](const Matrix& a, const Matrix& b) { return Matrix(a * b - b * a); };
    const std::vector<Matrix> ops = {cu, su, cv, sv, cu * cu, su * su, cv * cv, sv * sv,
                                     cm(cu, cv), cm(cu, sv), cm(su, cv), cm(su, sv)};
    for (const ScaleParams& s : {planck_preset(PresetKind::delta1, d), planck_preset(PresetKind::delta0, d),
                                 planck_preset(PresetKind::scaled, d, 2.0, 1.0)}) {
      for (auto [k, t] : labels) {
        const Matrix rho = coherent_rho(n, k, t);
        const auto means = coherent_table_means(d, k, t, s);
        ASSERT_EQ(means.size(), ops.size());
        for (std::size_t i = 0; i < ops.size(); ++i) {
          EXPECT_LT(std::abs(means[i].second - tr(ops[i], rho)), 1e-9)
              << means[i].first << " n=" << n << " k=" << k << " t=" << t;
        }
        EXPECT_NEAR(means[4].second.real() + means[5].second.real(), 1.0, 1e-15);
      }
    }
  }
  const Dimension d5(5);
  EXPECT_EQ(coherent_table_means(d5, 0, 0, planck_preset(PresetKind::delta1, d5))[1].second, Complex(0.0));
}

TEST(Gup, HigherOrderIsCloser) {
  for (int n : {51, 101}) {
    const Dimension d(n);
    const ScaleParams s = planck_preset(PresetKind::delta1, d);
    const Operator rho = vacuum(d).projector();
    const UncertaintyReport r2 = gup_expansion(rho, s, 2);
    const UncertaintyReport r4 = gup_expansion(rho, s, 4);
    EXPECT_LT(r4.get("err_U"), r2.get("err_U"));
    EXPECT_LE(r4.get("err_U"), r2.get("err_U") / 5.0) << "n=" << n;
    EXPECT_LE(r4.get("err_V"), r2.get("err_V") / 5.0) << "n=" << n;
    EXPECT_GE(r4.slack, -1e-9);
    EXPECT_GE(r2.slack, -1e-9);
    EXPECT_NEAR(r4.get("V_U"), one_minus_abs2(oracle::clock(n), rho.matrix()), 1e-12);
  }
}

TEST(Gup, VacuumFourthOrderReduction) {
  const int n = 51;
  const Dimension d(n);
  const ScaleParams s = planck_preset(PresetKind::delta1, d);
  const Matrix rho = vacuum(d).projector().matrix();
  const OracleQP o = oracle_qp(n, s.d_q(), s.d_p());
  const double q2 = tr(o.q * o.q, rho).real();
  const double q4 = tr(o.q * o.q * o.q * o.q, rho).real();
  const double x = s.eps();
  const UncertaintyReport r2 = gup_expansion(op(n, rho), s, 2);
  const UncertaintyReport r4 = gup_expansion(op(n, rho), s, 4);
  EXPECT_NEAR(r2.get("trunc_U"), x * x * q2, 1e-12);
  EXPECT_NEAR(r4.get("trunc_U") - r2.get("trunc_U"), -std::pow(x, 4) * (q4 / 12 + q2 * q2 / 4), 1e-12);
  EXPECT_LE(r4.rhs, 0.25);
  EXPECT_THROW(gup_expansion(op(n, rho), s, 3), ValidationError);
}
