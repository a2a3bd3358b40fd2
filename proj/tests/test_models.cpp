#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <divprop/analysis.hpp>
#include <divprop/ginverse.hpp>
#include <divprop/linalg.hpp>
#include <divprop/models.hpp>
#include <divprop/rng.hpp>

using namespace divprop;

namespace {

RateFn constant(double v) {
  return [v](double) { return v; };
}

Matrix bloch_state(double x, double y, double z) {
  Matrix m(2, 2);
  m << Complex(0.5 * (1 + z), 0), Complex(0.5 * x, -0.5 * y), Complex(0.5 * x, 0.5 * y),
      Complex(0.5 * (1 - z), 0);
  return m;
}

}  // namespace

TEST_CASE("the rank-2 non-diagonalizable channel") {
  TransferMatrix psi = nondiag_channel();
  CHECK(psi.t(0, 0) == 1.0);
  CHECK(psi.t(1, 3) == 1.0);
  CHECK(psi.t.cwiseAbs().sum() == 2.0);

  RealSvd s = real_svd(psi.t, kTolRank);
  CHECK(s.rank == 2);
  CHECK(std::abs(s.sing(0) - 1.0) < 1e-14);
  CHECK(std::abs(s.sing(1) - 1.0) < 1e-14);

  CHECK_THROWS_AS(spectral_decompose(psi), Error);
  try {
    spectral_decompose(psi);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_diagonalizable);
  }

  TransferMatrix from_kraus = kraus_to_transfer(KrausSet{nondiag_kraus()});
  CHECK((from_kraus.t - psi.t).cwiseAbs().maxCoeff() < 1e-12);

  MapCertificate cert = certify(psi);
  CHECK(cert.trace_preserving);
  CHECK(cert.completely_positive);
  CHECK(cert.rank == 2);
}

TEST_CASE("the global attractor family fixes its target state") {
  GlobalAttractorModel m;
  m.f = [](double t) { return t / 2.0; };
  m.t_star = 2.0;
  Matrix omega = bloch_state(0.3, -0.2, 0.4);
  m.omega = [omega](double) { return omega; };
  ModelSpec spec{m};

  TransferMatrix mid = transfer_at(spec, 0.8);
  Matrix fixed = apply_transfer(mid, omega);
  CHECK((fixed - omega).cwiseAbs().maxCoeff() < 1e-13);
  MapCertificate cert = certify(mid);
  CHECK(cert.trace_preserving);
  CHECK(cert.completely_positive);
  CHECK(cert.rank == 4);

  TransferMatrix late = transfer_at(spec, 3.0);
  CHECK(numerical_rank(late.t, kTolRank) == 1);
  Rng rng(11);
  Matrix rho = random_density(rng, 2);
  CHECK((apply_transfer(late, rho) - omega).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("pauli channel decays and freezes past a rate divergence") {
  PauliChannelModel plain;
  plain.big_gamma = {constant(0.0), constant(0.0), constant(0.0)};
  for (auto& g : plain.big_gamma) g = [](double t) { return t; };
  TransferMatrix tm = transfer_at(ModelSpec{plain}, 0.7);
  const double e = std::exp(-1.4);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(tm.t(i, i) - e) < 1e-14);

  std::array<RateFn, 3> rates = {constant(1.0), constant(1.0), constant(1.0)};
  TransferMatrix integrated = integrate_map(pauli_generator(rates), 0.7);
  CHECK((integrated.t - tm.t).cwiseAbs().maxCoeff() < 1e-7);

  PauliChannelModel div;
  div.big_gamma = {[](double t) { return -std::log(1.0 - t); }, [](double t) { return t; },
                   [](double t) { return t; }};
  div.divergence = {1.0, kNever, kNever};
  TransferMatrix after = transfer_at(ModelSpec{div}, 1.5);
  CHECK(after.t(1, 1) == std::exp(-3.0));
  CHECK(after.t(2, 2) == 0.0);  // exactly frozen, the diverged rate is never evaluated
  CHECK(after.t(3, 3) == 0.0);
  CHECK(numerical_rank(after.t, kTolRank) == 2);
  CHECK(numerical_rank(transfer_at(ModelSpec{div}, 0.5).t, kTolRank) == 4);
}

TEST_CASE("phase covariant integrals match the constant-rate closed form") {
  PhaseCovariantModel m;
  m.gamma_plus = constant(1.0);
  m.gamma_minus = constant(1.0);
  m.gamma_3 = constant(1.0);
  const double t = 0.8;
  PhaseCovariantIntegrals q = phase_covariant_integrals(m, t);
  CHECK(std::abs(q.big_gamma - t) < 1e-9);
  CHECK(std::abs(q.big_gamma_3 - t) < 1e-9);
  CHECK(std::abs(q.g - (std::exp(t) - 1.0) / 2.0) < 1e-9);

  ModelSpec spec{m};
  for (double u : {0.3, 0.9, 1.6}) {
    TransferMatrix tm = transfer_at(spec, u);
    CHECK(std::abs(tm.t(1, 1) - std::exp(-1.5 * u)) < 1e-9);
    CHECK(std::abs(tm.t(3, 3) - std::exp(-u)) < 1e-9);
    CHECK(std::abs(tm.t(3, 0)) < 1e-9);  // equal rates keep the affine part zero
    TransferMatrix integrated =
        integrate_map(phase_covariant_generator(m.gamma_plus, m.gamma_minus, m.gamma_3), u);
    CHECK((integrated.t - tm.t).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("phase covariant rank drops at the divergence times") {
  PhaseCovariantModel m;
  m.gamma_plus = [](double t) { return 4.0 / (2.0 - t); };
  m.gamma_minus = [](double t) { return (2.0 - t) / 2.0; };
  m.gamma_3 = [](double t) { return 1.0 / (1.0 - t); };
  m.t1 = 1.0;
  m.t2 = 2.0;
  ModelSpec spec{m};

  CHECK(numerical_rank(transfer_at(spec, 0.5).t, kTolRank) == 4);

  TransferMatrix mid = transfer_at(spec, 1.5);
  CHECK(mid.t.row(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(mid.t.row(2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(numerical_rank(mid.t, kTolRank) == 2);

  TransferMatrix late = transfer_at(spec, 2.4);
  RealMatrix expect = RealMatrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  expect(3, 0) = 1.0;
  CHECK((late.t - expect).cwiseAbs().maxCoeff() == 0.0);
  Rng rng(3);
  Matrix rho = random_density(rng, 2);
  Matrix out = apply_transfer(late, rho);
  Matrix vac = Matrix::Zero(2, 2);
  vac(0, 0) = 1.0;
  CHECK((out - vac).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(phase_covariant_integrals(m, 2.1), Error);
}

TEST_CASE("dephasing generator has the expected transfer matrix") {
  Matrix sz(2, 2);
  sz << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  GeneratorSpec gen;
  gen.dissipators.push_back({sz / std::sqrt(2.0), constant(1.0)});
  TransferMatrix l = gkls_transfer(gen, 0.0);
  RealMatrix expect = RealMatrix::Zero(4, 4);
  expect(1, 1) = -1.0;
  expect(2, 2) = -1.0;
  CHECK((l.t - expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("special form decomposition recomposes and uses proper rotations") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    KrausSet ch{random_kraus_channel(rng, 2, 3)};
    TransferMatrix tm = kraus_to_transfer(ch);
    SpecialFormDecomposition d = special_form_decompose(tm);
    CHECK((d.recompose().t - tm.t).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((d.r1.transpose() * d.r1 - RealMatrix::Identity(3, 3)).norm() < 1e-10);
    CHECK((d.r2.transpose() * d.r2 - RealMatrix::Identity(3, 3)).norm() < 1e-10);
    CHECK(std::abs(d.r1.determinant() - 1.0) < 1e-10);
    CHECK(std::abs(d.r2.determinant() - 1.0) < 1e-10);
    TransferMatrix canon = d.canonical();
    CHECK((canon.t.row(0) - RealMatrix::Identity(1, 4)).norm() < 1e-13);
    for (int i = 1; i < 4; ++i)
      for (int j = 1; j < 4; ++j)
        if (i != j) CHECK(std::abs(canon.t(i, j)) < 1e-10);
  }
}

TEST_CASE("trace preserving projector families by image dimension") {
  RealVector p3(3);
  p3 << 0.1, -0.2, 0.3;
  ProjectorClassification c3 = classify_qubit_projector(3, p3);
  CHECK(c3.is_projector);
  CHECK(!c3.completely_positive);
  CHECK(c3.min_unscaled_choi_eigenvalue <= -1.0 + 1e-9);
  CHECK(c3.kraus.empty());

  RealVector p2(4);
  p2 << 0.3, -0.4, 0.2, 0.5;  // (gamma2, gamma3, x2, x3)
  ProjectorClassification c2 = classify_qubit_projector(2, p2);
  CHECK(c2.is_projector);
  CHECK(!c2.completely_positive);
  RealMatrix expect = RealMatrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  expect(1, 0) = -(0.3 * 0.2 + (-0.4) * 0.5);
  expect(1, 1) = 1.0;
  expect(1, 2) = 0.3;
  expect(1, 3) = -0.4;
  expect(2, 0) = 0.2;
  expect(3, 0) = 0.5;
  CHECK((c2.transfer.t - expect).cwiseAbs().maxCoeff() < 1e-13);

  RealVector origin = RealVector::Zero(4);
  ProjectorClassification c2o = classify_qubit_projector(2, origin);
  CHECK(c2o.completely_positive);
  REQUIRE(!c2o.kraus.empty());
  TransferMatrix rebuilt = kraus_to_transfer(KrausSet{c2o.kraus});
  RealMatrix pinch = RealMatrix::Identity(4, 4);
  pinch(2, 2) = 0.0;
  pinch(3, 3) = 0.0;
  CHECK((rebuilt.t - pinch).cwiseAbs().maxCoeff() < 1e-10);

  RealVector p1(3);
  p1 << 0.3, -0.2, 0.4;
  CHECK(classify_qubit_projector(1, p1).completely_positive);
  p1 << 1.2, 0.0, 0.0;
  CHECK(!classify_qubit_projector(1, p1).completely_positive);
  p1 << 1.0, 0.0, 0.0;
  ProjectorClassification edge = classify_qubit_projector(1, p1);
  CHECK(edge.completely_positive);  // pure target state sits on the boundary
  CHECK(edge.is_projector);

  CHECK_THROWS_AS(classify_qubit_projector(2, p1), Error);
  CHECK_THROWS_AS(classify_qubit_projector(4, p1), Error);
}

TEST_CASE("models parse from json and match direct construction") {
  nlohmann::json ga = {{"model", "global_attractor"},
                       {"f", "t/2"},
                       {"t_star", 2.0},
                       {"omega", {0.3, -0.2, 0.4}}};
  ModelSpec from_json = model_from_json(ga);
  GlobalAttractorModel direct;
  direct.f = [](double t) { return t / 2.0; };
  direct.t_star = 2.0;
  Matrix omega = bloch_state(0.3, -0.2, 0.4);
  direct.omega = [omega](double) { return omega; };
  for (double t : {0.4, 1.7, 2.5})
    CHECK((transfer_at(from_json, t).t - transfer_at(ModelSpec{direct}, t).t)
              .cwiseAbs()
              .maxCoeff() < 1e-12);

  nlohmann::json pc = {{"model", "pauli"}, {"Gamma", {"t", "t", "t"}}};
  TransferMatrix pt = transfer_at(model_from_json(pc), 0.8);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(pt.t(i, i) - std::exp(-1.6)) < 1e-14);

  nlohmann::json nd = {{"model", "nondiagonal"}, {"f", "t"}, {"t_star", 1.0}};
  TransferMatrix nt = transfer_at(model_from_json(nd), 0.6);
  RealMatrix expect = 0.4 * RealMatrix::Identity(4, 4) + 0.6 * nondiag_channel().t;
  CHECK((nt.t - expect).cwiseAbs().maxCoeff() < 1e-14);

  nlohmann::json ph = {{"model", "phase_covariant"},
                       {"gamma_plus", 1.0},
                       {"gamma_minus", 1.0},
                       {"gamma_3", 1.0}};
  TransferMatrix pht = transfer_at(model_from_json(ph), 0.7);
  CHECK(std::abs(pht.t(1, 1) - std::exp(-1.05)) < 1e-9);
  CHECK(std::abs(pht.t(3, 3) - std::exp(-0.7)) < 1e-9);

  nlohmann::json bad_order = ph;
  bad_order["t1"] = 2.0;
  bad_order["t2"] = 1.0;
  CHECK_THROWS_AS(model_from_json(bad_order), Error);

  CHECK_THROWS_AS(model_from_json({{"model", "unknown"}}), Error);
  try {
    model_from_json({{"model", "unknown"}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
  CHECK_THROWS_AS(model_from_json({{"model", "nondiagonal"}}), Error);

  nlohmann::json bad_omega = ga;
  bad_omega["omega"] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(model_from_json(bad_omega), Error);
  try {
    model_from_json(bad_omega);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("rate expressions evaluate and reject malformed input") {
  CHECK(std::abs(parse_rate("1/(1-t)")(0.5) - 2.0) < 1e-15);
  CHECK(std::abs(parse_rate("-ln(1-t)")(0.5) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(parse_rate("exp(-2*t)")(0.25) - std::exp(-0.5)) < 1e-15);
  CHECK(std::abs(parse_rate("t^2-3")(2.0) - 1.0) < 1e-15);
  CHECK_THROWS_AS(parse_rate("t+"), Error);
  CHECK_THROWS_AS(parse_rate("foo(t)"), Error);
  CHECK_THROWS_AS(parse_rate(""), Error);

  RateFn tab = tabulated_rate({0.0, 1.0}, {2.0, 4.0});
  CHECK(tab(-1.0) == 2.0);
  CHECK(std::abs(tab(0.5) - 3.0) < 1e-15);
  CHECK(tab(2.0) == 4.0);

  CHECK_THROWS_AS(transfer_at(ModelSpec{NonDiagonalModel{constant(0.5), kNever}}, -0.1), Error);
}
