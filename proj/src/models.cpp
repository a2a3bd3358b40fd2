#include "divprop/models.hpp"

#include <cmath>

#include "divprop/basis.hpp"
#include "divprop/json_io.hpp"
#include "divprop/linalg.hpp"

namespace divprop {

namespace {

double clamp_fraction(double v, double t) {
  if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
    fail(Errc::model_inconsistency,
         "mixing function out of [0,1] at t=" + std::to_string(t));
  return std::min(std::max(v, 0.0), 1.0);
}

TransferMatrix attractor_transfer(const GlobalAttractorModel& m, double t) {
  Matrix omega = m.omega(t);
  const int d = static_cast<int>(omega.rows());
  if (omega.cols() != d || d < 2)
    fail(Errc::invalid_dimension, "global attractor: omega must be a square density matrix");
  const double f = t >= m.t_star ? 1.0 : clamp_fraction(m.f(t), t);
  HermitianBasis basis = herm_basis(d);
  Vector w = operator_coords(omega, basis);
  if (w.imag().cwiseAbs().maxCoeff() > kTolHerm)
    fail(Errc::hermiticity_violation, "global attractor: omega must be Hermitian");
  TransferMatrix out;
  out.dim = d;
  out.t = (1.0 - f) * RealMatrix::Identity(d * d, d * d);
  out.t.col(0) += f * std::sqrt(double(d)) * w.real();
  return out;
}

TransferMatrix pauli_transfer(const PauliChannelModel& m, double t) {
  std::array<double, 3> big{};
  std::array<bool, 3> diverged{};
  for (int k = 0; k < 3; ++k) {
    diverged[k] = t >= m.divergence[k];
    if (!diverged[k]) {
      big[k] = m.big_gamma[k](t);
      if (!std::isfinite(big[k]))
        fail(Errc::model_inconsistency, "pauli channel: Gamma_" + std::to_string(k + 1) +
                                            " not finite before its divergence time");
    }
  }
  TransferMatrix out;
  out.dim = 2;
  out.t = RealMatrix::Zero(4, 4);
  out.t(0, 0) = 1.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    out.t(i + 1, i + 1) = (diverged[j] || diverged[k]) ? 0.0 : std::exp(-big[j] - big[k]);
  }
  return out;
}

TransferMatrix nondiag_transfer(const NonDiagonalModel& m, double t) {
  const double f = t >= m.t_star ? 1.0 : clamp_fraction(m.f(t), t);
  TransferMatrix out = nondiag_channel();
  out.t = (1.0 - f) * RealMatrix::Identity(4, 4) + f * out.t;
  return out;
}

TransferMatrix phase_covariant_transfer(const PhaseCovariantModel& m, double t) {
  TransferMatrix out;
  out.dim = 2;
  out.t = RealMatrix::Zero(4, 4);
  out.t(0, 0) = 1.0;
  if (t >= m.t2) {
    out.t(3, 0) = 1.0;  // projector onto the vacuum state
    return out;
  }
  PhaseCovariantIntegrals q = phase_covariant_integrals(m, t);
  const double decay = std::exp(-q.big_gamma);
  out.t(3, 3) = decay;
  out.t(3, 0) = 1.0 - decay * (2.0 * q.g + 1.0);
  if (t < m.t1) {
    const double coh = std::exp(-(q.big_gamma / 2.0 + q.big_gamma_3));
    out.t(1, 1) = coh;
    out.t(2, 2) = coh;
  }
  return out;
}

}  // namespace

PhaseCovariantIntegrals phase_covariant_integrals(const PhaseCovariantModel& m, double t,
                                                  const StepControl& ctl) {
  if (t > m.t2) fail(Errc::invalid_argument, "phase covariant integrals undefined past t2");
  PhaseCovariantIntegrals out{0.0, 0.0, 0.0};
  if (t <= 0) return out;
  try {
    // Gamma and G share the running e^{Gamma} factor, so integrate them as
    // one coupled system
    auto rhs = [&](double tau, const RealVector& y) {
      RealVector dy(2);
      dy(0) = 0.5 * (m.gamma_plus(tau) + m.gamma_minus(tau));
      dy(1) = 0.5 * std::exp(y(0)) * m.gamma_minus(tau);
      return dy;
    };
    RealVector y = integrate_ode(rhs, 0.0, t, RealVector::Zero(2), ctl);
    out.big_gamma = y(0);
    out.g = y(1);
    if (t < m.t1) {
      auto rhs3 = [&](double tau, const RealVector& y3) {
        (void)y3;
        RealVector dy(1);
        dy(0) = m.gamma_3(tau);
        return dy;
      };
      out.big_gamma_3 = integrate_ode(rhs3, 0.0, t, RealVector::Zero(1), ctl)(0);
    } else {
      out.big_gamma_3 = kNever;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::integration_failure)
      fail(Errc::model_inconsistency,
           std::string("phase covariant: rate integral diverges before its declared "
                       "divergence time (") +
               e.what() + ")");
    throw;
  }
  if (!std::isfinite(out.big_gamma) || !std::isfinite(out.g))
    fail(Errc::model_inconsistency,
         "phase covariant: integral not finite before its declared divergence time");
  return out;
}

TransferMatrix transfer_at(const ModelSpec& spec, double t) {
  if (t < 0) fail(Errc::invalid_argument, "transfer_at: t must be nonnegative");
  return std::visit(
      [&](const auto& m) -> TransferMatrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GlobalAttractorModel>)
          return attractor_transfer(m, t);
        else if constexpr (std::is_same_v<T, PauliChannelModel>)
          return pauli_transfer(m, t);
        else if constexpr (std::is_same_v<T, NonDiagonalModel>)
          return nondiag_transfer(m, t);
        else
          return phase_covariant_transfer(m, t);
      },
      spec.model);
}

int model_dim(const ModelSpec& spec) {
  if (const auto* g = std::get_if<GlobalAttractorModel>(&spec.model))
    return static_cast<int>(g->omega(0.0).rows());
  return 2;
}

MapFamily family_of(const ModelSpec& spec) {
  MapFamily fam;
  fam.dim = model_dim(spec);
  fam.at = [spec](double t) { return transfer_at(spec, t); };
  return fam;
}

RateFn rate_from_json(const nlohmann::json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return [v](double) { return v; };
  }
  if (j.is_string()) return parse_rate(j.get<std::string>());
  if (j.is_object() && j.contains("times") && j.contains("values"))
    return tabulated_rate(j.at("times").get<std::vector<double>>(),
                          j.at("values").get<std::vector<double>>());
  fail(Errc::parse_error, "rate must be a number, an expression string, or {times, values}");
}

namespace {

double time_or_never(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return kNever;
  if (!j.at(key).is_number()) fail(Errc::parse_error, std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

Matrix omega_from_json(const nlohmann::json& j) {
  if (j.is_array() && j.size() == 3) {
    RealVector r(3);
    for (int i = 0; i < 3; ++i) {
      if (!j[i].is_number()) fail(Errc::parse_error, "omega Bloch vector must be numeric");
      r(i) = j[i].get<double>();
    }
    if (r.norm() > 1.0 + 1e-12)
      fail(Errc::invalid_argument, "omega Bloch vector must have length <= 1");
    Matrix m(2, 2);
    m << Complex(0.5 * (1 + r(2)), 0), Complex(0.5 * r(0), -0.5 * r(1)),
        Complex(0.5 * r(0), 0.5 * r(1)), Complex(0.5 * (1 - r(2)), 0);
    return m;
  }
  return matrix_from_json(j);
}

}  // namespace

ModelSpec model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("model") || !j.at("model").is_string())
    fail(Errc::parse_error, "model JSON must be an object with a \"model\" name");
  const std::string name = j.at("model").get<std::string>();
  ModelSpec spec;
  if (name == "global_attractor") {
    GlobalAttractorModel m;
    if (!j.contains("f") || !j.contains("omega"))
      fail(Errc::parse_error, "global_attractor needs \"f\" and \"omega\"");
    m.f = rate_from_json(j.at("f"));
    m.t_star = time_or_never(j, "t_star");
    Matrix omega = omega_from_json(j.at("omega"));
    m.omega = [omega](double) { return omega; };
    spec.model = std::move(m);
  } else if (name == "pauli") {
    PauliChannelModel m;
    if (!j.contains("Gamma") || !j.at("Gamma").is_array() || j.at("Gamma").size() != 3)
      fail(Errc::parse_error, "pauli needs \"Gamma\" as a list of three rates");
    for (int k = 0; k < 3; ++k) m.big_gamma[k] = rate_from_json(j.at("Gamma")[k]);
    if (j.contains("divergence")) {
      const auto& d = j.at("divergence");
      if (!d.is_array() || d.size() != 3)
        fail(Errc::parse_error, "pauli divergence must be a list of three times");
      for (int k = 0; k < 3; ++k)
        m.divergence[k] = d[k].is_null() ? kNever : d[k].get<double>();
    }
    spec.model = std::move(m);
  } else if (name == "nondiagonal") {
    NonDiagonalModel m;
    if (!j.contains("f")) fail(Errc::parse_error, "nondiagonal needs \"f\"");
    m.f = rate_from_json(j.at("f"));
    m.t_star = time_or_never(j, "t_star");
    spec.model = std::move(m);
  } else if (name == "phase_covariant") {
    PhaseCovariantModel m;
    if (!j.contains("gamma_plus") || !j.contains("gamma_minus") || !j.contains("gamma_3"))
      fail(Errc::parse_error, "phase_covariant needs gamma_plus, gamma_minus, gamma_3");
    m.gamma_plus = rate_from_json(j.at("gamma_plus"));
    m.gamma_minus = rate_from_json(j.at("gamma_minus"));
    m.gamma_3 = rate_from_json(j.at("gamma_3"));
    m.t1 = time_or_never(j, "t1");
    m.t2 = time_or_never(j, "t2");
    if (m.t2 < m.t1) fail(Errc::invalid_argument, "phase_covariant needs t1 <= t2");
    spec.model = std::move(m);
  } else {
    fail(Errc::parse_error, "unknown model \"" + name + "\"");
  }
  return spec;
}

TransferMatrix nondiag_channel() {
  TransferMatrix out;
  out.dim = 2;
  out.t = RealMatrix::Zero(4, 4);
  out.t(0, 0) = 1.0;
  out.t(1, 3) = 1.0;
  return out;
}

std::vector<Matrix> nondiag_kraus() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix k1(2, 2), k2(2, 2);
  k1 << Complex(0, 0), Complex(-s, 0), Complex(0, 0), Complex(s, 0);
  k2 << Complex(s, 0), Complex(0, 0), Complex(s, 0), Complex(0, 0);
  return {k1, k2};
}

Matrix gkls_apply(const GeneratorSpec& gen, double t, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  if (gen.hamiltonian.size() > 0) {
    if (gen.hamiltonian.rows() != rho.rows() || !is_hermitian(gen.hamiltonian, kTolHerm))
      fail(Errc::hermiticity_violation, "gkls: hamiltonian must be Hermitian of matching size");
    const Complex i(0, 1);
    out -= i * (gen.hamiltonian * rho - rho * gen.hamiltonian);
  }
  for (const auto& dis : gen.dissipators) {
    if (dis.op.rows() != rho.rows() || dis.op.cols() != rho.cols())
      fail(Errc::invalid_dimension, "gkls: dissipator size mismatch");
    const double g = dis.rate(t);
    if (!std::isfinite(g)) fail(Errc::model_inconsistency, "gkls: rate not finite");
    Matrix gram = dis.op.adjoint() * dis.op;
    out += g * (dis.op * rho * dis.op.adjoint() - 0.5 * (gram * rho + rho * gram));
  }
  return out;
}

TransferMatrix gkls_transfer(const GeneratorSpec& gen, double t) {
  int d = 0;
  if (gen.hamiltonian.size() > 0)
    d = static_cast<int>(gen.hamiltonian.rows());
  else if (!gen.dissipators.empty())
    d = static_cast<int>(gen.dissipators.front().op.rows());
  else
    fail(Errc::invalid_argument, "gkls: empty generator has no dimension");
  return action_to_transfer([&](const Matrix& x) { return gkls_apply(gen, t, x); }, d);
}

TransferMatrix integrate_map(const GeneratorSpec& gen, double t, const StepControl& ctl) {
  if (t < 0) fail(Errc::invalid_argument, "integrate_map: t must be nonnegative");
  TransferMatrix probe = gkls_transfer(gen, 0.0);
  TransferMatrix out;
  out.dim = probe.dim;
  if (t == 0) {
    out.t = RealMatrix::Identity(probe.sdim(), probe.sdim());
    return out;
  }
  out.t = integrate_transfer_ode([&](double tau) { return gkls_transfer(gen, tau).t; }, 0.0, t,
                                 probe.sdim(), ctl);
  return out;
}

GeneratorSpec pauli_generator(std::array<RateFn, 3> rates) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << Complex(0, 0), Complex(s, 0), Complex(s, 0), Complex(0, 0);
  sy << Complex(0, 0), Complex(0, -s), Complex(0, s), Complex(0, 0);
  sz << Complex(s, 0), Complex(0, 0), Complex(0, 0), Complex(-s, 0);
  GeneratorSpec gen;
  gen.dissipators = {{sx, std::move(rates[0])}, {sy, std::move(rates[1])},
                     {sz, std::move(rates[2])}};
  return gen;
}

GeneratorSpec phase_covariant_generator(RateFn gamma_plus, RateFn gamma_minus, RateFn gamma_3) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix raise(2, 2), lower(2, 2), dephase(2, 2);
  raise << Complex(0, 0), Complex(s, 0), Complex(0, 0), Complex(0, 0);
  lower << Complex(0, 0), Complex(0, 0), Complex(s, 0), Complex(0, 0);
  dephase << Complex(s, 0), Complex(0, 0), Complex(0, 0), Complex(-s, 0);
  GeneratorSpec gen;
  gen.dissipators = {{raise, std::move(gamma_plus)},
                     {lower, std::move(gamma_minus)},
                     {dephase, std::move(gamma_3)}};
  return gen;
}

TransferMatrix SpecialFormDecomposition::canonical() const {
  TransferMatrix out;
  out.dim = 2;
  out.t = RealMatrix::Zero(4, 4);
  out.t(0, 0) = 1.0;
  out.t.block(1, 0, 3, 1) = x_canon;
  out.t.block(1, 1, 3, 3) = lambda.asDiagonal();
  return out;
}

TransferMatrix SpecialFormDecomposition::recompose() const {
  TransferMatrix out;
  out.dim = 2;
  out.t = RealMatrix::Zero(4, 4);
  out.t(0, 0) = 1.0;
  out.t.block(1, 0, 3, 1) = r1 * x_canon;
  out.t.block(1, 1, 3, 3) = r1 * lambda.asDiagonal() * r2.transpose();
  return out;
}

SpecialFormDecomposition special_form_decompose(const TransferMatrix& t, double tol) {
  if (t.dim != 2) fail(Errc::invalid_dimension, "special form decomposition is qubit-only");
  if (!t.trace_preserving(tol))
    fail(Errc::not_trace_preserving, "special form decomposition needs a TP map");
  RealMatrix delta = t.linear_block();
  Eigen::JacobiSVD<RealMatrix> svd(delta, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealMatrix u = svd.matrixU();
  RealMatrix v = svd.matrixV();
  const double du = u.determinant() < 0 ? -1.0 : 1.0;
  const double dv = v.determinant() < 0 ? -1.0 : 1.0;
  SpecialFormDecomposition out;
  out.r1 = u;
  out.r1.col(2) *= du;
  out.r2 = v;
  out.r2.col(2) *= dv;
  out.lambda = svd.singularValues();
  out.lambda(2) *= du * dv;
  out.x_canon = out.r1.transpose() * t.affine_shift();
  return out;
}

ProjectorClassification classify_qubit_projector(int rank, const RealVector& params,
                                                 double tol_psd) {
  ProjectorClassification out;
  out.rank = rank;
  out.transfer.dim = 2;
  RealMatrix& m = out.transfer.t;
  m = RealMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  if (rank == 3) {
    if (params.size() != 3)
      fail(Errc::invalid_argument, "rank-3 projector takes params (beta1, beta2, x3)");
    const double b1 = params(0), b2 = params(1), x3 = params(2);
    m(1, 0) = -b1 * x3;
    m(1, 1) = 1.0;
    m(1, 3) = b1;
    m(2, 0) = -b2 * x3;
    m(2, 2) = 1.0;
    m(2, 3) = b2;
    m(3, 0) = x3;
  } else if (rank == 2) {
    if (params.size() != 4)
      fail(Errc::invalid_argument, "rank-2 projector takes params (gamma2, gamma3, x2, x3)");
    const double g2 = params(0), g3 = params(1), x2 = params(2), x3 = params(3);
    m(1, 0) = -(g2 * x2 + g3 * x3);
    m(1, 1) = 1.0;
    m(1, 2) = g2;
    m(1, 3) = g3;
    m(2, 0) = x2;
    m(3, 0) = x3;
  } else if (rank == 1) {
    if (params.size() != 3)
      fail(Errc::invalid_argument, "rank-1 projector takes params (x1, x2, x3)");
    m(1, 0) = params(0);
    m(2, 0) = params(1);
    m(3, 0) = params(2);
  } else {
    fail(Errc::invalid_argument, "projector rank must be 1, 2, or 3");
  }
  const double scale = std::max(1.0, m.squaredNorm());
  out.is_projector = (m * m - m).norm() <= kTolResidual * scale;
  out.min_choi_eigenvalue = min_choi_eigenvalue(out.transfer);
  out.min_unscaled_choi_eigenvalue = 2.0 * out.min_choi_eigenvalue;
  out.completely_positive = out.min_choi_eigenvalue >= -tol_psd;
  if (out.completely_positive)
    out.kraus = choi_to_kraus(transfer_to_choi(out.transfer), tol_psd).ops;
  return out;
}

}  // namespace divprop
