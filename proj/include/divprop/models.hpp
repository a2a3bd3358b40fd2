#pragma once

#include <array>
#include <functional>
#include <limits>
#include <variant>
#include <vector>

#include "divprop/expr.hpp"
#include "divprop/integrate.hpp"
#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

#include <json.hpp>

namespace divprop {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

// rho -> (1-f) rho + f omega(t) Tr(rho); f saturates to exactly 1 at t_star
struct GlobalAttractorModel {
  RateFn f;
  double t_star = kNever;
  std::function<Matrix(double)> omega;  // density matrix target, may be time-dependent
};

// Bloch-diagonal channel diag(1, l1, l2, l3) with l_i = exp(-Gamma_j - Gamma_k);
// a Gamma that diverges at divergence[k] makes the other two l's exactly zero
// from that time on.
struct PauliChannelModel {
  std::array<RateFn, 3> big_gamma;  // integrated rates Gamma_k(t)
  std::array<double, 3> divergence = {kNever, kNever, kNever};
};

// rho -> (1-f) rho + f Psi(rho) with Psi the rank-2 non-diagonalizable channel
// (Bloch matrix: unit (0,0) entry plus a single (1,3) entry).
struct NonDiagonalModel {
  RateFn f;
  double t_star = kNever;
};

// raising/lowering/dephasing master equation with time-dependent rates; the
// integrated quantities Gamma, Gamma_3, G determine the closed-form transfer
// matrix. t1: Gamma_3 divergence (rank 4 -> 2); t2 >= t1: Gamma divergence
// (rank 2 -> 1, projector onto the vacuum state).
struct PhaseCovariantModel {
  RateFn gamma_plus, gamma_minus, gamma_3;
  double t1 = kNever, t2 = kNever;
};

struct ModelSpec {
  std::variant<GlobalAttractorModel, PauliChannelModel, NonDiagonalModel, PhaseCovariantModel>
      model;
};

// integrated phase-covariant quantities up to time t < t2
struct PhaseCovariantIntegrals {
  double big_gamma;    // 1/2 int (gamma_+ + gamma_-)
  double big_gamma_3;  // int gamma_3 (only valid for t < t1)
  double g;            // 1/2 int e^{Gamma} gamma_-
};
PhaseCovariantIntegrals phase_covariant_integrals(const PhaseCovariantModel& m, double t,
                                                  const StepControl& ctl = {1e-12, 1e-4});

TransferMatrix transfer_at(const ModelSpec& spec, double t);
MapFamily family_of(const ModelSpec& spec);
int model_dim(const ModelSpec& spec);

ModelSpec model_from_json(const nlohmann::json& j);
RateFn rate_from_json(const nlohmann::json& j);

// the fixed rank-2 channel used by NonDiagonalModel and its Kraus operators
TransferMatrix nondiag_channel();
std::vector<Matrix> nondiag_kraus();

// GKLS generators
struct Dissipator {
  Matrix op;
  RateFn rate;
};
struct GeneratorSpec {
  Matrix hamiltonian;  // may be empty for purely dissipative dynamics
  std::vector<Dissipator> dissipators;
};

Matrix gkls_apply(const GeneratorSpec& gen, double t, const Matrix& rho);
TransferMatrix gkls_transfer(const GeneratorSpec& gen, double t);
TransferMatrix integrate_map(const GeneratorSpec& gen, double t, const StepControl& ctl = {});

GeneratorSpec pauli_generator(std::array<RateFn, 3> rates);
GeneratorSpec phase_covariant_generator(RateFn gamma_plus, RateFn gamma_minus, RateFn gamma_3);

// qubit channel canonical form: T = R1_hat [[1,0],[x_canon, diag(lambda)]] R2_hat^T
// with R1, R2 proper rotations and signed singular values lambda
struct SpecialFormDecomposition {
  RealMatrix r1, r2;
  RealVector lambda;
  RealVector x_canon;
  TransferMatrix canonical() const;
  TransferMatrix recompose() const;
};
SpecialFormDecomposition special_form_decompose(const TransferMatrix& t,
                                                double tol = kTolResidual);

// trace-preserving qubit projector families by image dimension; params:
// rank 3 -> (beta1, beta2, x3); rank 2 -> (gamma2, gamma3, x2, x3);
// rank 1 -> (x1, x2, x3)
struct ProjectorClassification {
  int rank;
  TransferMatrix transfer;
  bool is_projector;
  double min_choi_eigenvalue;
  double min_unscaled_choi_eigenvalue;  // eigenvalue of d*Choi, the convention
                                        // the closed-form spectra refer to
  bool completely_positive;
  std::vector<Matrix> kraus;  // nonempty only when completely positive
};
ProjectorClassification classify_qubit_projector(int rank, const RealVector& params,
                                                 double tol_psd = kTolPsd);

}  // namespace divprop
