#include "divprop/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "divprop/analysis.hpp"
#include "divprop/basis.hpp"
#include "divprop/discrete.hpp"
#include "divprop/ginverse.hpp"
#include "divprop/linalg.hpp"
#include "divprop/models.hpp"
#include "divprop/propagator.hpp"
#include "divprop/rng.hpp"

namespace divprop {

namespace {

void push(BatteryReport& rep, const std::string& name, bool passed, double value, double bound,
          const std::string& detail = "") {
  rep.checks.push_back({name, passed, value, bound, detail});
}

// value must stay at or below bound
void push_le(BatteryReport& rep, const std::string& name, double value, double bound,
             const std::string& detail = "") {
  push(rep, name, value <= bound, value, bound, detail);
}

RealVector bloch_coords(const Matrix& op) {
  static const HermitianBasis basis = herm_basis(2);
  return operator_coords(op, basis).real();
}

Matrix state_from_bloch(double r1, double r2, double r3) {
  Matrix w(2, 2);
  w << Complex(1.0 + r3, 0.0), Complex(r1, -r2), Complex(r1, r2), Complex(1.0 - r3, 0.0);
  return 0.5 * w;
}

// ---- global attractor example ----

ModelSpec attractor_model() {
  GlobalAttractorModel m;
  m.t_star = 1.0;
  m.f = [](double t) { return t < 1.0 ? t : 1.0; };
  m.omega = [](double t) {
    return state_from_bloch(0.3 * std::cos(0.4 * t), -0.2, 0.4 + 0.1 * std::sin(0.3 * t));
  };
  return ModelSpec{m};
}

BatteryReport battery_ex1(unsigned long long seed) {
  BatteryReport rep;
  rep.id = "ex1";
  ModelSpec spec = attractor_model();
  MapFamily fam = family_of(spec);
  const auto& model = std::get<GlobalAttractorModel>(spec.model);
  const double s = 1.3, t = 1.8;

  // past the attractor time the map sends everything to omega(t), and the
  // spectral-rule propagator must reproduce exactly that rank-one map
  PropagatorReport r1 = propagate(fam.at(t), fam.at(s), InverseRule::Spectral);
  double diff1 = (r1.v.t - fam.at(t).t).cwiseAbs().maxCoeff();
  push_le(rep, "spectral rule reproduces the rank-one attractor map", diff1, 1e-12);
  push(rep, "spectral-rule propagator is CPTP",
       r1.certificate.trace_preserving && r1.certificate.completely_positive,
       r1.certificate.min_choi_eigenvalue, 1.0, "min Choi eigenvalue reported as value");
  push_le(rep, "spectral-rule propagator equation residual", r1.propagator_residual, 1e-12);

  // the dual-complement rule instead lands on the state-overlap propagator,
  // which is completely positive but scales trace by Tr(Y omega_s)/Tr(Y)
  RealVector wt = bloch_coords(model.omega(t));
  RealVector ws = bloch_coords(model.omega(s));
  RealMatrix expected2 = wt * ws.transpose() / ws.squaredNorm();
  PropagatorReport r2 = propagate(fam.at(t), fam.at(s), InverseRule::DualComplement);
  double diff2 = (r2.v.t - expected2).cwiseAbs().maxCoeff();
  push_le(rep, "dual-complement rule reproduces the state-overlap map", diff2, 1e-12);
  push(rep, "state-overlap propagator is CP but not TP",
       r2.certificate.completely_positive && !r2.certificate.trace_preserving,
       r2.certificate.min_choi_eigenvalue, 1.0, "min Choi eigenvalue reported as value");

  Rng rng(derive_seed(seed, 0x65783163ULL));
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double a = rng.uniform(0.2, 2.2), b = rng.uniform(0.2, 2.2), c = rng.uniform(0.2, 2.2);
    double lo = std::min({a, b, c}), hi = std::max({a, b, c});
    double mid = a + b + c - lo - hi;
    worst = std::max(worst, composition_check(fam, InverseRule::Spectral, lo, mid, hi));
    worst = std::max(worst, composition_check(fam, InverseRule::DualComplement, lo, mid, hi));
  }
  push_le(rep, "composition law holds on 20 random time triples", worst, 1e-12,
          "both inverse rules, worst residual");
  return rep;
}

// ---- Bloch-diagonal channel with one diverging decay exponent ----

ModelSpec diagonal_decay_model() {
  PauliChannelModel m;
  m.big_gamma = {[](double t) { return -std::log(1.0 - t); }, [](double t) { return t; },
                 [](double t) { return t; }};
  m.divergence = {1.0, kNever, kNever};
  return ModelSpec{m};
}

BatteryReport battery_ex2(unsigned long long /*seed*/) {
  BatteryReport rep;
  rep.id = "ex2";
  MapFamily fam = family_of(diagonal_decay_model());

  int rank_before = numerical_rank(fam.at(0.5).t, kTolRank);
  int rank_after = numerical_rank(fam.at(1.2).t, kTolRank);
  push(rep, "rank drops from 4 to 2 at the divergence time",
       rank_before == 4 && rank_after == 2, rank_after, 2.0);

  const double s = 1.2, t = 1.6;
  PropagatorReport r = propagate(fam.at(t), fam.at(s));
  RealMatrix expected = RealMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = std::exp(-2.0 * (t - s));  // ratio of the surviving decay factors
  double diff = (r.v.t - expected).cwiseAbs().maxCoeff();
  push_le(rep, "late-time propagator is the closed-form diagonal", diff, 1e-10);

  PropagatorReport re = propagate(fam.at(s), fam.at(s));
  double proj_resid = (re.v.t * re.v.t - re.v.t).norm();
  push_le(rep, "equal-time propagator is a projector", proj_resid, 1e-12);
  push(rep, "equal-time propagator is CPTP",
       re.certificate.trace_preserving && re.certificate.completely_positive,
       re.certificate.min_choi_eigenvalue, 1.0, "min Choi eigenvalue reported as value");
  return rep;
}

// ---- rank-two non-diagonalizable channel ----

ModelSpec nondiag_model() {
  NonDiagonalModel m;
  m.f = [](double t) { return t < 1.0 ? t : 1.0; };
  m.t_star = 1.0;
  return ModelSpec{m};
}

BatteryReport battery_exnon(unsigned long long seed) {
  BatteryReport rep;
  rep.id = "exnon";
  ModelSpec spec = nondiag_model();
  MapFamily fam = family_of(spec);
  const double s = 1.5;

  TransferMatrix ts = fam.at(s);
  TPInverseFamily inv = tp_inverse_family(ts);
  ParamFamily pf = propagator_family(ts, inv);
  push(rep, "equal-time propagator family has exactly two free directions",
       pf.directions.size() == 2, static_cast<double>(pf.directions.size()), 2.0);

  // all freedom must sit in the two row-1 entries above the kernel rows, and
  // the base member must be the one with those entries zero
  RealMatrix base_expected = RealMatrix::Zero(4, 4);
  base_expected(0, 0) = 1.0;
  base_expected(1, 1) = 1.0;
  double shape_resid = (pf.base.t - base_expected).cwiseAbs().maxCoeff();
  for (const RealMatrix& d : pf.directions) {
    RealMatrix off = d;
    off(1, 2) = 0.0;
    off(1, 3) = 0.0;
    shape_resid = std::max(shape_resid, off.cwiseAbs().maxCoeff());
  }
  push_le(rep, "family members differ only in the two free row entries", shape_resid, 1e-10);

  double worst = 0.0;
  for (double a : linear_grid(-2.0, 2.0, 41)) {
    for (double b : linear_grid(-2.0, 2.0, 41)) {
      TransferMatrix v;
      v.dim = 2;
      v.t = base_expected;
      v.t(1, 2) = a;
      v.t(1, 3) = b;
      double closed = 1.0 - std::sqrt(a * a + b * b + 1.0);
      double measured = 2.0 * min_choi_eigenvalue(v);
      worst = std::max(worst, std::abs(measured - closed));
    }
  }
  push_le(rep, "doubled-Choi minimum eigenvalue matches the closed form on a 41x41 grid", worst,
          1e-10);

  PropagatorReport r = propagate_family(fam, s, s, InverseRule::Auto, true, {}, seed);
  push(rep, "search verdict is unique-CPTP at equal times",
       r.uniqueness.verdict == CptpVerdict::unique_cptp, r.uniqueness.best_min_eig, 0.0,
       to_string(r.uniqueness.verdict));
  double theta_norm = r.uniqueness.theta_star.size() > 0 ? r.uniqueness.theta_star.norm() : 0.0;
  push_le(rep, "the unique completely positive member sits at the origin", theta_norm, 1e-6);

  MonotonicityReport mono =
      monotonicity_check(fam, 2, 500, linear_grid(0.05, 0.95, 19), seed);
  push(rep, "trace-norm witness shows information backflow before the rank drop",
       mono.violated() && mono.max_increase >= 1e-6, mono.max_increase, 1e-6,
       "largest trace-norm increase across one grid step");
  return rep;
}

// ---- raising/lowering/dephasing model ----

BatteryReport battery_phasecov(unsigned long long seed) {
  BatteryReport rep;
  rep.id = "phasecov";

  PhaseCovariantModel constant;
  constant.gamma_plus = [](double) { return 1.0; };
  constant.gamma_minus = [](double) { return 1.0; };
  constant.gamma_3 = [](double) { return 1.0; };
  ModelSpec cspec{constant};
  GeneratorSpec gen = phase_covariant_generator(constant.gamma_plus, constant.gamma_minus,
                                                constant.gamma_3);
  double worst = 0.0;
  for (double t : linear_grid(0.1, 2.0, 20)) {
    RealMatrix closed = transfer_at(cspec, t).t;
    RealMatrix integrated = integrate_map(gen, t).t;
    worst = std::max(worst, (closed - integrated).cwiseAbs().maxCoeff());
  }
  push_le(rep, "closed-form transfer matches time-ordered integration on 20 points", worst, 1e-6);

  PhaseCovariantModel div;
  div.gamma_plus = [](double t) { return 4.0 / (2.0 - t); };
  div.gamma_minus = [](double t) { return (2.0 - t) / 2.0; };
  div.gamma_3 = [](double t) { return 1.0 / (1.0 - t); };
  div.t1 = 1.0;
  div.t2 = 2.0;
  ModelSpec dspec{div};
  MapFamily fam = family_of(dspec);

  int r0 = numerical_rank(fam.at(0.5).t, kTolRank);
  int r1 = numerical_rank(fam.at(1.5).t, kTolRank);
  int r2 = numerical_rank(fam.at(2.4).t, kTolRank);
  push(rep, "rank drops 4 to 2 to 1 across the two divergence times",
       r0 == 4 && r1 == 2 && r2 == 1, static_cast<double>(r2), 1.0);

  const double s = 1.5;
  TPInverseFamily inv = tp_inverse_family(fam.at(s));
  push(rep, "trace-preserving inverse family has ten parameters", inv.free_count() == 10,
       static_cast<double>(inv.free_count()), 10.0);

  PhaseCovariantIntegrals ints = phase_covariant_integrals(div, s);
  double eg = std::exp(ints.big_gamma);
  double y3_expected = -eg + 2.0 * ints.g + 1.0;
  Rng rng(derive_seed(seed, 0x70686173ULL));
  double fixed_resid = 0.0;
  for (int i = 0; i < 6; ++i) {
    RealVector theta = RealVector::Zero(inv.free_count());
    if (i > 0)
      for (int j = 0; j < theta.size(); ++j) theta(j) = rng.uniform(-2.0, 2.0);
    RealMatrix g = inv.instantiate(theta);
    fixed_resid = std::max(fixed_resid, std::abs(g(3, 0) - y3_expected));
    fixed_resid = std::max(fixed_resid, std::abs(g(3, 3) - eg));
  }
  push_le(rep, "inverse family pins the two populated row entries", fixed_resid, 1e-8,
          "checked at the base point and five random parameter draws");

  PropagatorReport r = propagate_family(fam, s, s, InverseRule::Auto, true, {}, seed);
  push(rep, "search verdict is unique-CPTP at equal times",
       r.uniqueness.verdict == CptpVerdict::unique_cptp, r.uniqueness.best_min_eig, 0.0,
       to_string(r.uniqueness.verdict));
  double theta_norm = r.uniqueness.theta_star.size() > 0 ? r.uniqueness.theta_star.norm() : 0.0;
  push_le(rep, "the unique completely positive member sits at the origin", theta_norm, 1e-6);

  RealMatrix proj = RealMatrix::Zero(4, 4);
  proj(0, 0) = 1.0;
  proj(3, 0) = 1.0;
  double proj_resid = (fam.at(2.4).t - proj).cwiseAbs().maxCoeff();
  push(rep, "map equals the ground-state projector exactly past the second divergence",
       proj_resid == 0.0, proj_resid, 0.0);
  return rep;
}

// ---- trace-preserving qubit projector families ----

BatteryReport battery_projectors(unsigned long long seed) {
  BatteryReport rep;
  rep.id = "projectors";

  double worst3 = -std::numeric_limits<double>::infinity();
  bool all_projectors = true;
  auto grid = linear_grid(-2.0, 2.0, 21);
  for (double b1 : grid)
    for (double b2 : grid)
      for (double x3 : grid) {
        RealVector p(3);
        p << b1, b2, x3;
        ProjectorClassification c = classify_qubit_projector(3, p);
        worst3 = std::max(worst3, c.min_unscaled_choi_eigenvalue);
        all_projectors = all_projectors && c.is_projector && !c.completely_positive;
      }
  Rng rng(derive_seed(seed, 0x70726f6aULL));
  for (int i = 0; i < 10000; ++i) {
    RealVector p(3);
    p << 2.0 * rng.normal(), 2.0 * rng.normal(), 2.0 * rng.normal();
    ProjectorClassification c = classify_qubit_projector(3, p);
    worst3 = std::max(worst3, c.min_unscaled_choi_eigenvalue);
    all_projectors = all_projectors && c.is_projector && !c.completely_positive;
  }
  push_le(rep, "rank-3 projectors stay below the infeasibility bound on grid plus samples",
          worst3, -1.0 + 1e-9, "largest doubled-Choi minimum eigenvalue over 19261 points");
  push(rep, "every rank-3 member is a projector and none is completely positive",
       all_projectors, all_projectors ? 1.0 : 0.0, 1.0);

  double worst2 = 0.0;
  for (double g3 : grid)
    for (double x2 : grid) {
      RealVector p(4);
      p << 0.0, g3, x2, 0.0;
      ProjectorClassification c = classify_qubit_projector(2, p);
      HermEig eig = eig_herm(2.0 * transfer_to_choi(c.transfer).c);
      double root = std::sqrt(g3 * g3 + x2 * x2 + 1.0);
      RealVector expected(4);
      expected << 1.0 - root, 1.0 - root, 1.0 + root, 1.0 + root;
      worst2 = std::max(worst2, (eig.eigenvalues - expected).cwiseAbs().maxCoeff());
    }
  push_le(rep, "reduced rank-2 family has the paired closed-form spectrum", worst2, 1e-10,
          "eigenvalues of the doubled Choi matrix, each of multiplicity two");

  int correct = 0;
  {
    RealVector zero = RealVector::Zero(4);
    if (classify_qubit_projector(2, zero).completely_positive) ++correct;
    for (int axis = 0; axis < 4; ++axis)
      for (double sign : {-1.0, 1.0}) {
        RealVector p = RealVector::Zero(4);
        p(axis) = sign * 1e-3;
        if (!classify_qubit_projector(2, p).completely_positive) ++correct;
      }
  }
  push(rep, "rank-2 family is completely positive only at the origin", correct == 9,
       static_cast<double>(correct), 9.0, "origin plus eight 1e-3 perturbations");

  ProjectorClassification origin = classify_qubit_projector(2, RealVector::Zero(4));
  TransferMatrix via_kraus = kraus_to_transfer(KrausSet{origin.kraus});
  RealMatrix pinch = RealMatrix::Zero(4, 4);
  pinch(0, 0) = 1.0;
  pinch(1, 1) = 1.0;
  double kraus_resid = (via_kraus.t - pinch).cwiseAbs().maxCoeff();
  push_le(rep, "the completely positive rank-2 projector averages with one spin flip",
          kraus_resid, 1e-10, "Kraus channel compared against the closed form");

  RealVector inside(3), outside(3), edge(3);
  inside << 0.3, -0.2, 0.4;
  outside << 1.2, 0.0, 0.0;
  edge << 1.0, 0.0, 0.0;
  bool rank1_ok = classify_qubit_projector(1, inside).completely_positive &&
                  !classify_qubit_projector(1, outside).completely_positive &&
                  classify_qubit_projector(1, edge).completely_positive;
  push(rep, "rank-1 projectors are completely positive exactly on the unit ball", rank1_ok,
       rank1_ok ? 1.0 : 0.0, 1.0);
  return rep;
}

// ---- nilpotent single blocks ----

BatteryReport battery_jordan(unsigned long long /*seed*/) {
  BatteryReport rep;
  rep.id = "jordan";
  long long worst = 0;
  bool flags = true;
  for (int k = 1; k <= 8; ++k) {
    JordanCheck c = jordan_block_check(k);
    worst = std::max(worst, c.max_residual);
    flags = flags && c.transpose_is_ginverse && c.transpose_is_reflexive;
  }
  push(rep, "transpose is a reflexive generalized inverse with zero residual for sizes 1..8",
       flags && worst == 0, static_cast<double>(worst), 0.0, "integer arithmetic throughout");
  return rep;
}

// ---- dimension-changing steps ----

BatteryReport battery_discrete(unsigned long long seed) {
  BatteryReport rep;
  rep.id = "discrete";

  auto ptrace2 = [](const Matrix& x) {
    Matrix out = Matrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out(a, b) = x.block(2 * a, 2 * b, 2, 2).trace();
    return out;
  };
  RectTransfer reduce = rect_from_action(ptrace2, 4, 2);

  Rng rng(derive_seed(seed, 0x64697376ULL));
  std::vector<Matrix> post_kraus = random_kraus_channel(rng, 2, 2);
  auto post_apply = [&post_kraus](const Matrix& x) {
    Matrix out = Matrix::Zero(2, 2);
    for (const Matrix& k : post_kraus) out += k * x * k.adjoint();
    return out;
  };
  RectTransfer post = rect_from_action(post_apply, 2, 2);

  DiscreteFamily fam;
  fam.steps = {RectTransfer::identity(4), reduce, compose(post, reduce)};
  push(rep, "family of steps is divisible", fam.divisible(), fam.divisible() ? 1.0 : 0.0, 1.0);

  RightInverseFamily rinv = right_inverse(reduce);
  std::vector<RealMatrix> props;
  double id_resid = 0.0;
  for (int i = 0; i < 20; ++i) {
    RealMatrix w(rinv.kernel.cols(), 4);
    for (int r = 0; r < w.rows(); ++r)
      for (int c = 0; c < w.cols(); ++c) w(r, c) = rng.uniform(-1.0, 1.0);
    RealMatrix ri = rinv.at(w);
    id_resid = std::max(id_resid,
                        (reduce.t * ri - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff());
    props.push_back(discrete_propagator(fam, 1, 2, ri).t);
  }
  push_le(rep, "right inverses compose to the identity on the target", id_resid, 1e-10);
  double pairwise = 0.0;
  for (std::size_t i = 0; i < props.size(); ++i)
    for (std::size_t j = i + 1; j < props.size(); ++j)
      pairwise = std::max(pairwise, (props[i] - props[j]).cwiseAbs().maxCoeff());
  push_le(rep, "20 distinct right inverses give the same propagator", pairwise, 1e-11);
  double channel_resid = 0.0;
  for (const RealMatrix& p : props)
    channel_resid = std::max(channel_resid, (p - post.t).cwiseAbs().maxCoeff());
  push_le(rep, "propagator equals the downstream channel", channel_resid, 1e-10);

  Ensemble2 ens{0.6, 0.4, random_density(rng, 2), random_density(rng, 2)};
  HelstromValue base = helstrom(ens);
  push_le(rep, "discrimination outputs are mutually consistent",
          std::abs(base.guess_probability - 0.5 - base.trace_norm_term), 1e-15);
  double worst_increase = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    std::vector<Matrix> ks = random_kraus_channel(rng, 2, rng.uniform_int(2, 4));
    auto channel = [&ks](const Matrix& x) {
      Matrix out = Matrix::Zero(2, 2);
      for (const Matrix& k : ks) out += k * x * k.adjoint();
      return out;
    };
    Ensemble2 mapped{ens.p1, ens.p2, channel(ens.rho1), channel(ens.rho2)};
    worst_increase = std::max(worst_increase,
                              helstrom(mapped).trace_norm_term - base.trace_norm_term);
  }
  push_le(rep, "discrimination value is monotone under 100 random channels", worst_increase,
          1e-10);

  InfoDecreasingReport info = info_decreasing_check(fam, 2, 50, seed);
  push(rep, "trace norms never grow along the steps", !info.violated(), info.max_increase,
       kTolMono, "50 ancilla-extended Hermitian witnesses");
  return rep;
}

}  // namespace

bool BatteryReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> battery_ids() {
  return {"ex1", "ex2", "exnon", "phasecov", "projectors", "jordan", "discrete"};
}

BatteryReport run_battery(const std::string& id, unsigned long long seed) {
  if (id == "ex1") return battery_ex1(seed);
  if (id == "ex2") return battery_ex2(seed);
  if (id == "exnon") return battery_exnon(seed);
  if (id == "phasecov") return battery_phasecov(seed);
  if (id == "projectors") return battery_projectors(seed);
  if (id == "jordan") return battery_jordan(seed);
  if (id == "discrete") return battery_discrete(seed);
  fail(Errc::invalid_argument, "unknown battery id: " + id);
}

nlohmann::json battery_to_json(const BatteryReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : rep.checks) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["passed"] = c.passed;
    jc["value"] = c.value;
    jc["bound"] = c.bound;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  nlohmann::json j;
  j["id"] = rep.id;
  j["passed"] = rep.passed();
  j["checks"] = checks;
  return j;
}

std::string battery_summary(const BatteryReport& rep) {
  std::string out = "battery " + rep.id + "\n";
  for (const CheckResult& c : rep.checks) {
    char line[256];
    std::snprintf(line, sizeof(line), "  [%s] %s (value %.3g, bound %.3g)\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value, c.bound);
    out += line;
  }
  out += rep.passed() ? "  all checks passed\n" : "  FAILURES PRESENT\n";
  return out;
}

}  // namespace divprop
