#include "divprop/discrete.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "divprop/basis.hpp"
#include "divprop/ginverse.hpp"
#include "divprop/json_io.hpp"
#include "divprop/linalg.hpp"
#include "divprop/rng.hpp"

namespace divprop {

namespace {

void check_dims(const RectTransfer& t, const char* who) {
  if (t.dim_in < 1 || t.dim_out < 1 || t.t.rows() != t.dim_out * t.dim_out ||
      t.t.cols() != t.dim_in * t.dim_in)
    fail(Errc::invalid_dimension, std::string(who) + ": inconsistent transfer shape");
}

}  // namespace

RectTransfer RectTransfer::identity(int d) {
  if (d < 1) fail(Errc::invalid_dimension, "identity: dimension must be positive");
  RectTransfer out;
  out.dim_in = out.dim_out = d;
  out.t = RealMatrix::Identity(d * d, d * d);
  return out;
}

RectTransfer rect_from_action(const std::function<Matrix(const Matrix&)>& apply, int dim_in,
                              int dim_out, double tol_herm) {
  if (dim_in < 1 || dim_out < 1)
    fail(Errc::invalid_dimension, "rect_from_action: dimensions must be positive");
  auto bin = herm_basis(dim_in);
  auto bout = herm_basis(dim_out);
  RectTransfer out;
  out.dim_in = dim_in;
  out.dim_out = dim_out;
  out.t.resize(dim_out * dim_out, dim_in * dim_in);
  for (int b = 0; b < dim_in * dim_in; ++b) {
    Matrix img = apply(bin[static_cast<std::size_t>(b)]);
    if (img.rows() != dim_out || img.cols() != dim_out)
      fail(Errc::invalid_dimension, "rect_from_action: action output has wrong shape");
    double herm_err = (img - img.adjoint()).norm();
    if (herm_err > tol_herm * std::max(1.0, img.norm()))
      fail(Errc::not_hermiticity_preserving,
           "rect_from_action: image of a Hermitian basis element is not Hermitian");
    img = hermitize(img);
    for (int a = 0; a < dim_out * dim_out; ++a)
      out.t(a, b) = (bout[static_cast<std::size_t>(a)].adjoint() * img).trace().real();
  }
  return out;
}

Matrix apply_rect(const RectTransfer& t, const Matrix& x) {
  check_dims(t, "apply_rect");
  if (x.rows() != t.dim_in || x.cols() != t.dim_in)
    fail(Errc::invalid_dimension, "apply_rect: operand has wrong shape");
  auto bin = herm_basis(t.dim_in);
  auto bout = herm_basis(t.dim_out);
  // complex coordinates extend the map linearly to non-Hermitian operands
  Vector cin(t.dim_in * t.dim_in);
  for (int a = 0; a < cin.size(); ++a)
    cin(a) = (bin[static_cast<std::size_t>(a)].adjoint() * x).trace();
  Vector cout = t.t.cast<Complex>() * cin;
  Matrix out = Matrix::Zero(t.dim_out, t.dim_out);
  for (int a = 0; a < cout.size(); ++a) out += cout(a) * bout[static_cast<std::size_t>(a)];
  return out;
}

Matrix apply_rect_extended(const RectTransfer& t, int ancilla_dim, const Matrix& x) {
  check_dims(t, "apply_rect_extended");
  if (ancilla_dim < 1) fail(Errc::invalid_dimension, "apply_rect_extended: bad ancilla dimension");
  const int din = t.dim_in, dout = t.dim_out;
  if (x.rows() != ancilla_dim * din || x.cols() != ancilla_dim * din)
    fail(Errc::invalid_dimension, "apply_rect_extended: operand has wrong shape");
  Matrix out = Matrix::Zero(ancilla_dim * dout, ancilla_dim * dout);
  for (int a = 0; a < ancilla_dim; ++a)
    for (int b = 0; b < ancilla_dim; ++b)
      out.block(a * dout, b * dout, dout, dout) =
          apply_rect(t, x.block(a * din, b * din, din, din));
  return out;
}

RectTransfer compose(const RectTransfer& after, const RectTransfer& before) {
  check_dims(after, "compose");
  check_dims(before, "compose");
  if (after.dim_in != before.dim_out)
    fail(Errc::invalid_dimension, "compose: inner dimensions do not match");
  RectTransfer out;
  out.dim_in = before.dim_in;
  out.dim_out = after.dim_out;
  out.t = after.t * before.t;
  return out;
}

RectTransfer rect_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim_in") || !j.contains("dim_out") || !j.contains("t"))
    fail(Errc::parse_error, "rect transfer JSON needs dim_in, dim_out, t");
  RectTransfer out;
  out.dim_in = j.at("dim_in").get<int>();
  out.dim_out = j.at("dim_out").get<int>();
  Matrix m = matrix_from_json(j.at("t"));
  if (m.imag().cwiseAbs().maxCoeff() > 0)
    fail(Errc::parse_error, "rect transfer JSON must be real");
  out.t = m.real();
  check_dims(out, "rect_from_json");
  return out;
}

nlohmann::json rect_to_json(const RectTransfer& t) {
  nlohmann::json j;
  j["dim_in"] = t.dim_in;
  j["dim_out"] = t.dim_out;
  j["t"] = matrix_to_json(t.t.cast<Complex>());
  return j;
}

int DiscreteFamily::source_dim() const {
  if (steps.empty()) fail(Errc::invalid_argument, "family has no steps");
  return steps.front().dim_in;
}

bool DiscreteFamily::divisible(double tol, double tol_rank) const {
  if (steps.empty()) fail(Errc::invalid_argument, "family has no steps");
  const int d = steps.front().dim_in;
  if ((steps.front().t - RealMatrix::Identity(d * d, d * d)).norm() > tol)
    fail(Errc::invalid_argument, "family must start from the identity map");
  for (std::size_t n = 0; n < steps.size(); ++n) {
    check_dims(steps[n], "divisible");
    if (steps[n].dim_in != d)
      fail(Errc::invalid_dimension, "divisible: all steps must share the source space");
  }
  // kernels must grow monotonically along the family
  for (std::size_t n = 0; n + 1 < steps.size(); ++n) {
    RealMatrix ker = kernel_basis(steps[n].t, tol_rank);
    if (ker.cols() == 0) continue;
    double resid = (steps[n + 1].t * ker).cwiseAbs().maxCoeff();
    if (resid > tol) return false;
  }
  return true;
}

DiscreteFamily discrete_family_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("steps") || !j.at("steps").is_array())
    fail(Errc::parse_error, "discrete family JSON needs a steps array");
  DiscreteFamily fam;
  for (const auto& s : j.at("steps")) fam.steps.push_back(rect_from_json(s));
  if (fam.steps.empty()) fail(Errc::parse_error, "discrete family JSON has no steps");
  return fam;
}

RealMatrix RightInverseFamily::at(const RealMatrix& w) const {
  if (kernel.cols() == 0) {
    if (w.size() != 0) fail(Errc::invalid_argument, "right inverse family has no free directions");
    return pinv;
  }
  if (w.rows() != kernel.cols() || w.cols() != pinv.cols())
    fail(Errc::invalid_argument, "right inverse parameter has wrong shape");
  return pinv + kernel * w;
}

RightInverseFamily right_inverse(const RectTransfer& t, double tol_rank) {
  check_dims(t, "right_inverse");
  RealSvd s = real_svd(t.t, tol_rank);
  if (s.rank < t.dim_out * t.dim_out)
    fail(Errc::no_right_inverse, "right_inverse: map does not cover the target space");
  RightInverseFamily fam;
  fam.pinv = s.v.leftCols(s.rank) *
             s.sing.head(s.rank).cwiseInverse().asDiagonal() *
             s.u.leftCols(s.rank).transpose();
  const int k = static_cast<int>(t.t.cols()) - s.rank;
  fam.kernel = k > 0 ? RealMatrix(s.v.rightCols(k)) : RealMatrix(t.t.cols(), 0);
  return fam;
}

RectTransfer discrete_propagator(const DiscreteFamily& fam, int i, int j, double tol_rank) {
  if (i < 0 || j < i || j >= static_cast<int>(fam.steps.size()))
    fail(Errc::invalid_argument, "discrete_propagator: need 0 <= i <= j < steps");
  RealMatrix gi = moore_penrose(fam.steps[static_cast<std::size_t>(i)].t.cast<Complex>(), tol_rank)
                      .real();
  return discrete_propagator(fam, i, j, gi, tol_rank);
}

RectTransfer discrete_propagator(const DiscreteFamily& fam, int i, int j, const RealMatrix& gi,
                                 double tol_rank) {
  if (i < 0 || j < i || j >= static_cast<int>(fam.steps.size()))
    fail(Errc::invalid_argument, "discrete_propagator: need 0 <= i <= j < steps");
  const RectTransfer& li = fam.steps[static_cast<std::size_t>(i)];
  const RectTransfer& lj = fam.steps[static_cast<std::size_t>(j)];
  check_dims(li, "discrete_propagator");
  check_dims(lj, "discrete_propagator");
  if (gi.rows() != li.t.cols() || gi.cols() != li.t.rows())
    fail(Errc::invalid_argument, "discrete_propagator: inverse has wrong shape");
  RealMatrix ker = kernel_basis(li.t, tol_rank);
  if (ker.cols() > 0) {
    double resid = (lj.t * ker).cwiseAbs().maxCoeff();
    if (resid > kTolKernel)
      fail(Errc::not_divisible,
           "discrete_propagator: kernel of the earlier step is not annihilated, residual " +
               std::to_string(resid));
  }
  RectTransfer out;
  out.dim_in = li.dim_out;
  out.dim_out = lj.dim_out;
  out.t = lj.t * gi;
  return out;
}

HelstromValue helstrom(const Ensemble2& e) {
  if (!(e.p1 >= 0.0) || !(e.p2 >= 0.0) || std::abs(e.p1 + e.p2 - 1.0) > 1e-12)
    fail(Errc::invalid_argument, "helstrom: probabilities must be nonnegative and sum to one");
  if (e.rho1.rows() == 0 || e.rho1.rows() != e.rho1.cols() || e.rho2.rows() != e.rho1.rows() ||
      e.rho2.cols() != e.rho1.rows())
    fail(Errc::invalid_dimension, "helstrom: states must be square and equal sized");
  for (const Matrix* rho : {&e.rho1, &e.rho2}) {
    if (!is_hermitian(*rho, kTolHerm)) fail(Errc::invalid_argument, "helstrom: state not Hermitian");
    if (std::abs(rho->trace().real() - 1.0) > 1e-9)
      fail(Errc::invalid_argument, "helstrom: state trace is not one");
    if (min_herm_eigenvalue(hermitize(*rho)) < -kTolPsd)
      fail(Errc::invalid_argument, "helstrom: state is not positive semidefinite");
  }
  double tn = trace_norm(e.p1 * e.rho1 - e.p2 * e.rho2);
  return HelstromValue{0.5 * tn, 0.5 * (1.0 + tn)};
}

InfoDecreasingReport info_decreasing_check(const DiscreteFamily& fam, int ancilla_dim, int samples,
                                           unsigned long long seed, double tol_mono) {
  if (fam.steps.empty()) fail(Errc::invalid_argument, "info_decreasing_check: family has no steps");
  if (ancilla_dim < 1 || samples < 1)
    fail(Errc::invalid_argument, "info_decreasing_check: need positive ancilla and samples");
  const int d = fam.source_dim();
  InfoDecreasingReport rep;
  rep.ancilla_dim = ancilla_dim;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, 0x64697363ULL + static_cast<unsigned long long>(s)));
    Matrix x = random_hermitian(rng, ancilla_dim * d, false);
    x /= x.norm();
    double prev = 0.0;
    for (std::size_t n = 0; n < fam.steps.size(); ++n) {
      Matrix y = ancilla_dim == 1 ? apply_rect(fam.steps[n], x)
                                  : apply_rect_extended(fam.steps[n], ancilla_dim, x);
      double tn = trace_norm(hermitize(y));
      if (n > 0) {
        double inc = tn - prev;
        rep.max_increase = std::max(rep.max_increase, inc);
        if (inc > tol_mono)
          rep.violations.push_back(
              {s, static_cast<int>(n) - 1, static_cast<int>(n), inc, x});
      }
      prev = tn;
    }
  }
  return rep;
}

}  // namespace divprop
