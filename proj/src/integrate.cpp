#include "divprop/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace divprop {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

RealVector integrate_ode(const std::function<RealVector(double, const RealVector&)>& f,
                         double t0, double t1, const RealVector& y0, const StepControl& ctl) {
  if (t1 == t0) return y0;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  RealVector y = y0;
  RealVector k1 = f(t, y);
  double h = dir * std::min(ctl.h_init, std::abs(t1 - t0));
  long steps = 0;

  while (dir * (t1 - t) > 0) {
    if (++steps > ctl.max_steps)
      fail(Errc::integration_failure, "integrate_ode: step limit exceeded");
    if (dir * (t + h) > dir * t1) h = t1 - t;
    if (std::abs(h) < ctl.h_min)
      fail(Errc::integration_failure, "integrate_ode: step size underflow");

    RealVector k2 = f(t + c2 * h, y + h * (a21 * k1));
    RealVector k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    RealVector k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    RealVector k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    RealVector k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    RealVector ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    RealVector k7 = f(t + h, ynew);
    RealVector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double scale = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double s = ctl.tol * (1.0 + std::max(std::abs(y(i)), std::abs(ynew(i))));
      scale = std::max(scale, std::abs(err(i)) / s);
    }
    if (scale <= 1.0) {
      t += h;
      y = std::move(ynew);
      k1 = std::move(k7);  // FSAL
    }
    const double factor =
        scale > 0 ? std::clamp(0.9 * std::pow(scale, -0.2), 0.2, 5.0) : 5.0;
    h *= factor;
  }
  return y;
}

RealMatrix integrate_transfer_ode(const std::function<RealMatrix(double)>& generator,
                                  double t0, double t1, int n, const StepControl& ctl) {
  auto rhs = [&](double t, const RealVector& y) -> RealVector {
    Eigen::Map<const RealMatrix> m(y.data(), n, n);
    RealMatrix dm = generator(t) * m;
    return Eigen::Map<RealVector>(dm.data(), n * n);
  };
  RealMatrix id = RealMatrix::Identity(n, n);
  RealVector y0 = Eigen::Map<RealVector>(id.data(), n * n);
  RealVector yT = integrate_ode(rhs, t0, t1, y0, ctl);
  return Eigen::Map<RealMatrix>(yT.data(), n, n);
}

}  // namespace divprop
