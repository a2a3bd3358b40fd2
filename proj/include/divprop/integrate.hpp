#pragma once

#include <functional>
#include <vector>

#include "divprop/types.hpp"

namespace divprop {

struct StepControl {
  double tol = 1e-9;
  double h_init = 1e-3;
  double h_min = 1e-12;
  long max_steps = 2000000;
};

// Adaptive Dormand-Prince 5(4) for a first-order real vector system
// y' = f(t, y). Returns y(t1) given y(t0) = y0.
RealVector integrate_ode(const std::function<RealVector(double, const RealVector&)>& f,
                         double t0, double t1, const RealVector& y0,
                         const StepControl& ctl = {});

// Same stepper specialised to the matrix equation T'(t) = L(t) T(t) with
// T(t0) = I, integrating column-wise as one flat system.
RealMatrix integrate_transfer_ode(const std::function<RealMatrix(double)>& generator,
                                  double t0, double t1, int n,
                                  const StepControl& ctl = {});

}  // namespace divprop
