#pragma once

#include <string>
#include <vector>

#include "divprop/propagator.hpp"
#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

namespace divprop {

enum class SweepQuantity { Rank, MinChoiEig, TraceNorms };
SweepQuantity sweep_quantity_from_string(const std::string& s);
std::string to_string(SweepQuantity q);

struct GridSpec {
  double start = 0.0, stop = 0.0;
  int steps = 1;
};
GridSpec grid_from_string(const std::string& s);
std::vector<double> grid_points(const GridSpec& g);

// One CSV row per grid point. Rank and trace-norm sweeps walk the t grid;
// a min-choi-eig sweep with a nonempty s grid walks propagators over all
// pairs s <= t, otherwise the maps themselves.
std::string sweep_csv(const MapFamily& fam, SweepQuantity q, const std::vector<double>& t_grid,
                      const std::vector<double>& s_grid = {}, InverseRule rule = InverseRule::Auto,
                      unsigned long long seed = kDefaultSeed, const Tolerances& tol = {});

}  // namespace divprop
