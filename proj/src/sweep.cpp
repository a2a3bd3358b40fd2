#include "divprop/sweep.hpp"

#include <cstdio>
#include <sstream>

#include "divprop/analysis.hpp"
#include "divprop/linalg.hpp"
#include "divprop/rng.hpp"

namespace divprop {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

SweepQuantity sweep_quantity_from_string(const std::string& s) {
  if (s == "rank") return SweepQuantity::Rank;
  if (s == "min-choi-eig") return SweepQuantity::MinChoiEig;
  if (s == "trace-norms") return SweepQuantity::TraceNorms;
  fail(Errc::parse_error, "unknown sweep quantity: " + s);
}

std::string to_string(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::Rank: return "rank";
    case SweepQuantity::MinChoiEig: return "min-choi-eig";
    case SweepQuantity::TraceNorms: return "trace-norms";
  }
  return "?";
}

GridSpec grid_from_string(const std::string& s) {
  GridSpec g;
  std::istringstream in(s);
  char c1 = 0, c2 = 0;
  if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.steps) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof())
    fail(Errc::parse_error, "grid must be start:stop:steps, got " + s);
  if (g.steps < 1) fail(Errc::parse_error, "grid needs at least one point");
  if (g.steps == 1 && g.stop != g.start)
    fail(Errc::parse_error, "a one-point grid needs stop == start");
  if (g.steps > 1 && !(g.stop > g.start))
    fail(Errc::parse_error, "grid stop must exceed start when steps > 1");
  return g;
}

std::vector<double> grid_points(const GridSpec& g) {
  if (g.steps == 1) return {g.start};
  return linear_grid(g.start, g.stop, g.steps);
}

std::string sweep_csv(const MapFamily& fam, SweepQuantity q, const std::vector<double>& t_grid,
                      const std::vector<double>& s_grid, InverseRule rule,
                      unsigned long long seed, const Tolerances& tol) {
  if (t_grid.empty()) fail(Errc::invalid_argument, "sweep needs a nonempty grid");
  std::string out;
  switch (q) {
    case SweepQuantity::Rank: {
      out = "t,rank\n";
      for (double t : t_grid) {
        TransferMatrix m = fam.at(t);
        out += fmt(t) + "," + std::to_string(numerical_rank(m.t, tol.rank)) + "\n";
      }
      break;
    }
    case SweepQuantity::MinChoiEig: {
      if (s_grid.empty()) {
        out = "t,min_choi_eig\n";
        for (double t : t_grid)
          out += fmt(t) + "," + fmt(min_choi_eigenvalue(fam.at(t))) + "\n";
      } else {
        out = "s,t,min_choi_eig\n";
        for (double s : s_grid) {
          TransferMatrix ms = fam.at(s);
          for (double t : t_grid) {
            if (t < s) continue;
            PropagatorReport rep = propagate(fam.at(t), ms, rule, tol);
            out += fmt(s) + "," + fmt(t) + "," + fmt(rep.certificate.min_choi_eigenvalue) + "\n";
          }
        }
      }
      break;
    }
    case SweepQuantity::TraceNorms: {
      // one deterministic traceless Hermitian witness, normalized so the
      // starting trace norm is one
      Rng rng(derive_seed(seed, 0x73776565ULL));
      Matrix x = random_hermitian(rng, fam.dim, true);
      x /= trace_norm(x);
      out = "t,trace_norm\n";
      for (double t : t_grid)
        out += fmt(t) + "," + fmt(trace_norm(hermitize(apply_transfer(fam.at(t), x)))) + "\n";
      break;
    }
  }
  return out;
}

}  // namespace divprop
