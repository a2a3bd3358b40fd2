#include "divprop.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "divprop/analysis.hpp"
#include "divprop/ginverse.hpp"
#include "divprop/json_io.hpp"
#include "divprop/models.hpp"
#include "divprop/propagator.hpp"
#include "divprop/reproduce.hpp"
#include "divprop/sweep.hpp"
#include "divprop/transfer.hpp"
#include "divprop/types.hpp"

using namespace divprop;

struct divprop_transfer {
  TransferMatrix t;
};
struct divprop_model {
  ModelSpec spec;
};

namespace {

thread_local std::string g_last_error;

divprop_status status_of(Errc code) {
  switch (code) {
    case Errc::ok: return DIVPROP_OK;
    case Errc::parse_error: return DIVPROP_PARSE_ERROR;
    case Errc::invalid_argument:
    case Errc::invalid_dimension:
    case Errc::invalid_b: return DIVPROP_INVALID_ARGUMENT;
    default: return DIVPROP_DOMAIN_ERROR;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Tolerances tol_of(const divprop_options* opt) {
  Tolerances tol;
  if (opt) {
    if (opt->tol_rank > 0) tol.rank = opt->tol_rank;
    if (opt->tol_psd > 0) tol.psd = opt->tol_psd;
    if (opt->tol_mono > 0) tol.mono = opt->tol_mono;
  }
  return tol;
}

unsigned long long seed_of(const divprop_options* opt) { return opt ? opt->seed : kDefaultSeed; }

int samples_of(const divprop_options* opt) {
  return opt && opt->samples > 0 ? opt->samples : 1000;
}

template <typename Fn>
divprop_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DIVPROP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DIVPROP_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown failure";
    return DIVPROP_INTERNAL_ERROR;
  }
}

}  // namespace

extern "C" {

const char* divprop_version(void) { return "0.1.0"; }

const char* divprop_last_error(void) { return g_last_error.c_str(); }

void divprop_string_free(char* s) { std::free(s); }

void divprop_default_options(divprop_options* opt) {
  if (!opt) return;
  opt->tol_rank = kTolRank;
  opt->tol_psd = kTolPsd;
  opt->tol_mono = kTolMono;
  opt->seed = kDefaultSeed;
  opt->samples = 1000;
}

divprop_status divprop_transfer_parse(const char* json, divprop_transfer** out) {
  if (!json || !out) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new divprop_transfer{transfer_from_json(parse_json(json))};
  });
}

void divprop_transfer_free(divprop_transfer* t) { delete t; }

int divprop_transfer_dim(const divprop_transfer* t) { return t ? t->t.dim : 0; }

divprop_status divprop_transfer_to_json(const divprop_transfer* t, char** out_json) {
  if (!t || !out_json) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] { *out_json = dup_string(canonical_dump(transfer_to_json(t->t))); });
}

divprop_status divprop_transfer_analyze(const divprop_transfer* t, const divprop_options* opt,
                                        char** out_json) {
  if (!t || !out_json) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] {
    MapCertificate cert = certify(t->t, tol_of(opt), samples_of(opt), seed_of(opt));
    *out_json = dup_string(canonical_dump(certificate_to_json(cert)));
  });
}

divprop_status divprop_transfer_min_choi_eig(const divprop_transfer* t, double* out) {
  if (!t || !out) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = min_choi_eigenvalue(t->t); });
}

divprop_status divprop_transfer_moore_penrose(const divprop_transfer* t, double tol_rank,
                                              divprop_transfer** out) {
  if (!t || !out) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] {
    TransferMatrix g;
    g.dim = t->t.dim;
    g.t = moore_penrose(t->t.t.cast<Complex>(), tol_rank > 0 ? tol_rank : kTolRank).real();
    *out = new divprop_transfer{g};
  });
}

divprop_status divprop_propagate(const divprop_transfer* tt, const divprop_transfer* ts,
                                 const char* rule, const divprop_options* opt, char** out_json) {
  if (!tt || !ts || !out_json) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] {
    InverseRule r = rule ? inverse_rule_from_string(rule) : InverseRule::Auto;
    PropagatorReport rep = propagate(tt->t, ts->t, r, tol_of(opt));
    *out_json = dup_string(canonical_dump(report_to_json(rep)));
  });
}

divprop_status divprop_model_parse(const char* json, divprop_model** out) {
  if (!json || !out) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new divprop_model{model_from_json(parse_json(json))}; });
}

void divprop_model_free(divprop_model* m) { delete m; }

divprop_status divprop_model_transfer_at(const divprop_model* m, double t,
                                         divprop_transfer** out) {
  if (!m || !out) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new divprop_transfer{transfer_at(m->spec, t)}; });
}

divprop_status divprop_model_propagate(const divprop_model* m, double s, double t,
                                       const char* rule, int search,
                                       const divprop_options* opt, char** out_json) {
  if (!m || !out_json) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] {
    InverseRule r = rule ? inverse_rule_from_string(rule) : InverseRule::Auto;
    PropagatorReport rep =
        propagate_family(family_of(m->spec), s, t, r, search != 0, tol_of(opt), seed_of(opt));
    *out_json = dup_string(canonical_dump(report_to_json(rep)));
  });
}

divprop_status divprop_model_sweep(const divprop_model* m, const char* quantity,
                                   const char* t_grid, const char* s_grid, const char* rule,
                                   const divprop_options* opt, char** out_csv) {
  if (!m || !quantity || !t_grid || !out_csv) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  return guarded([&] {
    SweepQuantity q = sweep_quantity_from_string(quantity);
    std::vector<double> tg = grid_points(grid_from_string(t_grid));
    std::vector<double> sg;
    if (s_grid) sg = grid_points(grid_from_string(s_grid));
    InverseRule r = rule ? inverse_rule_from_string(rule) : InverseRule::Auto;
    *out_csv = dup_string(
        sweep_csv(family_of(m->spec), q, tg, sg, r, seed_of(opt), tol_of(opt)));
  });
}

divprop_status divprop_reproduce(const char* id, const divprop_options* opt, char** out_json,
                                 char** out_summary) {
  if (!id || !out_json) {
    g_last_error = "null argument";
    return DIVPROP_INVALID_ARGUMENT;
  }
  bool ok = false;
  divprop_status st = guarded([&] {
    BatteryReport rep = run_battery(id, seed_of(opt));
    *out_json = dup_string(canonical_dump(battery_to_json(rep)));
    if (out_summary) *out_summary = dup_string(battery_summary(rep));
    ok = rep.passed();
  });
  if (st != DIVPROP_OK) return st;
  if (!ok) {
    g_last_error = "battery reported failing checks";
    return DIVPROP_CHECK_FAILED;
  }
  return DIVPROP_OK;
}

}  // extern "C"
