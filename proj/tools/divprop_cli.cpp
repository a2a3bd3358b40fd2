// divprop: construct and certify propagators of divisible dynamical maps.
// Talks to the library exclusively through the C interface.

#include <divprop.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

int exit_code(divprop_status st) {
  switch (st) {
    case DIVPROP_OK: return 0;
    case DIVPROP_PARSE_ERROR:
    case DIVPROP_INVALID_ARGUMENT: return 2;
    case DIVPROP_CHECK_FAILED: return 4;
    default: return 3;
  }
}

[[noreturn]] void die(int code, const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(code);
}

void report_failure(divprop_status st) { die(exit_code(st), divprop_last_error()); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(2, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) die(2, "cannot write " + out_path);
  out << text;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  divprop_string_free(s);
  return out;
}

unsigned long long resolve_seed(bool seed_given, unsigned long long flag_value) {
  if (seed_given) return flag_value;
  if (const char* env = std::getenv("DIVPROP_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') die(2, std::string("DIVPROP_SEED is not an integer: ") + env);
    return v;
  }
  return 42ULL;
}

const std::vector<std::string> kBatteryIds = {"ex1",        "ex2",    "exnon",   "phasecov",
                                              "projectors", "jordan", "discrete"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"propagators for divisible dynamical maps: construction, certification, sweeps"};
  app.require_subcommand(1);

  double tol_rank = 0.0, tol_psd = 0.0, tol_mono = 0.0;
  unsigned long long seed = 0;
  int samples = 0;
  std::string out_path, format;
  app.add_option("--tol-rank", tol_rank, "numerical rank tolerance (default 1e-10)");
  app.add_option("--tol-psd", tol_psd, "positive semidefiniteness tolerance (default 1e-9)");
  app.add_option("--tol-mono", tol_mono, "monotonicity tolerance (default 1e-8)");
  auto* seed_opt =
      app.add_option("--seed", seed, "RNG seed; falls back to DIVPROP_SEED, then 42");
  app.add_option("--samples", samples, "sample count for statistical checks");
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "certify a transfer matrix from a JSON file");
  analyze->add_option("path", analyze_path, "transfer-matrix JSON file")->required();
  analyze->fallthrough();

  std::string prop_path, rule = "auto";
  double s_time = 0.0, t_time = 0.0;
  bool search = false;
  auto* propagate = app.add_subcommand("propagate", "build and certify a propagator V_{t,s}");
  propagate->add_option("model", prop_path, "model JSON file")->required();
  propagate->add_option("--s", s_time, "earlier time")->required();
  propagate->add_option("--t", t_time, "later time")->required();
  propagate->add_option("--rule", rule, "generalized-inverse rule")
      ->check(CLI::IsMember({"auto", "spectral", "moore_penrose", "mp", "dual_complement",
                             "dual", "kernel_complement", "kernel"}));
  propagate->add_flag("--search", search,
                      "classify the trace-preserving propagator family for CPTP members");
  propagate->fallthrough();

  std::string repro_id;
  auto* reproduce =
      app.add_subcommand("reproduce", "run a reproduction battery and report pass/fail");
  reproduce
      ->add_option("id", repro_id,
                   "ex1, ex2, exnon, phasecov, projectors, jordan, discrete, or all")
      ->required();
  reproduce->fallthrough();

  std::string sweep_path, quantity, grid, grid_s;
  std::string sweep_rule = "auto";
  auto* sweep = app.add_subcommand("sweep", "sweep a quantity over a time grid to CSV");
  sweep->add_option("model", sweep_path, "model JSON file")->required();
  sweep->add_option("--quantity", quantity, "rank, min-choi-eig, or trace-norms")
      ->required()
      ->check(CLI::IsMember({"rank", "min-choi-eig", "trace-norms"}));
  sweep->add_option("--grid", grid, "t grid as start:stop:steps")->required();
  sweep->add_option("--grid-s", grid_s,
                    "optional s grid; min-choi-eig then sweeps propagators over s <= t");
  sweep->add_option("--rule", sweep_rule, "generalized-inverse rule")
      ->check(CLI::IsMember({"auto", "spectral", "moore_penrose", "mp", "dual_complement",
                             "dual", "kernel_complement", "kernel"}));
  sweep->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  divprop_options opt;
  divprop_default_options(&opt);
  if (tol_rank > 0) opt.tol_rank = tol_rank;
  if (tol_psd > 0) opt.tol_psd = tol_psd;
  if (tol_mono > 0) opt.tol_mono = tol_mono;
  if (samples > 0) opt.samples = samples;
  opt.seed = resolve_seed(seed_opt->count() > 0, seed);

  const bool want_csv = format == "csv";
  if (sweep->parsed()) {
    if (!format.empty() && !want_csv) die(2, "sweep emits csv only");
  } else if (want_csv) {
    die(2, "only sweep emits csv");
  }

  if (analyze->parsed()) {
    std::string text = slurp(analyze_path);
    divprop_transfer* tr = nullptr;
    divprop_status st = divprop_transfer_parse(text.c_str(), &tr);
    if (st != DIVPROP_OK) report_failure(st);
    char* json = nullptr;
    st = divprop_transfer_analyze(tr, &opt, &json);
    divprop_transfer_free(tr);
    if (st != DIVPROP_OK) report_failure(st);
    emit(take(json) + "\n", out_path);
    return 0;
  }

  if (propagate->parsed()) {
    std::string text = slurp(prop_path);
    divprop_model* model = nullptr;
    divprop_status st = divprop_model_parse(text.c_str(), &model);
    if (st != DIVPROP_OK) report_failure(st);
    char* json = nullptr;
    st = divprop_model_propagate(model, s_time, t_time, rule.c_str(), search ? 1 : 0, &opt,
                                 &json);
    divprop_model_free(model);
    if (st != DIVPROP_OK) report_failure(st);
    emit(take(json) + "\n", out_path);
    return 0;
  }

  if (reproduce->parsed()) {
    std::vector<std::string> ids =
        repro_id == "all" ? kBatteryIds : std::vector<std::string>{repro_id};
    std::string joined;
    bool any_failed = false;
    for (const std::string& id : ids) {
      char* json = nullptr;
      char* summary = nullptr;
      divprop_status st = divprop_reproduce(id.c_str(), &opt, &json, &summary);
      if (st != DIVPROP_OK && st != DIVPROP_CHECK_FAILED) report_failure(st);
      if (st == DIVPROP_CHECK_FAILED) any_failed = true;
      std::fputs(take(summary).c_str(), stderr);
      if (!joined.empty()) joined += ",\n";
      joined += take(json);
    }
    std::string body = ids.size() == 1 ? joined : "[\n" + joined + "\n]";
    emit(body + "\n", out_path);
    return any_failed ? 4 : 0;
  }

  if (sweep->parsed()) {
    std::string text = slurp(sweep_path);
    divprop_model* model = nullptr;
    divprop_status st = divprop_model_parse(text.c_str(), &model);
    if (st != DIVPROP_OK) report_failure(st);
    char* csv = nullptr;
    st = divprop_model_sweep(model, quantity.c_str(), grid.c_str(),
                             grid_s.empty() ? nullptr : grid_s.c_str(), sweep_rule.c_str(),
                             &opt, &csv);
    divprop_model_free(model);
    if (st != DIVPROP_OK) report_failure(st);
    emit(take(csv), out_path);
    return 0;
  }

  return 2;
}
