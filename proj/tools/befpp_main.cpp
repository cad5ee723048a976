// Command-line driver: simulation, exact formulas, determinant queries and
// cross-validation reports for the Bernoulli-Exponential FPP model.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "befpp/asymptotics.hpp"
#include "befpp/report.hpp"

using nlohmann::json;
using namespace befpp;

namespace {

std::string default_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("BEFPP_OUTPUT_DIR");
  return env ? env : "";
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw ConfigError("empty list: " + csv);
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

int run(CLI::App& app, int argc, char** argv) {
  argv = app.ensure_utf8(argv);

  // the spec'd --h flag needs the short -h help alias out of the way
  app.set_help_flag("--help", "print help");
  auto add_sub = [&app](const char* name, const char* desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  // ---- simulate ----------------------------------------------------------
  auto* sim = add_sub(
      "simulate", "sample scaled-height ensembles and compare to the limit law");
  double sim_a = 1.0, sim_b = 1.0, sim_thresh = 0.02;
  std::string sim_n = "2000", sim_s = "1", sim_ref = "auto", sim_out;
  std::size_t sim_count = 100000;
  std::uint64_t sim_seed = 0;
  sim->add_option("--a", sim_a, "vertical rate a");
  sim->add_option("--b", sim_b, "horizontal rate b");
  sim->add_option("--n", sim_n, "lattice size(s), comma separated");
  sim->add_option("--s", sim_s, "rescaled level(s), comma separated");
  sim->add_option("--count", sim_count, "replicas per (n,s)");
  sim->add_option("--seed", sim_seed, "RNG seed")->required();
  sim->add_option("--reference", sim_ref, "none|auto|gaussian|limit-law");
  sim->add_option("--threshold", sim_thresh, "KS pass threshold");
  sim->add_option("--out", sim_out, "output directory (or $BEFPP_OUTPUT_DIR)");

  // ---- exact -------------------------------------------------------------
  auto* exact = add_sub(
      "exact", "finite-n determinant formula for P(H(n,r) < k)");
  double ex_a = 1.0, ex_b = 1.0, ex_r = 0.5;
  int ex_n = 6, ex_k = 0, ex_outer = 256, ex_inner = 128;
  exact->add_option("--a", ex_a, "vertical rate a");
  exact->add_option("--b", ex_b, "horizontal rate b");
  exact->add_option("--n", ex_n, "lattice scale n")->required();
  exact->add_option("--k", ex_k, "height threshold k")->required();
  exact->add_option("--r", ex_r, "percolation level r > 0")->required();
  exact->add_option("--outer-nodes", ex_outer, "outer contour nodes");
  exact->add_option("--inner-nodes", ex_inner, "inner contour nodes");

  // ---- cdf ---------------------------------------------------------------
  auto* cdf = add_sub(
      "cdf", "limit-law determinant: P(H_s < h) or P(T_h > s)");
  double cdf_s = 1.0, cdf_h = 0.0, cdf_trunc = 8.0;
  int cdf_nodes = 48;
  std::string cdf_law = "Hs", cdf_batch, cdf_out;
  cdf->add_option("--s", cdf_s, "rescaled percolation level");
  cdf->add_option("--h", cdf_h, "rescaled height threshold");
  cdf->add_option("--law", cdf_law, "Hs|Th");
  cdf->add_option("--nodes", cdf_nodes, "Nystrom nodes M");
  cdf->add_option("--trunc", cdf_trunc, "truncation length L");
  cdf->add_option("--batch", cdf_batch, "CSV of queries with header s,h");
  cdf->add_option("--out", cdf_out, "output CSV for batch mode");

  // ---- kernel-eval -------------------------------------------------------
  auto* ke = add_sub("kernel-eval", "pointwise kernel values");
  double ke_s = 1.0, ke_x = 0.0, ke_y = 0.0, ke_K = 0.0, ke_rho = 0.0;
  int ke_nodes = 0;
  std::string ke_kernel = "Ks";
  ke->add_option("--kernel", ke_kernel, "Ks|Ls|f|g|airy")->required();
  ke->add_option("--s", ke_s, "level parameter s");
  ke->add_option("--x", ke_x, "first argument");
  ke->add_option("--y", ke_y, "second argument");
  ke->add_option("--K", ke_K, "line abscissa (0: default)");
  ke->add_option("--rho", ke_rho, "circle radius (0: default)");
  ke->add_option("--nodes", ke_nodes, "nodes per contour (0: default)");

  // ---- tw ----------------------------------------------------------------
  auto* tw = add_sub(
      "tw", "sup-distance between rescaled H_s and Tracy-Widom on an r-grid");
  double tw_s = 20.0;
  std::string tw_grid = "-3,-2,-1,0,1,2";
  tw->add_option("--s", tw_s, "level s > 0")->required();
  tw->add_option("--r-grid", tw_grid, "comma separated r values");

  // ---- tail --------------------------------------------------------------
  auto* tail = add_sub("tail", "upper-tail bound diagnostics");
  double tail_s = 0.0, tail_h = 4.0, tail_C = 1.0;
  tail->add_option("--s", tail_s, "level s")->required();
  tail->add_option("--h", tail_h, "threshold h")->required();
  tail->add_option("--C", tail_C, "bound constant C");

  // ---- cstar -------------------------------------------------------------
  auto* cstar = add_sub(
      "cstar", "critical cubic-scaling constant and exponent curve");

  // ---- report ------------------------------------------------------------
  auto* rep = add_sub(
      "report", "exact-vs-Monte-Carlo table across all k");
  double rp_a = 1.0, rp_b = 1.0, rp_r = 0.5;
  int rp_n = 6;
  std::size_t rp_reps = 200000;
  std::uint64_t rp_seed = 0;
  std::string rp_out;
  rep->add_option("--a", rp_a, "vertical rate a");
  rep->add_option("--b", rp_b, "horizontal rate b");
  rep->add_option("--n", rp_n, "lattice scale n (<= 50)");
  rep->add_option("--r", rp_r, "percolation level r > 0");
  rep->add_option("--replicas", rp_reps, "Monte Carlo replicas");
  rep->add_option("--seed", rp_seed, "RNG seed")->required();
  rep->add_option("--out", rp_out, "output directory (or $BEFPP_OUTPUT_DIR)");

  app.require_subcommand(1);
  app.set_config("--config");
  app.parse(argc, argv);

  if (sim->parsed()) {
    ConvergenceConfig cfg;
    cfg.params = {sim_a, sim_b};
    for (double n : parse_list(sim_n)) cfg.n_list.push_back(static_cast<int>(n));
    cfg.s_list = parse_list(sim_s);
    cfg.count = sim_count;
    cfg.seed = sim_seed;
    cfg.pass_threshold = sim_thresh;
    cfg.reference = sim_ref == "none" ? "gaussian" : sim_ref;
    cfg.out_dir = default_out_dir(sim_out);
    if (sim_ref == "none") {
      json out = json::array();
      for (int n : cfg.n_list)
        for (double s : cfg.s_list) {
          EmpiricalCDF ens =
              scaled_height_ensemble(cfg.params, n, s, cfg.count, cfg.seed);
          if (!cfg.out_dir.empty()) {
            std::filesystem::create_directories(cfg.out_dir);
            const std::string tag = "n" + std::to_string(n) + "_s" + format_g12(s);
            write_ensemble_artifacts(cfg.out_dir + "/ensemble_" + tag + ".csv",
                                     cfg.out_dir + "/ensemble_" + tag + ".json",
                                     ens, cfg.params, n, s, cfg.seed);
          }
          out.push_back({{"n", n}, {"s", s}, {"count", ens.count()}, {"seed", cfg.seed}});
        }
      emit(out);
      return 0;
    }
    auto reports = run_convergence_experiment(cfg);
    json out = json::array();
    for (const auto& r : reports)
      out.push_back({{"n", r.n_units},
                     {"s", r.s},
                     {"ks_distance", r.ks_distance},
                     {"count", r.sample_count},
                     {"reference", r.reference},
                     {"pass_threshold", r.pass_threshold},
                     {"pass", r.ks_distance <= r.pass_threshold},
                     {"seed", r.seed}});
    emit(out);
    return 0;
  }

  if (exact->parsed()) {
    FiniteKernelParams p;
    p.a = ex_a;
    p.b = ex_b;
    p.n = ex_n;
    p.k = ex_k;
    p.r = ex_r;
    DetValue d = finite_n_cdf(p, ex_outer, ex_inner);
    emit({{"value", d.value},
          {"raw", d.raw},
          {"est_error", d.est_error},
          {"imag_residual", d.imag_residual},
          {"a", ex_a},
          {"b", ex_b},
          {"n", ex_n},
          {"k", ex_k},
          {"r", ex_r},
          {"outer_nodes", ex_outer},
          {"inner_nodes", ex_inner}});
    return 0;
  }

  if (cdf->parsed()) {
    FredholmSpec fs;
    fs.nodes = cdf_nodes;
    fs.trunc_len = cdf_trunc;
    if (!cdf_batch.empty()) {
      std::ifstream in(cdf_batch);
      if (!in) throw IoError("cannot open batch file " + cdf_batch);
      std::string line;
      if (!std::getline(in, line) || line.rfind("s,h", 0) != 0)
        throw ConfigError("batch CSV must start with header 's,h'");
      std::vector<std::vector<double>> rows;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto vals = parse_list(line);
        if (vals.size() != 2) throw ConfigError("batch rows must be 's,h'");
        DetValue d = cdf_law == "Th" ? ccdf_Th(vals[1], vals[0], fs)
                                     : cdf_Hs({vals[0], vals[1]}, fs);
        rows.push_back({vals[0], vals[1], d.value, d.est_error});
      }
      const std::string outp =
          cdf_out.empty() ? cdf_batch + ".out.csv" : cdf_out;
      write_table_csv(outp, {"s", "h", "value", "est_error"}, rows);
      emit({{"written", outp}, {"rows", rows.size()}, {"law", cdf_law}});
      return 0;
    }
    DetValue d = cdf_law == "Th" ? ccdf_Th(cdf_h, cdf_s, fs)
                                 : cdf_Hs({cdf_s, cdf_h}, fs);
    emit({{"value", d.value},
          {"raw", d.raw},
          {"est_error", d.est_error},
          {"imag_residual", d.imag_residual},
          {"law", cdf_law},
          {"s", cdf_s},
          {"h", cdf_h},
          {"nodes", fs.nodes},
          {"trunc", fs.trunc_len}});
    return 0;
  }

  if (ke->parsed()) {
    if (ke_kernel == "airy") {
      emit({{"value", eval_airy_kernel(ke_x, ke_y)},
            {"imag_residual", 0.0},
            {"est_error", 0.0},
            {"kernel", "airy"}});
      return 0;
    }
    ContourSpec spec = default_contour(ke_s, std::max({ke_x, ke_y, 1.0}),
                                       std::min(ke_x, ke_y), 1e-12);
    if (ke_K > 0.0) spec.line_abscissa = ke_K;
    if (ke_rho > 0.0) spec.circle_radius = ke_rho;
    if (ke_nodes > 0) {
      spec.line_nodes = ke_nodes;
      spec.circle_nodes = ke_nodes;
    }
    KernelValue v;
    if (ke_kernel == "Ks")
      v = eval_Ks(ke_s, ke_x, ke_y, spec);
    else if (ke_kernel == "Ls")
      v = eval_Ls(ke_s, ke_x, ke_y, spec);
    else if (ke_kernel == "f")
      v = eval_f(ke_s, ke_x, spec);
    else if (ke_kernel == "g")
      v = eval_g(ke_s, ke_y, spec);
    else
      throw ConfigError("unknown kernel: " + ke_kernel);
    emit({{"value", v.value},
          {"imag_residual", v.imag_residual},
          {"est_error", v.est_error},
          {"kernel", ke_kernel},
          {"K", spec.line_abscissa},
          {"rho", spec.circle_radius}});
    return 0;
  }

  if (tw->parsed()) {
    TWDistance d = tw_distance(tw_s, parse_list(tw_grid));
    emit({{"s", tw_s},
          {"distance", d.distance},
          {"gaps", d.gaps},
          {"cdf_Hs", d.hs_values},
          {"tw_cdf", d.tw_values},
          {"r_grid", parse_list(tw_grid)}});
    return 0;
  }

  if (tail->parsed()) {
    TailRatio t = tail_empirical_ratio(tail_s, tail_h, tail_C);
    emit({{"lhs", t.lhs},
          {"rhs", t.rhs},
          {"ratio", t.ratio},
          {"trusted", t.trusted},
          {"s", tail_s},
          {"h", tail_h},
          {"C", tail_C}});
    return 0;
  }

  if (cstar->parsed()) {
    const double c = find_cstar();
    json curve = json::array();
    for (int i = 1; i <= 24; ++i) {
      const double cc = 0.2 * i / 24.0;
      const double cs = coeff_sum(cc);
      curve.push_back({{"c", cc}, {"coeff_sum", cs}, {"delta", -cs}});
    }
    emit({{"cstar", c}, {"coeff_sum_curve", curve}});
    return 0;
  }

  if (rep->parsed()) {
    ExactVsMcConfig cfg;
    cfg.params = {rp_a, rp_b};
    cfg.n_units = rp_n;
    cfg.r = rp_r;
    cfg.replicas = rp_reps;
    cfg.seed = rp_seed;
    cfg.out_dir = default_out_dir(rp_out);
    auto rows = run_exact_vs_mc(cfg);
    json out = json::array();
    for (const auto& r : rows)
      out.push_back({{"k", r.k},
                     {"exact", r.exact},
                     {"mc", r.mc},
                     {"mc_stderr", r.mc_stderr},
                     {"z", r.z},
                     {"duality_ok", r.duality_ok}});
    emit({{"rows", out},
          {"a", rp_a},
          {"b", rp_b},
          {"n", rp_n},
          {"r", rp_r},
          {"replicas", rp_reps},
          {"seed", rp_seed}});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernoulli-Exponential first passage percolation toolkit"};
  try {
    return run(app, argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
