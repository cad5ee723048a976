#include "befpp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace befpp {

using nlohmann::json;

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string git_describe_string() {
#ifdef BEFPP_GIT_DESCRIBE
  return BEFPP_GIT_DESCRIBE;
#else
  return "unknown";
#endif
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ConfigError("write_table_csv: empty result set");
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("write_table_csv: cannot open " + path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw ConfigError("write_table_csv: row width mismatch");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << format_g12(row[c]) << (c + 1 < row.size() ? "," : "\n");
  }
  if (!out) throw IoError("write_table_csv: write failed for " + path);
}

void write_ensemble_artifacts(const std::string& csv_path,
                              const std::string& json_path,
                              const EmpiricalCDF& ens, const ModelParams& p,
                              int n_units, double s, std::uint64_t seed) {
  {
    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + csv_path);
    out << "replica,scaled_height\n";
    const auto& v = ens.samples();
    for (std::size_t i = 0; i < v.size(); ++i)
      out << i << "," << format_g12(v[i]) << "\n";
    if (!out) throw IoError("write failed for " + csv_path);
  }
  json meta = {
      {"schema_version", 1},
      {"a", p.a},
      {"b", p.b},
      {"n", n_units},
      {"s", s},
      {"count", ens.count()},
      {"seed", seed},
      {"git_describe", git_describe_string()},
  };
  std::ofstream jout(json_path, std::ios::trunc);
  if (!jout) throw IoError("cannot open " + json_path);
  jout << meta.dump(2) << "\n";
  if (!jout) throw IoError("write failed for " + json_path);
}

std::vector<KSReport> run_convergence_experiment(const ConvergenceConfig& cfg) {
  cfg.params.validate();
  if (cfg.n_list.empty() || cfg.s_list.empty())
    throw ConfigError("run_convergence_experiment: empty n or s list");
  if (cfg.count < 1) throw ConfigError("run_convergence_experiment: count < 1");

  std::vector<KSReport> reports;
  json artifact = {{"schema_version", 1},
                   {"git_describe", git_describe_string()},
                   {"reports", json::array()}};
  for (int n : cfg.n_list) {
    for (double s : cfg.s_list) {
      EmpiricalCDF ens =
          scaled_height_ensemble(cfg.params, n, s, cfg.count, cfg.seed);
      const bool gaussian =
          cfg.reference == "gaussian" || (cfg.reference == "auto" && s == 0.0);
      double dist;
      double max_est = 0.0, min_raw = 0.0, max_raw = 1.0;
      if (gaussian) {
        dist = ens.ks_distance(standard_normal_cdf);
      } else {
        // evaluate the limit CDF once per distinct jump point
        std::vector<double> uniq;
        for (double x : ens.samples())
          if (uniq.empty() || x != uniq.back()) uniq.push_back(x);
        std::vector<DetValue> F = cdf_Hs_batch(s, uniq, cfg.fspec);
        for (const DetValue& d : F) {
          max_est = std::max(max_est, d.est_error);
          min_raw = std::min(min_raw, d.raw);
          max_raw = std::max(max_raw, d.raw);
        }
        dist = ens.ks_distance([&](double x) {
          auto it = std::lower_bound(uniq.begin(), uniq.end(), x);
          return F[static_cast<std::size_t>(it - uniq.begin())].value;
        });
      }
      KSReport rep;
      rep.ref_max_est_error = max_est;
      rep.ref_min_raw = min_raw;
      rep.ref_max_raw = max_raw;
      rep.ks_distance = dist;
      rep.sample_count = ens.count();
      rep.reference = gaussian ? "gaussian" : "limit-law";
      rep.pass_threshold = cfg.pass_threshold;
      rep.n_units = n;
      rep.s = s;
      rep.seed = cfg.seed;
      reports.push_back(rep);

      if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        const std::string tag =
            "n" + std::to_string(n) + "_s" + format_g12(s);
        write_ensemble_artifacts(cfg.out_dir + "/ensemble_" + tag + ".csv",
                                 cfg.out_dir + "/ensemble_" + tag + ".json",
                                 ens, cfg.params, n, s, cfg.seed);
      }
      artifact["reports"].push_back({{"n", n},
                                     {"s", s},
                                     {"ks_distance", dist},
                                     {"count", ens.count()},
                                     {"reference", rep.reference},
                                     {"pass_threshold", cfg.pass_threshold},
                                     {"seed", cfg.seed},
                                     {"fredholm_nodes", cfg.fspec.nodes},
                                     {"fredholm_trunc", cfg.fspec.trunc_len}});
    }
  }
  if (!cfg.out_dir.empty()) {
    std::ofstream jout(cfg.out_dir + "/ks_reports.json", std::ios::trunc);
    if (!jout) throw IoError("cannot open ks_reports.json");
    jout << artifact.dump(2) << "\n";
  }
  return reports;
}

std::vector<ExactVsMcRow> run_exact_vs_mc(const ExactVsMcConfig& cfg) {
  cfg.params.validate();
  if (!(cfg.r > 0.0)) throw ConfigError("run_exact_vs_mc: r must be > 0");
  if (cfg.n_units > 50)
    throw ConfigError("run_exact_vs_mc: n too large for dense MC (max 50)");
  const DiagonalSpan span = diagonal_span(cfg.params, cfg.n_units);
  const int W = static_cast<int>(span.an + span.bn) + 1;

  const int kmin = static_cast<int>(-span.an);
  const int kmax = static_cast<int>(span.bn) + 1;
  const int nk = kmax - kmin + 1;
  std::vector<std::int64_t> count_h_lt(nk, 0);
  std::vector<std::int64_t> count_t_gt(nk, 0);

  std::vector<int> heights(cfg.replicas);
  std::vector<std::uint8_t> t_gt(cfg.replicas * nk);
  parallel_replicas(cfg.replicas, [&](std::size_t rep) {
    LatticeSample sample = sample_lattice(cfg.params, W, W, cfg.seed,
                                          static_cast<std::uint64_t>(rep));
    PassageGrid grid = passage_time_grid(sample);
    heights[rep] = height(grid, cfg.params, cfg.n_units, cfg.r);
    for (int k = kmin; k <= kmax; ++k) {
      const double t = halfline_time_extended(
          grid, static_cast<int>(span.bn) - k, static_cast<int>(span.an) + k);
      t_gt[rep * nk + (k - kmin)] = t > cfg.r ? 1 : 0;
    }
  });
  for (std::size_t rep = 0; rep < cfg.replicas; ++rep)
    for (int k = kmin; k <= kmax; ++k) {
      const int idx = k - kmin;
      const bool h_lt = heights[rep] < k;
      count_h_lt[idx] += h_lt ? 1 : 0;
      count_t_gt[idx] += t_gt[rep * nk + idx];
    }

  std::vector<ExactVsMcRow> rows;
  const double N = static_cast<double>(cfg.replicas);
  for (int k = kmin; k <= kmax; ++k) {
    const int idx = k - kmin;
    FiniteKernelParams p;
    p.a = cfg.params.a;
    p.b = cfg.params.b;
    p.n = cfg.n_units;
    p.k = k;
    p.r = cfg.r;
    const DetValue exact = finite_n_cdf(p, cfg.outer_nodes, cfg.inner_nodes);
    ExactVsMcRow row;
    row.k = k;
    row.exact = exact.value;
    row.exact_raw = exact.raw;
    row.exact_err = exact.est_error;
    row.mc = static_cast<double>(count_h_lt[idx]) / N;
    row.mc_stderr = std::sqrt(std::max(row.mc * (1.0 - row.mc), 0.0) / N);
    const double se = std::max(row.mc_stderr, 1.0 / N);
    row.z = (exact.raw - row.mc) / se;
    row.duality_ok = count_t_gt[idx] == count_h_lt[idx];
    rows.push_back(row);
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    std::vector<std::vector<double>> table;
    for (const auto& r : rows)
      table.push_back({static_cast<double>(r.k), r.exact, r.exact_err, r.mc,
                       r.mc_stderr, r.z, r.duality_ok ? 1.0 : 0.0});
    write_table_csv(cfg.out_dir + "/exact_vs_mc.csv",
                    {"k", "exact", "exact_err", "mc", "mc_stderr", "z",
                     "duality_ok"},
                    table);
    json meta = {{"schema_version", 1},
                 {"a", cfg.params.a},
                 {"b", cfg.params.b},
                 {"n", cfg.n_units},
                 {"r", cfg.r},
                 {"replicas", cfg.replicas},
                 {"seed", cfg.seed},
                 {"outer_nodes", cfg.outer_nodes},
                 {"inner_nodes", cfg.inner_nodes},
                 {"git_describe", git_describe_string()}};
    std::ofstream jout(cfg.out_dir + "/exact_vs_mc.json", std::ios::trunc);
    if (!jout) throw IoError("cannot open exact_vs_mc.json");
    jout << meta.dump(2) << "\n";
  }
  return rows;
}

}  // namespace befpp
