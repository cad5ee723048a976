#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "befpp/ensemble.hpp"
#include "befpp/fredholm.hpp"

namespace befpp {

struct KSReport {
  double ks_distance = 0.0;
  std::size_t sample_count = 0;
  std::string reference;     // "gaussian" or "limit-law"
  double pass_threshold = 0.0;
  int n_units = 0;
  double s = 0.0;
  std::uint64_t seed = 0;
  double ref_max_est_error = 0.0;  // worst determinant refinement error
  double ref_min_raw = 0.0;        // raw determinant range over the queries
  double ref_max_raw = 1.0;
};

struct ConvergenceConfig {
  ModelParams params;
  std::vector<int> n_list;
  std::vector<double> s_list;
  std::size_t count = 100000;
  std::uint64_t seed = 0;
  double pass_threshold = 0.02;
  std::string reference = "auto";  // auto: gaussian at s=0, limit-law otherwise
  std::string out_dir;             // empty: no artifacts written
  FredholmSpec fspec;
};

std::vector<KSReport> run_convergence_experiment(const ConvergenceConfig& cfg);

struct ExactVsMcRow {
  int k = 0;
  double exact = 0.0;
  double exact_raw = 0.0;
  double exact_err = 0.0;
  double mc = 0.0;
  double mc_stderr = 0.0;
  double z = 0.0;
  bool duality_ok = true;
};

struct ExactVsMcConfig {
  ModelParams params;
  int n_units = 6;
  double r = 0.5;
  std::size_t replicas = 200000;
  std::uint64_t seed = 0;
  std::string out_dir;
  int outer_nodes = 256;
  int inner_nodes = 128;
};

std::vector<ExactVsMcRow> run_exact_vs_mc(const ExactVsMcConfig& cfg);

// CSV with fixed 12-significant-digit formatting; throws ConfigError on an
// empty table and IoError on stream failure, leaving no partial file behind.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

std::string format_g12(double v);

// ensemble artifact: CSV (replica, scaled_height) + JSON sidecar with the
// effective configuration
void write_ensemble_artifacts(const std::string& csv_path,
                              const std::string& json_path,
                              const EmpiricalCDF& ens, const ModelParams& p,
                              int n_units, double s, std::uint64_t seed);

std::string git_describe_string();

}  // namespace befpp
