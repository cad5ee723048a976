// CLI smoke tests: subcommand output shape and exit-code contract.
// Invoked by ctest with the binary path as argv[1].
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "[FAIL] " << what << "\n";
  } else {
    std::cout << "[ok] " << what << "\n";
  }
}

int exit_code(int system_status) {
#ifdef _WIN32
  return system_status;
#else
  return WEXITSTATUS(system_status);
#endif
}

int run_cmd(const std::string& cmd) { return exit_code(std::system(cmd.c_str())); }

nlohmann::json run_json(const std::string& cmd, int* code) {
  const std::string out = "/tmp/befpp_cli_out.json";
  *code = run_cmd(cmd + " > " + out + " 2>/dev/null");
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (...) {
    return nlohmann::json();
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <befpp binary>\n";
    return 1;
  }
  const std::string bin = argv[1];
  int code = 0;

  // cstar: no flags, exit 0, sane value
  nlohmann::json j = run_json(bin + " cstar", &code);
  expect(code == 0, "cstar exits 0");
  expect(j.contains("cstar") && j["cstar"].get<double>() > 0.046 &&
             j["cstar"].get<double>() < 0.048,
         "cstar value in range");
  expect(j.contains("coeff_sum_curve") && j["coeff_sum_curve"].is_array(),
         "cstar curve emitted");

  // kernel-eval Ks at s=0 equals the normal density
  j = run_json(bin + " kernel-eval --kernel Ks --s 0 --x 0.3 --y 0", &code);
  expect(code == 0, "kernel-eval exits 0");
  expect(std::abs(j["value"].get<double>() - 0.3989422804) < 1e-8,
         "kernel-eval Ks value");
  expect(j["imag_residual"].get<double>() < 1e-10, "kernel-eval residual");

  // cdf with both laws
  j = run_json(bin + " cdf --s 0 --h 0 --law Hs", &code);
  expect(code == 0, "cdf exits 0");
  expect(std::abs(j["value"].get<double>() - 0.5) < 1e-8, "cdf gaussian half");
  j = run_json(bin + " cdf --s 1 --h 1 --law Th", &code);
  expect(code == 0, "cdf Th exits 0");
  expect(std::abs(j["value"].get<double>() - 0.6075853167) < 1e-6,
         "cdf Th value");

  // exact
  j = run_json(bin + " exact --n 1 --k 1 --r 0.5", &code);
  expect(code == 0, "exact exits 0");
  expect(std::abs(j["value"].get<double>() - std::exp(-0.5) * 3.5 / 4.0) < 1e-8,
         "exact n=1 value");

  // simulate requires a seed (config error -> exit 2)
  code = run_cmd(bin + " simulate --n 64 --s 0 --count 100 2>/dev/null");
  expect(code != 0, "simulate without seed fails");

  // small simulate run
  j = run_json(bin +
                   " simulate --n 64 --s 0 --count 500 --seed 4 "
                   "--reference gaussian",
               &code);
  expect(code == 0, "simulate exits 0");
  expect(j.is_array() && j.size() == 1 && j[0].contains("ks_distance"),
         "simulate emits a KS report");

  // tail
  j = run_json(bin + " tail --s 0 --h 4", &code);
  expect(code == 0, "tail exits 0");
  expect(j["ratio"].get<double>() < 1.0, "tail ratio below one at s=0");

  // config errors map to exit code 2
  code = run_cmd(bin + " cdf --s -1 --h 0 2>/dev/null");
  expect(code == 2, "negative s exits 2");
  code = run_cmd(bin + " exact --n 1 --k 0 --r -0.5 2>/dev/null");
  expect(code == 2, "negative r exits 2");
  code = run_cmd(bin + " kernel-eval --kernel Ks --s 0 --x 0 --y 0 "
                       "--K 0.3 --rho 0.5 2>/dev/null");
  expect(code == 2, "crossing contours exit 2");
  code = run_cmd(bin + " nonsense 2>/dev/null");
  expect(code == 2, "unknown subcommand exits 2");

  // io errors map to exit code 4
  code = run_cmd(bin + " cdf --batch /nonexistent/queries.csv 2>/dev/null");
  expect(code == 4, "missing batch file exits 4");

  // batch mode round trip
  {
    std::ofstream q("/tmp/befpp_queries.csv");
    q << "s,h\n0,0\n1,1\n";
  }
  code = run_cmd(bin + " cdf --batch /tmp/befpp_queries.csv --out "
                       "/tmp/befpp_results.csv > /dev/null 2>&1");
  expect(code == 0, "batch cdf exits 0");
  {
    std::ifstream in("/tmp/befpp_results.csv");
    std::string header;
    std::getline(in, header);
    expect(header == "s,h,value,est_error", "batch output header");
    std::string row;
    std::getline(in, row);
    expect(row.rfind("0,0,0.5", 0) == 0, "batch row value");
  }

  if (failures == 0) std::cout << "all cli checks passed\n";
  return failures == 0 ? 0 : 1;
}
