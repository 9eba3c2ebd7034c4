#include "pgk/congruence.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

using namespace pgk;

namespace {

double run_timed(SweepConfig cfg, bool parallel, std::vector<CongruenceReport>* out) {
  cfg.parallel = parallel;
  auto t0 = std::chrono::steady_clock::now();
  *out = run_sweep(cfg);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial-reference vs OpenMP sweep benchmark"};
  SweepConfig cfg;
  cfg.group_id = "heis3";
  cfg.check = "wall";
  cfg.num_units = 50;
  app.add_option("--group", cfg.group_id, "catalog group id");
  app.add_option("--check", cfg.check, "wall | rw_all | snaith | adversarial");
  app.add_option("--units", cfg.num_units, "number of random units");
  app.add_option("--p", cfg.p, "prime");
  app.add_option("--k", cfg.k, "precision exponent");
  app.add_option("--seed", cfg.seed, "sweep seed");
  CLI11_PARSE(app, argc, argv);

  std::vector<CongruenceReport> serial, parallel;
  double ts = run_timed(cfg, false, &serial);
  double tp = run_timed(cfg, true, &parallel);

  bool same = serial.size() == parallel.size();
  for (size_t i = 0; same && i < serial.size(); ++i)
    same = report_csv_row(serial[i]) == report_csv_row(parallel[i]);

  int held = 0;
  for (const CongruenceReport& r : serial)
    if (r.holds) ++held;

  std::printf("group=%s check=%s units=%d rows=%zu holds=%d\n", cfg.group_id.c_str(),
              cfg.check.c_str(), cfg.num_units, serial.size(), held);
  std::printf("serial    %.3fs\n", ts);
  std::printf("parallel  %.3fs  (speedup %.2fx)\n", tp, ts / tp);
  std::printf("reports identical: %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
