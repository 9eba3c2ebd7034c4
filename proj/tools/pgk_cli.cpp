#include "pgk/catalog.hpp"
#include "pgk/manifest.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace pgk;

namespace {

int cmd_catalog(int order_filter) {
  std::printf("%-8s %-14s %7s %8s %6s %8s\n", "id", "name", "order", "center",
              "G^ab", "classes");
  for (const CatalogEntry& e : builtin_catalog()) {
    const GroupPtr& g = e.group;
    if (order_filter > 0 && g->order() != order_filter) continue;
    std::printf("%-8s %-14s %7d %8d %6d %8d\n", e.id.c_str(), g->name().c_str(),
                g->order(), g->center().order(), g->abelianization().grp->order(),
                g->num_classes());
  }
  return 0;
}

int cmd_brauer(const std::string& group, int irr) {
  std::cout << brauer_json(group, irr);
  return 0;
}

int cmd_check(const std::string& manifest_path, const std::string& out_dir, int jobs,
              long p_default, int k_default, std::uint64_t seed_default) {
  std::ifstream in(manifest_path);
  if (!in) {
    std::cerr << "cannot read manifest: " << manifest_path << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  RunManifest m;
  try {
    m = parse_manifest(buf.str());
  } catch (const std::exception& ex) {
    std::cerr << "manifest error: " << ex.what() << "\n";
    return 2;
  }
  // command-line defaults apply to tasks that kept the parser defaults
  for (ManifestTask& t : m.tasks) {
    if (t.command != "sweep") continue;
    if (p_default > 0) t.sweep.p = p_default;
    if (k_default > 0) t.sweep.k = k_default;
    if (seed_default > 0) t.sweep.seed = seed_default;
  }

  ManifestResult res = run_manifest(m, jobs);
  fs::create_directories(out_dir);
  {
    std::ofstream csv(fs::path(out_dir) / "report.csv", std::ios::binary);
    csv << result_csv(res);
  }
  {
    std::ofstream js(fs::path(out_dir) / "report.json", std::ios::binary);
    js << result_json(res);
  }
  std::cout << "rows=" << res.rows.size()
            << " unexpected=" << (res.unexpected ? "yes" : "no") << "\n";
  return res.unexpected ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite p-group / truncated group-ring congruence toolkit"};
  app.require_subcommand(1);

  int order_filter = 0;
  CLI::App* cat = app.add_subcommand("catalog", "list built-in groups");
  cat->add_option("--order", order_filter, "only groups of this order");

  std::string group = "heis3";
  int irr = 0;
  CLI::App* br = app.add_subcommand("brauer", "explicit induction coefficients");
  br->add_option("--group", group, "catalog group id")->required();
  br->add_option("--irr", irr, "irreducible index")->required();

  std::string manifest_path, out_dir = ".";
  int jobs = 0;
  long p_default = 0;
  int k_default = 0;
  std::uint64_t seed_default = 0;
  CLI::App* ck = app.add_subcommand("check", "run a batch manifest");
  ck->add_option("--manifest", manifest_path, "manifest JSON path")->required();
  ck->add_option("--out", out_dir, "output directory");
  ck->add_option("--jobs", jobs, "worker threads (0 = library default)");
  ck->add_option("--p", p_default, "override prime for all sweep tasks");
  ck->add_option("--k", k_default, "override precision for all sweep tasks");
  ck->add_option("--seed", seed_default, "override seed for all sweep tasks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cat->parsed()) return cmd_catalog(order_filter);
    if (br->parsed()) return cmd_brauer(group, irr);
    return cmd_check(manifest_path, out_dir, jobs, p_default, k_default, seed_default);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
