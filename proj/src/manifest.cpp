#include "pgk/manifest.hpp"

#include "pgk/catalog.hpp"

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include <sstream>

namespace pgk {

using nlohmann::json;

RunManifest parse_manifest(const std::string& json_text) {
  json j = json::parse(json_text);  // throws nlohmann parse_error on bad input
  RunManifest m;
  m.format_version = j.value("format_version", kFormatVersion);
  if (m.format_version != kFormatVersion)
    throw std::invalid_argument("unsupported format_version " +
                                std::to_string(m.format_version));
  for (const json& t : j.value("tasks", json::array())) {
    ManifestTask task;
    task.command = t.at("command").get<std::string>();
    if (task.command == "sweep") {
      task.sweep.group_id = t.at("group").get<std::string>();
      task.sweep.check = t.value("check", std::string("wall"));
      task.sweep.p = t.value("p", 3L);
      task.sweep.k = t.value("k", 3);
      task.sweep.num_units = t.value("units", 10);
      task.sweep.seed = t.value("seed", std::uint64_t{1});
      task.sweep.parallel = t.value("parallel", true);
      catalog_group(task.sweep.group_id);  // validate before any run
      if (task.sweep.check != "wall" && task.sweep.check != "rw_all" &&
          task.sweep.check != "snaith" && task.sweep.check != "adversarial")
        throw std::invalid_argument("unknown check: " + task.sweep.check);
    } else if (task.command == "brauer") {
      task.group_id = t.at("group").get<std::string>();
      task.irr_index = t.at("irr").get<int>();
      catalog_group(task.group_id);
    } else {
      throw std::invalid_argument("unknown command: " + task.command);
    }
    m.tasks.push_back(std::move(task));
  }
  return m;
}

ManifestResult run_manifest(const RunManifest& m, int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
  ManifestResult out;
  for (size_t ti = 0; ti < m.tasks.size(); ++ti) {
    const ManifestTask& task = m.tasks[ti];
    std::vector<CongruenceReport> rows;
    if (task.command == "sweep") {
      rows = run_sweep(task.sweep);
      for (const CongruenceReport& r : rows) {
        // on theta material everything must hold; perturbations must not escape
        bool adversarial = task.sweep.check == "adversarial";
        if (adversarial ? r.holds : !r.holds) out.unexpected = true;
      }
    } else {
      GroupPtr g = catalog_group(task.group_id);
      const CharacterPoset& poset = cached_poset(g);
      const Character& rho = irreducibles(g).at(static_cast<size_t>(task.irr_index));
      BrauerElement b = brauer_coefficients(poset, rho);
      CongruenceReport r;
      r.condition = "Brauer";
      r.group = g->name();
      r.instance = "irr" + std::to_string(task.irr_index);
      r.holds = verify_section(b, rho);
      r.detail = "terms=" + std::to_string(b.terms.size());
      r.p = g->prime();
      if (!r.holds) out.unexpected = true;
      rows.push_back(std::move(r));
    }
    for (CongruenceReport& r : rows) {
      out.task_of_row.push_back(static_cast<int>(ti));
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

std::string result_csv(const ManifestResult& r) {
  std::ostringstream os;
  os << "task," << report_csv_header() << "\n";
  for (size_t i = 0; i < r.rows.size(); ++i)
    os << r.task_of_row[i] << "," << report_csv_row(r.rows[i]) << "\n";
  return os.str();
}

std::string result_json(const ManifestResult& r) {
  json rows = json::array();
  for (size_t i = 0; i < r.rows.size(); ++i) {
    const CongruenceReport& x = r.rows[i];
    rows.push_back({{"task", r.task_of_row[i]},
                    {"condition", x.condition},
                    {"group", x.group},
                    {"instance", x.instance},
                    {"verdict", x.verdict()},
                    {"detail", x.detail},
                    {"p", x.p},
                    {"k", x.k}});
  }
  json j{{"format_version", kFormatVersion},
         {"unexpected", r.unexpected},
         {"rows", rows}};
  return j.dump(2) + "\n";
}

std::string brauer_json(const std::string& group_id, int irr_index) {
  GroupPtr g = catalog_group(group_id);
  const CharacterPoset& poset = cached_poset(g);
  const Character& rho = irreducibles(g).at(static_cast<size_t>(irr_index));
  BrauerElement b = brauer_coefficients(poset, rho);
  json terms = json::array();
  for (const auto& [pair, coef] : b.terms)
    terms.push_back({{"subgroup", pair.u.key()},
                     {"subgroup_order", pair.u.order()},
                     {"conductor", pair.N},
                     {"exponents", pair.e},
                     {"coefficient", coef}});
  json j{{"format_version", kFormatVersion},
         {"group", g->name()},
         {"irr", irr_index},
         {"degree", rho.degree().str()},
         {"terms", terms},
         {"section_identity", verify_section(b, rho)}};
  return j.dump(2) + "\n";
}

}  // namespace pgk
