// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures.  Each criterion is self-contained and keeps running after a
// failure so the full picture is always printed.  argv[1] (optional) is the
// path to the command-line binary, used by the determinism criterion; without
// it the library-level runner is exercised instead.

#include "pgk/catalog.hpp"
#include "pgk/congruence.hpp"
#include "pgk/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pgk;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int num, const std::string& name, bool ok, double secs,
            const std::string& note) {
  if (!ok) ++g_failures;
  std::printf("[%s] %02d %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(),
              secs, note.empty() ? "" : " — ", note.c_str());
  std::fflush(stdout);
}

template <typename Fn>
void criterion(int num, const std::string& name, Fn fn, double budget_secs = 0) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = fn(note);
  } catch (const std::exception& e) {
    ok = false;
    note = std::string("exception: ") + e.what();
  }
  double secs = seconds_since(t0);
  if (ok && budget_secs > 0 && secs > budget_secs) {
    ok = false;
    note += " [exceeded " + std::to_string(static_cast<long>(budget_secs)) +
            "s budget]";
  }
  report(num, name, ok, secs, note);
}

int conductor_exponent(const GroupPtr& g) {
  long e = g->exponent();
  int a = 0;
  while (e % g->prime() == 0) {
    e /= g->prime();
    ++a;
  }
  return a;
}

int order_valuation(const GroupPtr& g) {
  long n = g->order();
  int v = 0;
  while (n % g->prime() == 0) {
    n /= g->prime();
    ++v;
  }
  return v;
}

/// Smallest working precision at which every t_U of a tuple over g keeps at
/// least one certified digit after the hom-side log and the trace inversion.
int working_precision_for_t(const GroupPtr& g) {
  const long p = g->prime();
  const int a = conductor_exponent(g);
  const long deg = euler_phi(pow_u64(p, static_cast<unsigned>(a)));
  const int drop = order_valuation(g);
  for (int k = 4;; ++k) {
    int V = log_slack(p, static_cast<int>(k * deg) + k + 8);
    if (k - V - 1 - drop >= 1) return k;
  }
}

/// Ditto for a direct hom-side log comparison (no trace inversion).
int working_precision_for_hom_log(const GroupPtr& g) {
  const long p = g->prime();
  const int a = conductor_exponent(g);
  const long deg = euler_phi(pow_u64(p, static_cast<unsigned>(a)));
  for (int k = 4;; ++k) {
    int V = log_slack(p, static_cast<int>(k * deg) + k + 8);
    if (k - V - 1 >= 2) return k;
  }
}

bool histogram_is(long N, const std::vector<long>& exps, long want_constant) {
  std::vector<Int> hist = reduced_exponent_histogram(N, exps);
  if (hist[0] != want_constant) return false;
  for (size_t c = 1; c < hist.size(); ++c)
    if (hist[c] != 0) return false;
  return true;
}

bool character_tables(std::string& note) {
  int groups = 0;
  for (const CatalogEntry& entry : builtin_catalog()) {
    const GroupPtr& g = entry.group;
    const auto& irr = irreducibles(g);
    Int sq = 0;
    for (const Character& chi : irr) sq += chi.degree() * chi.degree();
    if (sq != g->order()) {
      note = entry.id + ": degree certificate failed";
      return false;
    }
    if (g->is_abelian()) {
      // integer-only orthogonality through exponent histograms
      auto lins = linear_characters(g);
      const long N = lins[0].N;
      const int n = g->order();
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          std::vector<long> row(static_cast<size_t>(n)), col(static_cast<size_t>(n));
          for (int x = 0; x < n; ++x) {
            row[x] = (((lins[i].e[x] - lins[j].e[x]) % N) + N) % N;
            col[x] = (((lins[x].e[i] - lins[x].e[j]) % N) + N) % N;
          }
          if (!histogram_is(N, row, i == j ? n : 0) ||
              !histogram_is(N, col, i == j ? n : 0)) {
            note = entry.id + ": orthogonality failed at (" + std::to_string(i) +
                   "," + std::to_string(j) + ")";
            return false;
          }
        }
    } else {
      for (size_t i = 0; i < irr.size(); ++i)
        for (size_t j = i; j < irr.size(); ++j)
          if (schur_inner(irr[i], irr[j]) != Rat(i == j ? 1 : 0)) {
            note = entry.id + ": row orthogonality failed";
            return false;
          }
      for (int ci = 0; ci < g->num_classes(); ++ci)
        for (int cj = ci; cj < g->num_classes(); ++cj) {
          Cyclotomic s;
          for (const Character& chi : irr)
            s += chi.at_class(ci) * chi.at_class(cj).conj();
          long want = ci == cj
                          ? g->order() / static_cast<long>(g->classes()[ci].size())
                          : 0;
          if (!(s == Cyclotomic(Rat(want)))) {
            note = entry.id + ": column orthogonality failed";
            return false;
          }
        }
    }
    ++groups;
  }
  note = std::to_string(groups) + " groups";
  return true;
}

bool induction_section_and_twists(std::string& note) {
  int sections = 0, twists = 0;
  for (const char* id : {"heis3", "mod27"}) {
    GroupPtr g = catalog_group(id);
    const CharacterPoset& poset = cached_poset(g);
    for (const Character& rho : irreducibles(g)) {
      BrauerElement b = brauer_coefficients(poset, rho);
      if (!verify_section(b, rho)) {
        note = std::string(id) + ": section identity failed";
        return false;
      }
      ++sections;
      for (const LinearChar& chi : linear_characters(g)) {
        if (!(brauer_coefficients(poset, rho.tensor(chi)) == twist(chi, b, poset))) {
          note = std::string(id) + ": twist compatibility failed";
          return false;
        }
        ++twists;
      }
    }
  }
  note = std::to_string(sections) + " sections, " + std::to_string(twists) +
         " twists";
  return true;
}

bool moebius_lattices(std::string& note) {
  int lattices = 0;
  for (const CatalogEntry& entry : builtin_catalog()) {
    const GroupPtr& g = entry.group;
    if (mobius_subgroup(g, g->trivial_subgroup()) != 1) {
      note = entry.id + ": mu(1) != 1";
      return false;
    }
    for (const Subgroup& u : g->subgroups()) {
      if (u.is_trivial()) continue;
      long s = 0;
      for (const Subgroup& v : g->subgroups())
        if (u.contains(v)) s += mobius_subgroup(g, v);
      if (s != 0) {
        note = entry.id + ": interval sum over " + u.key() + " is " +
               std::to_string(s);
        return false;
      }
    }
    ++lattices;
  }
  note = std::to_string(lattices) + " lattices";
  return true;
}

bool det_coherence(std::string& note) {
  const int kUnits = 200;
  long pair_checks = 0, induction_checks = 0, brind_checks = 0;
  for (const CatalogEntry& entry : builtin_catalog()) {
    const GroupPtr& g = entry.group;
    const long p = g->prime();
    const int a = conductor_exponent(g);
    const auto& irr = irreducibles(g);

    // one genuinely reducible induced character per group, decomposed once:
    // the trivial character of a maximal subgroup
    Subgroup max_u{g, {}};
    for (const Subgroup& s : g->subgroups())
      if (s.order() * p == g->order()) max_u = s;
    EmbeddedGroup ug = g->subgroup_group(max_u);
    QuotientGroup uab = ug.grp->abelianization();
    LinearChar triv_ab = linear_characters(uab.grp)[0];
    LinearChar triv{ug.grp, triv_ab.N, std::vector<long>(ug.grp->order(), 0)};
    CharPair triv_pair = make_pair_from_linear(max_u, triv);
    Character ind = Character::from_linear(triv).induced_to(g, ug);
    std::vector<long> mult(irr.size());
    for (size_t i = 0; i < irr.size(); ++i)
      mult[i] = static_cast<long>(to_int(schur_inner(ind, irr[i])));

    Rng rng(97 + g->order());
    for (int t = 0; t < kUnits; ++t) {
      GroupRingElement u = random_unit(g, p, 3, rng);
      std::vector<TruncCyclo> det;
      det.reserve(irr.size());
      for (size_t i = 0; i < irr.size(); ++i) {
        auto all = det_eval_all_pairs(u, static_cast<int>(i), a);
        for (const TruncCyclo& v : all) {
          if (!(v == all[0])) {
            note = entry.id + ": monomial pairs disagree on irreducible " +
                   std::to_string(i);
            return false;
          }
          ++pair_checks;
        }
        det.push_back(all[0]);
      }
      // Det(u)(Ind phi) = phi(theta_U(u)) on the reducible instance
      TruncCyclo lhs = TruncCyclo::scalar(p, a, 3, Int(1));
      for (size_t i = 0; i < irr.size(); ++i)
        if (mult[i]) lhs = lhs * det[i].pow(mult[i]);
      TruncCyclo rhs = pair_eval_on_ab(triv_pair, theta(u, max_u), a, ug, uab);
      if (!(lhs == rhs)) {
        note = entry.id + ": induced-character coherence failed";
        return false;
      }
      ++induction_checks;
    }

    // BrInd over the theta tuple reproduces Det pointwise
    SubqSetPtr s = subquotients_of(g);
    const Subquotient* top = nullptr;
    for (const Subquotient& m : s->members)
      if (m.c.is_trivial() && m.u.order() == g->order()) top = &m;
    const CharacterPoset& poset = cached_poset(top->ugrp.grp);
    Rng rng2(55 + g->order());
    for (int t = 0; t < 3; ++t) {
      GroupRingElement u = random_unit(g, p, 3, rng2);
      UnitTuple tuple = theta_tuple(u, s);
      for (size_t i = 0; i < irr.size(); ++i) {
        Character rho = irreducibles(top->ugrp.grp)[i];
        BrauerElement b = brauer_coefficients(poset, rho);
        if (!(brind_eval(tuple, *top, poset, rho, b, a) ==
              det_eval(u, static_cast<int>(i), a))) {
          note = entry.id + ": BrInd differs from Det on irreducible " +
                 std::to_string(i);
          return false;
        }
        ++brind_checks;
      }
    }
  }
  note = std::to_string(pair_checks) + " pair evaluations, " +
         std::to_string(induction_checks) + " induced instances, " +
         std::to_string(brind_checks) + " BrInd values";
  return true;
}

bool snaith_sweep(std::string& note) {
  const int kUnits = 25;
  long checks = 0;
  for (const CatalogEntry& entry : builtin_catalog()) {
    const GroupPtr& g = entry.group;
    const int a = conductor_exponent(g);
    Rng rng(131 + g->order());
    for (int t = 0; t < kUnits; ++t) {
      GroupRingElement u = random_unit(g, g->prime(), 3, rng);
      for (size_t i = 0; i < irreducibles(g).size(); ++i) {
        if (!snaith_congruence_holds(u, static_cast<int>(i), a)) {
          note = entry.id + ": congruence failed for unit " + std::to_string(t) +
                 ", irreducible " + std::to_string(i);
          return false;
        }
        ++checks;
      }
    }
  }
  note = std::to_string(checks) + " (u, chi) instances";
  return true;
}

bool integral_log_suite(std::string& note) {
  long logs = 0, torsion = 0, trace_matches = 0;
  for (const CatalogEntry& entry : builtin_catalog()) {
    const GroupPtr& g = entry.group;
    const long p = g->prime();
    const int a = conductor_exponent(g);

    Rng rng(173 + g->order());
    for (int t = 0; t < 1000; ++t) {
      GroupRingElement u = random_one_unit(g, p, 3, rng);
      TraceElement l = integral_log(u, 3);  // construction certifies integrality
      if (l.k != 3) {
        note = entry.id + ": declared precision lost";
        return false;
      }
      ++logs;
    }

    for (std::uint64_t r = 1; r < static_cast<std::uint64_t>(p); ++r) {
      std::uint64_t zeta = teichmuller(p, 3, r);
      for (int el = 0; el < g->order(); ++el) {
        GroupRingElement u = GroupRingElement::of_element(g, p, 3, el, zeta);
        if (!integral_log_any_unit(u, 2).is_zero()) {
          note = entry.id + ": log of a torsion unit is nonzero";
          return false;
        }
        ++torsion;
      }
    }

    const int kk = std::max(8, working_precision_for_hom_log(g));
    Rng rng2(211 + g->order());
    for (int t = 0; t < 2; ++t) {
      GroupRingElement u = random_one_unit(g, p, kk, rng2);
      TraceElement l = integral_log(u, kk);
      for (size_t i = 0; i < irreducibles(g).size(); ++i) {
        TruncCyclo lhs = trace_eval_trunc(l, irreducibles(g)[i], a, l.k);
        TruncCyclo rhs = hom_L(u, static_cast<int>(i), a);
        int prec = std::min(lhs.precision(), rhs.precision());
        if (prec < 1 || !lhs.reduced_to(prec).congruent(rhs.reduced_to(prec), prec)) {
          note = entry.id + ": trace of the log differs from the hom-side log";
          return false;
        }
        ++trace_matches;
      }
    }
  }
  note = std::to_string(logs) + " logs, " + std::to_string(torsion) +
         " torsion units, " + std::to_string(trace_matches) + " trace matches";
  return true;
}

bool congruence_soundness(std::string& note) {
  GroupPtr g = catalog_group("heis3");
  SubqSetPtr s = subquotients_of(g);
  long instances = 0, witnesses = 0;
  for (int k : {2, 3}) {
    Rng rng(239 + k);
    for (int t = 0; t < 50; ++t) {
      GroupRingElement u = random_unit(g, 3, k, rng);
      UnitTuple tuple = theta_tuple(u, s);
      for (const CongruenceReport& r : {check_rw1(tuple), check_rw2(tuple)}) {
        if (!r.holds) {
          note = r.condition + " failed: " + r.instance;
          return false;
        }
        ++instances;
      }
      auto sigma_backed = check_rw3_all(tuple);
      auto r3a = check_rw3a_all(tuple);
      sigma_backed.insert(sigma_backed.end(), r3a.begin(), r3a.end());
      for (const Subgroup& gp : g->subgroups())
        if (gp.order() * 3 == g->order()) sigma_backed.push_back(check_wall(u, gp));
      for (const CongruenceReport& r : sigma_backed) {
        if (!r.holds) {
          note = r.condition + " failed at " + r.instance + ": " + r.detail;
          return false;
        }
        if (r.detail.rfind("sigma-witness", 0) != 0) {
          note = r.condition + " verdict lacks a verified witness at " + r.instance;
          return false;
        }
        ++instances;
        ++witnesses;
      }
      const Subquotient* top = nullptr;
      for (const Subquotient& m : s->members)
        if (m.c.is_trivial() && m.u.order() == g->order()) top = &m;
      const Character& rho = irreducibles(top->ugrp.grp).back();
      CongruenceReport r4 = check_rw4(tuple, *top, rho,
                                      rw4_decompositions(top->ugrp.grp, rho), 1);
      if (!r4.holds) {
        note = "RW4 failed: " + r4.detail;
        return false;
      }
      ++instances;
    }
  }
  note = "100 units, " + std::to_string(instances) + " instances, " +
         std::to_string(witnesses) + " sigma-witnesses";
  return true;
}

bool adversarial_discrimination(std::string& note) {
  long rejections = 0;
  for (const CatalogEntry& entry : builtin_catalog()) {
    SweepConfig cfg;
    cfg.group_id = entry.id;
    cfg.p = entry.group->prime();
    cfg.k = 3;
    cfg.check = "adversarial";
    cfg.num_units = 4;
    cfg.seed = 17;
    cfg.parallel = false;
    int rw1 = 0, rw2 = 0, rw3a = 0;
    for (const CongruenceReport& r : run_sweep(cfg)) {
      if (r.holds) continue;
      if (r.detail.empty()) {
        note = entry.id + ": rejection without an obstruction certificate";
        return false;
      }
      if (r.condition == "RW1") ++rw1;
      if (r.condition == "RW2") ++rw2;
      if (r.condition == "RW3a") ++rw3a;
    }
    bool nonabelian = !entry.group->is_abelian();
    if (rw1 == 0 || rw3a == 0 || (nonabelian && rw2 == 0)) {
      note = entry.id + ": a condition produced no rejection";
      return false;
    }
    rejections += rw1 + rw2 + rw3a;
  }
  note = std::to_string(rejections) + " certified rejections";
  return true;
}

bool hom_side_functoriality(std::string& note) {
  long pr_xi = 0, norm_xi = 0, pr_t = 0;
  for (const CatalogEntry& entry : builtin_catalog()) {
    const GroupPtr& g = entry.group;
    const int k = working_precision_for_t(g);
    Rng rng(271 + g->order());
    GroupRingElement u = random_unit(g, g->prime(), k, rng);
    FunctorialityReport r = check_xi_t_functoriality(theta_tuple(u, subquotients_of(g)));
    if (!r.ok) {
      note = entry.id + ": " + r.detail;
      return false;
    }
    if (r.pr_xi_edges == 0 || r.norm_xi_edges == 0 || r.pr_t_edges == 0) {
      note = entry.id + ": an edge family is empty";
      return false;
    }
    pr_xi += r.pr_xi_edges;
    norm_xi += r.norm_xi_edges;
    pr_t += r.pr_t_edges;
  }
  note = std::to_string(pr_xi) + " quotient-edge and " + std::to_string(norm_xi) +
         " subgroup-edge character checks, " + std::to_string(pr_t) +
         " trace pushforwards";
  return true;
}

const char* kDeterminismManifest = R"({
  "format_version": 1,
  "tasks": [
    {"command": "sweep", "group": "heis3", "check": "wall", "units": 5, "seed": 1},
    {"command": "sweep", "group": "c9", "check": "snaith", "units": 2, "seed": 1},
    {"command": "brauer", "group": "mod27", "irr": 10}
  ]})";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool cli_determinism(const std::string& cli, std::string& note) {
  namespace fs = std::filesystem;
  if (cli.empty()) {
    ManifestResult r1 = run_manifest(parse_manifest(kDeterminismManifest), 1);
    ManifestResult r2 = run_manifest(parse_manifest(kDeterminismManifest), 2);
    bool ok = result_csv(r1) == result_csv(r2) && result_json(r1) == result_json(r2);
    note = ok ? "library runner, byte-identical" : "library runner outputs differ";
    return ok;
  }
  fs::path base = fs::temp_directory_path() / "pgk-acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path manifest = base / "manifest.json";
  std::ofstream(manifest) << kDeterminismManifest;
  for (const char* run : {"a", "b"}) {
    std::string cmd = "\"" + cli + "\" check --manifest \"" + manifest.string() +
                      "\" --out \"" + (base / run).string() + "\" > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) {
      note = "runner exited nonzero";
      return false;
    }
  }
  for (const char* file : {"report.csv", "report.json"}) {
    std::string a = slurp(base / "a" / file), b = slurp(base / "b" / file);
    if (a.empty() || a != b) {
      note = std::string(file) + " differs between runs";
      return false;
    }
  }
  note = "two separate processes, byte-identical reports";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "character tables: degree certificate and full orthogonality",
            [](std::string& n) { return character_tables(n); }, 60);
  criterion(2, "explicit induction: section identity and twist compatibility",
            [](std::string& n) { return induction_section_and_twists(n); }, 300);
  criterion(3, "subgroup-lattice Moebius recursion",
            [](std::string& n) { return moebius_lattices(n); });
  criterion(4, "determinant coherence across monomial pairs and induction",
            [](std::string& n) { return det_coherence(n); });
  criterion(5, "p-power congruence of determinant values",
            [](std::string& n) { return snaith_sweep(n); });
  criterion(6, "integral logarithm: integrality, torsion kernel, trace identity",
            [](std::string& n) { return integral_log_suite(n); }, 600);
  criterion(7, "congruence soundness with verified sigma-witnesses",
            [](std::string& n) { return congruence_soundness(n); }, 900);
  criterion(8, "adversarial discrimination with obstruction certificates",
            [](std::string& n) { return adversarial_discrimination(n); });
  criterion(9, "functoriality of the hom-side description",
            [](std::string& n) { return hom_side_functoriality(n); });
  criterion(10, "deterministic reports from identical manifest and seed",
            [&](std::string& n) { return cli_determinism(cli, n); });

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
