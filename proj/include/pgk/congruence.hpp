#pragma once

#include "pgk/logdet.hpp"

namespace pgk {

/// Outcome of one congruence check at a declared truncation.  "holds"
/// verdicts carry the witness that was re-verified (e.g. a sigma-preimage);
/// failures carry the exact obstruction.
struct CongruenceReport {
  std::string condition;  // RW1 | RW2 | RW3 | RW3a | RW4 | Wall | Snaith
  std::string group;
  std::string instance;   // which edge / (U, A) pair / character
  bool holds = false;
  bool tuple_level = false;  // verdict vocabulary candidate/rejected vs holds/fails
  std::string detail;     // witness summary or obstruction certificate
  long p = 0;
  int k = 0;

  std::string verdict() const {
    if (tuple_level) return holds ? "candidate" : "rejected";
    return holds ? "holds" : "fails";
  }
};

/// Shared, cached subquotient index set with Z = 1 (every irreducible of
/// every member is then inflated from the member itself, which keeps BrInd
/// well-defined at the finite level).
SubqSetPtr subquotients_of(const GroupPtr& g);

/// (RW1): pr-compatibility along quotient edges between members, and
/// norm-compatibility (determinant of the multiplication matrix) along
/// abelian subgroup edges.  First violated edge is reported.
CongruenceReport check_rw1(const UnitTuple& tuple);
/// (RW2): for every member U and every V <= U, conjugation by each element
/// of U transports the entry at V to the entry at V^g.
CongruenceReport check_rw2(const UnitTuple& tuple);
/// (RW3) Moebius-Wall at one instance: U a member over the ambient G/C,
/// A abelian normal in U.
CongruenceReport check_rw3(const UnitTuple& tuple, const Subquotient& mem_u,
                           const Subgroup& a);
/// (RW3a) torsion congruence, the [U:A] = p two-term instance.
CongruenceReport check_rw3a(const UnitTuple& tuple, const Subquotient& mem_u,
                            const Subgroup& a);
/// All admissible (U, A) instances of RW3 / RW3a for a tuple.
std::vector<CongruenceReport> check_rw3_all(const UnitTuple& tuple);
std::vector<CongruenceReport> check_rw3a_all(const UnitTuple& tuple);
/// Wall congruence for a unit and an index-p subgroup:
/// theta_{G'}(u) - ver(pr u) in im(sigma).
CongruenceReport check_wall(const GroupRingElement& u, const Subgroup& gprime);
/// (RW4): BrInd values agree across several Brauer decompositions of rho
/// over the member's group; every decomposition is first verified against
/// the section identity (sum n Ind phi = rho), a failure there throws.
CongruenceReport check_rw4(const UnitTuple& tuple, const Subquotient& mem,
                           const Character& rho,
                           const std::vector<BrauerElement>& decompositions, int a);
/// Canonical decomposition plus variants differing by cancelling virtual
/// induction relations (and, when available, by a conjugate-pair rewrite).
std::vector<BrauerElement> rw4_decompositions(const GroupPtr& h, const Character& rho);

/// Aggregate Phi-tilde candidacy: all of RW1, RW2, RW3 and RW3a instances
/// and RW4 at the working precision; verdict "candidate" or "rejected"
/// with the first violated instance.
CongruenceReport phi_tilde_membership(const UnitTuple& tuple);

/// Functoriality of the Hom-description data assigned to a tuple: along
/// every quotient edge pr(Xi_U) = Xi_V (inflation on characters) and
/// pr(t_U) = t_V at the common declared precision; along every subgroup
/// edge N(Xi_U) = Xi_V (induction on characters, Xi extended
/// multiplicatively over the irreducible decomposition).
struct FunctorialityReport {
  bool ok = false;
  int pr_xi_edges = 0;
  int norm_xi_edges = 0;
  int pr_t_edges = 0;
  std::string detail;
};
FunctorialityReport check_xi_t_functoriality(const UnitTuple& tuple);

/// Adversarial tuple: a theta-tuple with one entry multiplied by a random
/// nontrivial unit (stays a tuple of units; interesting failures live here).
/// With one_unit the multiplier is ~1 mod (p, augmentation) -- the subtlest
/// perturbation, but invisible to mod-p congruences on the smallest groups
/// where the sigma-image contains p*Lambda; a general unit also moves the
/// mod-p scalar.  Returns the perturbed member key through out param.
UnitTuple perturbed_theta_tuple(const GroupRingElement& u, const SubqSetPtr& s, Rng& rng,
                                std::string* perturbed_key = nullptr,
                                bool one_unit = true);

/// Randomized sweep driver: deterministic given the seed, parallelized over
/// units with OpenMP unless parallel == false (serial reference path).
struct SweepConfig {
  std::string group_id;
  long p = 3;
  int k = 3;
  int num_units = 10;
  std::uint64_t seed = 1;
  std::string check = "wall";  // wall | rw_all | snaith | adversarial
  bool parallel = true;
};

std::vector<CongruenceReport> run_sweep(const SweepConfig& cfg);

std::string report_csv_header();
std::string report_csv_row(const CongruenceReport& r);

}  // namespace pgk
