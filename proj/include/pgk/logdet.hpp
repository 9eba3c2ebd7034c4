#pragma once

#include "pgk/brauer.hpp"
#include "pgk/group_ring.hpp"
#include "pgk/trunc_cyclo.hpp"

namespace pgk {

/// Image of a group-ring element in T(R) = R/[R,R]: one coefficient per
/// conjugacy class.  Two modes share the type: truncated (mod p^k, k > 0)
/// and exact rational (k == 0), the latter used on the additive side where
/// no precision may be lost.
struct TraceElement {
  GroupPtr g;
  long p = 0;
  int k = 0;  // 0 => exact-rational mode
  std::uint64_t m = 0;
  std::vector<std::uint64_t> ct;  // truncated coefficients per class
  std::vector<Rat> cx;            // exact coefficients per class

  static TraceElement zero_trunc(GroupPtr g, long p, int k);
  static TraceElement zero_exact(GroupPtr g, long p);
  bool exact() const { return k == 0; }
  bool is_zero() const;
  /// Truncated view of an exact element (coefficients must be p-integral).
  TraceElement reduced_to(int k2) const;
  /// Push along a group homomorphism (class of g -> class of f(g)).
  TraceElement mapped_along(const GroupHom& f) const;
  bool congruent(const TraceElement& other, int j) const;  // mod p^j

  friend TraceElement operator+(const TraceElement& a, const TraceElement& b);
  friend TraceElement operator-(const TraceElement& a, const TraceElement& b);
  TraceElement scalar_times(const Rat& r) const;  // exact mode only
  friend bool operator==(const TraceElement& a, const TraceElement& b);
  friend bool operator!=(const TraceElement& a, const TraceElement& b) { return !(a == b); }
  std::string str() const;
};

/// Class-collapse map tau: sum coefficients within each conjugacy class.
TraceElement tau(const GroupRingElement& x);
/// Class-level p-power map: class of g -> class of g^p, extended linearly.
TraceElement frobenius_phi(const TraceElement& t);

/// Slack needed by the p^V-scaled logarithm series over a ring whose
/// radical chain has the given length bound.
int log_slack(long p, int series_cap);

/// tau(log u) for a one-unit (u = 1 mod (p, augmentation ideal)), computed
/// through the scaled series at internal precision u.k; the result carries
/// precision u.k - slack.
TraceElement tau_log(const GroupRingElement& u);

/// Integral logarithm L(u) = tau(log u) - (1/p) Phi(tau(log u)).  Input at
/// precision k is internally recomputed at the ledger precision; the result
/// carries target precision and certified-integral coefficients.
TraceElement integral_log(const GroupRingElement& u, int target_k);
/// Extension to arbitrary units: L(u) = L(u^{p-1}) / (p-1).
TraceElement integral_log_any_unit(const GroupRingElement& u, int target_k);

/// Teichmueller representative of r in Z/p^k (the torsion lift with
/// omega^{p-1} = 1); requires r prime to p.
std::uint64_t teichmuller(long p, int k, std::uint64_t r);

/// Tr(t)(chi) = sum over classes of t_c * chi(rep_c)  (class-representative
/// convention, used consistently on both sides of every diagram).
Cyclotomic trace_eval(const TraceElement& t, const Character& chi);
TruncCyclo trace_eval_trunc(const TraceElement& t, const Character& chi, int a, int W);

/// Inverse of Tr via column orthogonality:
/// t_c = (|c| / |G|) sum over irr chi of v(chi) * conj(chi(rep_c)).
TraceElement trace_invert_exact(const GroupPtr& g, const std::vector<Cyclotomic>& values);
/// Truncated variant: the division by |G| = p^a lowers the precision by a;
/// non-scalar or non-divisible results throw (p-integrality violation).
TraceElement trace_invert_trunc(const GroupPtr& g, const std::vector<TruncCyclo>& values);

/// One (U, phi) with Ind phi = the irreducible, stored in poset-pair form.
/// All pairs up to conjugacy are collected for independence tests; cached.
const std::vector<CharPair>& monomial_pairs(const GroupPtr& g, int irr_index);

/// Det(u)(chi) evaluated through a monomial pair: phi applied linearly to
/// theta_U(u).  Value ring: conductor p^a, precision u.k.
TruncCyclo det_eval(const GroupRingElement& u, int irr_index, int a);
std::vector<TruncCyclo> det_eval_all_pairs(const GroupRingElement& u, int irr_index, int a);
/// Multiplicative extension to virtual characters via irreducible
/// decomposition (used for the Adams argument of **L**).
TruncCyclo det_eval_virtual(const GroupRingElement& u, const Character& chi, int a);

/// Evaluate phi (a poset pair on a subgroup of u.g) on an element living
/// over that subgroup's materialized abelianization.
TruncCyclo pair_eval_on_ab(const CharPair& phi, const GroupRingElement& x_over_ab, int a,
                           const EmbeddedGroup& ug, const QuotientGroup& uab);

/// Hom-side integral logarithm at the finite level (Psi acts as the
/// identity on the collapsed value ring):
/// **L**(Det u)(chi) = (1/p) log( Det(u)(chi)^p / Det(u)(psi_p chi) ).
/// The input precision u.k is the working precision; the declared precision
/// of the result is u.k - slack - 1.
TruncCyclo hom_L(const GroupRingElement& u, int irr_index, int a);

/// Snaith congruence Det(u)(chi)^p / Det(u)(psi_p chi) = 1 mod p.
bool snaith_congruence_holds(const GroupRingElement& u, int irr_index, int a);

/// Group-ring element with coefficients extended to the truncated
/// cyclotomic ring, the home of the twist operator Tw_phi: gamma ->
/// phi(gamma) gamma.
struct TwistedRingElement {
  GroupPtr g;
  long p = 0;
  int a = 0;
  int W = 0;
  std::vector<TruncCyclo> c;

  friend TwistedRingElement operator*(const TwistedRingElement& x, const TwistedRingElement& y);
  friend bool operator==(const TwistedRingElement& x, const TwistedRingElement& y);
  friend bool operator!=(const TwistedRingElement& x, const TwistedRingElement& y) {
    return !(x == y);
  }
};

TwistedRingElement to_twisted(const GroupRingElement& x, int a, int W);
TwistedRingElement twist_operator(const LinearChar& phi, const TwistedRingElement& x);
/// Det over an abelian group with extended coefficients: sum c_g chi(g).
TruncCyclo twisted_det_eval(const TwistedRingElement& x, const LinearChar& chi);

/// BrInd((x_V))(rho) = product over the Brauer terms of
/// Det_{V^ab}(x_V)(phi)^n, entries drawn from the tuple at the member whose
/// ambient is mem (a member of tuple.s); rho is an irreducible of the
/// member's materialized group.
TruncCyclo brind_eval(const UnitTuple& tuple, const Subquotient& mem,
                      const CharacterPoset& member_poset, const Character& rho,
                      const BrauerElement& b, int a);

/// Xi_U of a tuple: Brauer coefficients + BrInd for every irreducible of
/// the member's group.  Values carry precision tuple.k.
struct HomValue {
  GroupPtr h;  // the member's materialized group
  int a = 0;
  std::vector<TruncCyclo> at_irr;  // indexed like irreducibles(h)
};

HomValue xi_of_member(const UnitTuple& tuple, const Subquotient& mem, int a);

/// t_U = Tr^{-1}(**L**(Xi_U)); declared precision tuple.k - slack - 1 - a_G.
TraceElement t_of_member(const UnitTuple& tuple, const Subquotient& mem, int a);
/// **L** applied to a HomValue's entries (needs the tuple for nothing more);
/// psi_p on the member's irreducibles, same Psi-collapse convention.
std::vector<TruncCyclo> hom_L_of_values(const HomValue& xi);

/// Probe for the unspecified modified trace: compares Tr(L(theta_V u))(rho)
/// with **L**(Det u)(Ind rho) for linear rho of V and reports the minimal
/// p-valuation of the discrepancy.  The two paths genuinely disagree for
/// proper subgroups in general -- induction does not commute with the Adams
/// operation, which is what the modified trace corrects for -- so this is a
/// measurement, not a congruence check.  For V = G the norm is plain
/// deflation to the abelianization and agreement is full.
struct ModTraceProbe {
  int declared_precision = 0;
  int window = 0;          // digits actually comparable (min precision seen)
  int min_agreement = 0;   // digits to which the two paths agree
};
ModTraceProbe modified_trace_probe(const GroupRingElement& u, const Subgroup& v, int a);

}  // namespace pgk
