#pragma once

#include "pgk/group.hpp"

#include <functional>
#include <optional>

namespace pgk {

/// Element of (Z/p^k)[G], coefficients indexed by group elements.  The ring
/// is local (G a p-group), so an element is a unit iff its augmentation is a
/// unit mod p, and Newton iteration from the scalar inverse converges.
struct GroupRingElement {
  GroupPtr g;
  long p = 0;
  int k = 0;
  std::uint64_t m = 0;  // p^k
  std::vector<std::uint64_t> c;

  static GroupRingElement zero(GroupPtr g, long p, int k);
  static GroupRingElement one(GroupPtr g, long p, int k);
  static GroupRingElement of_element(GroupPtr g, long p, int k, int el,
                                     std::uint64_t coef = 1);

  std::uint64_t augmentation() const;
  bool is_zero() const;
  bool is_unit() const { return augmentation() % p != 0; }
  GroupRingElement inverse() const;  // throws on non-units
  GroupRingElement pow(long e) const;
  GroupRingElement scalar_times(std::uint64_t s) const;
  bool divisible_by(int j) const;  // every coefficient divisible by p^j

  /// Linear extension of a group homomorphism (deflation when surjective,
  /// linearized transfer when not).
  GroupRingElement mapped_along(const GroupHom& f) const;

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  GroupRingElement operator-() const;
  GroupRingElement& operator+=(const GroupRingElement& b) { return *this = *this + b; }
  GroupRingElement& operator-=(const GroupRingElement& b) { return *this = *this - b; }
  GroupRingElement& operator*=(const GroupRingElement& b) { return *this = *this * b; }
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator!=(const GroupRingElement& a, const GroupRingElement& b) {
    return !(a == b);
  }

  std::string str() const;
};

GroupRingElement random_element(const GroupPtr& g, long p, int k, Rng& rng);
GroupRingElement random_unit(const GroupPtr& g, long p, int k, Rng& rng);
/// 1 + x with x in the radical (p, augmentation ideal): the domain of the
/// integral logarithm.
GroupRingElement random_one_unit(const GroupPtr& g, long p, int k, Rng& rng);

/// Determinant over the commutative ring (Z/p^k)[A] (A abelian) by Bird's
/// division-free algorithm; falls back to valuation-pivot elimination when A
/// is trivial.  Exposed for the two-implementation determinant oracle.
GroupRingElement ring_determinant(std::vector<std::vector<GroupRingElement>> mat);
/// Reference determinant by Laplace expansion (exponential; n <= 6).
GroupRingElement ring_determinant_laplace(const std::vector<std::vector<GroupRingElement>>& mat);

/// theta_U: write right multiplication by u as a [G:U] x [G:U] matrix over
/// (Z/p^k)[U] via a coset transversal, deflate the entries to U^ab, and take
/// the determinant.  Result lives over subgroup_group(U).grp->abelianization().grp.
/// A custom transversal can be supplied for independence tests.
GroupRingElement theta(const GroupRingElement& u, const Subgroup& U);
GroupRingElement theta_with_transversal(const GroupRingElement& u, const Subgroup& U,
                                        const std::vector<int>& transversal);

/// Homomorphism from an elementwise index map; validated.
GroupHom hom_from_fn(GroupPtr src, GroupPtr dst, const std::function<int(int)>& fn);

/// sigma for a finite set of automorphisms of an abelian group A:
/// x -> sum of images.  Covers both the conjugation trace sigma^U_A and the
/// Wall-congruence action of G/G' on G'^ab.
GroupRingElement sigma_apply(const GroupRingElement& x, const std::vector<GroupHom>& action);

/// One automorphism of the materialized A per coset of A in U (conjugation
/// trace convention); requires A abelian and normal in U.
std::vector<GroupHom> conjugation_action(const GroupPtr& amb, const Subgroup& u,
                                         const Subgroup& a);
/// Action of a transversal of G' in G on G'^ab by conjugation (G' normal).
std::vector<GroupHom> conjugation_action_on_ab(const GroupPtr& g, const Subgroup& gprime);

struct SigmaSolveResult {
  bool member = false;
  std::optional<GroupRingElement> witness;   // sigma(witness) == y when member
  std::string obstruction;                   // residue description otherwise
};

/// Membership of y in the image of sigma, by valuation-pivot diagonalization
/// of the sigma matrix over Z/p^k; the witness is re-verified before return.
SigmaSolveResult sigma_image_solve(const GroupRingElement& y,
                                   const std::vector<GroupHom>& action);

/// Dense linear solve M x = y over Z/p^k (columns of M indexed like x).
std::optional<std::vector<std::uint64_t>> solve_mod_pk(
    std::vector<std::vector<std::uint64_t>> mat, std::vector<std::uint64_t> y,
    long p, int k, std::string* obstruction = nullptr);

using SubqSetPtr = std::shared_ptr<const SubquotientSet>;

/// Candidate for the congruence lab: one unit of (Z/p^k)[V^ab] per member
/// (C, V) of the subquotient index set, keyed by member key.
struct UnitTuple {
  SubqSetPtr s;
  long p = 0;
  int k = 0;
  std::map<std::string, GroupRingElement> entries;

  const GroupRingElement& at(const std::string& member_key) const;
};

/// The canonical tuple of a unit: entry at (C, V) is theta_V of the
/// deflation of u to G/C.
UnitTuple theta_tuple(const GroupRingElement& u, const SubqSetPtr& s);

}  // namespace pgk
