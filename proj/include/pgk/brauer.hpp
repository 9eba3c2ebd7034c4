#pragma once

#include "pgk/character.hpp"

#include <map>

namespace pgk {

/// Node of the induction poset: a subgroup together with a linear character
/// on it, the character stored in normalized exponent form aligned with
/// u.elems (parent element indexing).
struct CharPair {
  Subgroup u;
  long N = 1;            // normalized conductor
  std::vector<long> e;   // exponent of phi at u.elems[i], normalized

  std::string key() const;
  Cyclotomic value_at_parent(int g) const;  // g must lie in u
  friend bool operator<(const CharPair& a, const CharPair& b) {
    if (!(a.u == b.u)) return a.u < b.u;
    if (a.N != b.N) return a.N < b.N;
    return a.e < b.e;
  }
  friend bool operator==(const CharPair& a, const CharPair& b) {
    return a.u == b.u && a.N == b.N && a.e == b.e;
  }
};

CharPair make_pair_from_linear(const Subgroup& u, const LinearChar& chi_on_materialized);
CharPair conjugate_pair(const CharPair& x, int by);

/// The full poset M_G of (subgroup, linear character) pairs, with the order
/// (U, phi) <= (U', phi') iff U <= U' and phi'|_U = phi, conjugation orbits,
/// and the memoized incidence Moebius function.
class CharacterPoset {
 public:
  explicit CharacterPoset(GroupPtr g);

  const GroupPtr& group() const { return g_; }
  const std::vector<CharPair>& nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int index_of(const CharPair& x) const;  // throws on unknown node
  bool leq(int x, int y) const { return leq_[static_cast<size_t>(x) * nodes_.size() + y]; }
  long mobius(int x, int y) const;        // requires leq(x, y)
  int orbit_rep(int x) const { return orbit_rep_[x]; }       // minimal conjugate
  const std::vector<int>& orbit_of_rep(int rep) const;       // sorted node indices
  const std::vector<int>& orbit_reps() const { return reps_; }

 private:
  GroupPtr g_;
  std::vector<CharPair> nodes_;
  std::vector<char> leq_;
  std::vector<int> orbit_rep_;
  std::vector<int> reps_;
  std::map<int, std::vector<int>> orbits_;
  mutable std::map<std::pair<int, int>, long> mu_;
  mutable std::mutex mu_mutex_;
};

/// Element of the free abelian group on conjugacy classes of pairs; keys are
/// canonical (minimal) orbit representatives.
struct BrauerElement {
  GroupPtr g;
  std::map<CharPair, long> terms;  // nonzero coefficients only

  friend bool operator==(const BrauerElement& a, const BrauerElement& b) {
    return a.terms == b.terms;
  }
};

/// Explicit Brauer induction: the Moebius-weighted coefficient of each orbit
/// class, asserted integral.
BrauerElement brauer_coefficients(const CharacterPoset& poset, const Character& rho);

/// True iff sum of alpha * Ind_U^G(phi) reproduces rho exactly in R(G).
bool verify_section(const BrauerElement& b, const Character& rho);

/// Transport along the twist action (U, phi) -> (U, chi|_U * phi).
BrauerElement twist(const LinearChar& chi, const BrauerElement& b,
                    const CharacterPoset& poset);

/// Induce a single pair's character to the ambient group.
Character induce_pair(const GroupPtr& g, const CharPair& x);

/// Shared poset instance per group (built once, concurrent readers safe).
const CharacterPoset& cached_poset(const GroupPtr& g);

}  // namespace pgk
