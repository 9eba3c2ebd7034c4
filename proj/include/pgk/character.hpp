#pragma once

#include "pgk/cyclotomic.hpp"
#include "pgk/group.hpp"
#include "pgk/trunc_cyclo.hpp"

namespace pgk {

/// Linear character in exponent form: chi(g) = zeta_N^{e[g]} with one
/// exponent per group element.  N is fixed per enumeration (the exponent of
/// G^ab); normalized() divides out the common factor for cross-group
/// comparison.
struct LinearChar {
  GroupPtr grp;
  long N = 1;
  std::vector<long> e;

  Cyclotomic value(int g) const { return Cyclotomic::zeta(N, e[g]); }
  TruncCyclo trunc_value(int g, int a, int W) const;
  bool is_trivial() const;
  long order() const;
  LinearChar operator*(const LinearChar& o) const;
  LinearChar inverse() const;
  LinearChar pow(long k) const;
  LinearChar restricted(const EmbeddedGroup& u) const;
  LinearChar normalized() const;  // minimal conductor
  std::string key() const;        // of the normalized form
  friend bool operator==(const LinearChar& a, const LinearChar& b) {
    LinearChar x = a.normalized(), y = b.normalized();
    return x.N == y.N && x.e == y.e;
  }
};

/// All |G^ab| linear characters, in deterministic (lexicographic exponent
/// vector) order; the first entry is the trivial character.
std::vector<LinearChar> linear_characters(const GroupPtr& g);

/// Coefficients of sum_i zeta_N^{exps[i]} reduced mod Phi_N — integer
/// arithmetic only; the workhorse for exact orthogonality of large abelian
/// character tables.
std::vector<Int> reduced_exponent_histogram(long N, const std::vector<long>& exps);

/// Class function with exact cyclotomic values; genuine characters and
/// virtual (integer-combination) characters share the representation.
class Character {
 public:
  Character() = default;
  Character(GroupPtr g, std::vector<Cyclotomic> class_values);
  static Character trivial(const GroupPtr& g);
  static Character regular(const GroupPtr& g);
  static Character from_linear(const LinearChar& chi);

  const GroupPtr& group() const { return g_; }
  const Cyclotomic& at_class(int ci) const { return v_[ci]; }
  const Cyclotomic& operator()(int g) const { return v_[g_->class_of(g)]; }
  Int degree() const;

  Character conj() const;
  Character tensor(const Character& o) const;
  Character tensor(const LinearChar& chi) const;
  Character restricted(const EmbeddedGroup& u) const;
  Character induced_to(const GroupPtr& big, const EmbeddedGroup& u) const;
  Character inflated_along(const QuotientGroup& q) const;  // *this lives on q.grp
  Character adams(long m) const;  // g -> chi(g^m)

  friend Character operator+(const Character& a, const Character& b);
  friend Character operator-(const Character& a, const Character& b);
  friend bool operator==(const Character& a, const Character& b);
  friend bool operator!=(const Character& a, const Character& b) { return !(a == b); }

  std::string key() const;  // canonical serialization of the value vector

 private:
  GroupPtr g_;
  std::vector<Cyclotomic> v_;
};

Rat schur_inner(const Character& a, const Character& b);

/// Complete list of irreducible characters via the monomial-induction sweep,
/// certified by sum of squared degrees = |G|; cached per group.  Order:
/// degree, then value-vector serialization.
const std::vector<Character>& irreducibles(const GroupPtr& g);

/// Report of the finite-level twist-surjection check: every irreducible of G
/// should equal infl(rho over G/Z) tensored with a linear character pulled
/// back from the designated abelian quotient.
struct SurjectionReport {
  bool complete = false;
  // witness[i] = (gamma-character index, G/Z-irreducible index) for irr i
  std::vector<std::pair<int, int>> witness;
  std::vector<int> uncovered;
};

SurjectionReport irr_surjection_check(const GroupPtr& g, const QuotientGroup& gamma,
                                      const Subgroup& z);

}  // namespace pgk
