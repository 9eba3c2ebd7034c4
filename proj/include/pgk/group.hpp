#pragma once

#include "pgk/util.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pgk {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Subgroup of a group, stored as a sorted element-index set.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elems;  // sorted, contains identity

  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const;
  bool contains(const Subgroup& other) const;
  bool is_trivial() const { return elems.size() == 1; }
  std::string key() const;  // canonical serialization of the element set
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elems == b.elems; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  }
};

/// Homomorphism between two groups given by its full image table.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> map;  // element index -> element index

  int operator()(int g) const { return map[g]; }
  void validate() const;  // multiplicative, identity -> identity
  GroupHom then(const GroupHom& next) const;
  bool is_surjective() const;
  friend bool operator==(const GroupHom& a, const GroupHom& b) { return a.map == b.map; }
};

/// A subgroup materialized as a standalone FiniteGroup together with the
/// embedding of its element indices into the parent.
struct EmbeddedGroup {
  GroupPtr grp;
  std::vector<int> to_parent;            // grp index -> parent index
  std::vector<int> from_parent;          // parent index -> grp index or -1
};

/// A quotient materialized as a FiniteGroup with projection and a section.
struct QuotientGroup {
  GroupPtr grp;
  GroupHom proj;                         // parent -> grp
  std::vector<int> section;              // grp index -> coset representative
};

/// Finite p-group with a full multiplication table.  Immutable after
/// construction; derived data (classes, subgroups, ...) is computed lazily
/// behind a mutex and shared by concurrent readers.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static constexpr int kSubgroupCap = 128;

  static GroupPtr from_table(std::string name, long p, std::vector<std::vector<int>> table);

  int order() const { return n_; }
  long prime() const { return p_; }
  int identity() const { return id_; }
  const std::string& name() const { return name_; }

  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int by) const { return mul(mul(by, g), inv(by)); }  // by g by^-1
  int power(int g, long e) const;
  int element_order(int g) const;
  long exponent() const;
  bool is_abelian() const;

  // Conjugacy classes: partition sorted by class representative, where the
  // representative is the minimal element index.
  const std::vector<std::vector<int>>& classes() const;
  int class_of(int g) const;
  int class_rep(int ci) const { return classes()[ci][0]; }
  int num_classes() const { return static_cast<int>(classes().size()); }

  // Complete subgroup list, ordered by (size, lexicographic element set).
  const std::vector<Subgroup>& subgroups() const;
  std::vector<Subgroup> subgroups_up_to_conjugacy() const;

  Subgroup trivial_subgroup() const;
  Subgroup full_subgroup() const;
  Subgroup center() const;
  Subgroup commutator_subgroup() const;
  std::vector<Subgroup> normal_subgroups() const;
  bool is_normal(const Subgroup& h) const;

  Subgroup closure(std::vector<int> gens) const;
  Subgroup conjugate_subgroup(const Subgroup& h, int by) const;

  // Materializations (cached).
  EmbeddedGroup subgroup_group(const Subgroup& h) const;
  QuotientGroup quotient(const Subgroup& normal) const;
  QuotientGroup abelianization() const;  // G -> G/[G,G]

 private:
  FiniteGroup() = default;

  int n_ = 0;
  long p_ = 0;
  int a_ = 0;  // order = p^a
  int id_ = 0;
  std::string name_;
  std::vector<int> mul_;
  std::vector<int> inv_;

  mutable std::mutex mu_;
  mutable std::optional<std::vector<std::vector<int>>> classes_;
  mutable std::optional<std::vector<int>> class_of_;
  mutable std::optional<std::vector<Subgroup>> subgroups_;
  mutable std::map<std::string, EmbeddedGroup> sub_cache_;
  mutable std::map<std::string, QuotientGroup> quot_cache_;
};

/// Verlagerung G^ab -> U^ab computed by the coset-representative formula;
/// independent of the transversal (tested).
GroupHom transfer(const GroupPtr& g, const Subgroup& u);
/// Raw transfer map on G itself (g -> element of U^ab), with an explicit
/// transversal of the left cosets gU; used for independence tests.
std::vector<int> transfer_raw(const GroupPtr& g, const Subgroup& u,
                              const std::vector<int>& transversal,
                              const EmbeddedGroup& ugrp, const QuotientGroup& uab);
std::vector<int> left_transversal(const GroupPtr& g, const Subgroup& u);

/// Inductive Moebius function on the subgroup lattice: mu(1) = 1,
/// mu(U) = -sum_{V < U} mu(V).  Memoized per group.
long mobius_subgroup(const GroupPtr& g, const Subgroup& u);

/// One member of the finite-level subquotient index set: a subgroup U of
/// G/C containing the image of Z, for C normal with C \cap Z = 1.
struct Subquotient {
  Subgroup c;                 // normal subgroup of the ambient group
  QuotientGroup qbar;         // G/C
  Subgroup u;                 // subgroup of qbar.grp
  bool abelian = false;
  EmbeddedGroup ugrp;         // U materialized
  QuotientGroup uab;          // U -> U^ab

  std::string key() const { return c.key() + "|" + u.key(); }
};

struct SubquotientSet {
  GroupPtr g;
  Subgroup z;
  std::vector<Subquotient> members;

  const Subquotient* find(const std::string& key) const;
  std::vector<const Subquotient*> abelian_members() const;
};

/// All members (C, U) with C normal, C \cap Z = 1, im(Z) <= U <= G/C.
SubquotientSet subquotient_sets(const GroupPtr& g, const Subgroup& z);

std::string permutation_word(const std::vector<int>& elems);

}  // namespace pgk
