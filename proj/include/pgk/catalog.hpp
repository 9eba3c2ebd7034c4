#pragma once

#include "pgk/group.hpp"

namespace pgk {

GroupPtr cyclic_group(long p, int a);
GroupPtr elementary_abelian(long p, int rank);
GroupPtr heisenberg_group(long p);     // order p^3, exponent p (p odd)
GroupPtr modular_group(long p);        // order p^3, exponent p^2 (p odd)
GroupPtr quaternion8();                // p = 2 engine tests
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
/// (C_p x C_p) : C_{p^2}, the generator acting by the unipotent matrix
/// [[1,1],[0,1]].  Finite-level model of a group with a designated cyclic
/// quotient whose kernel misses a central subgroup.
GroupPtr onedim_model(long p);

GroupPtr permutation_group(std::string name, long p,
                           const std::vector<std::vector<int>>& generators);

struct CatalogEntry {
  std::string id;
  std::string description;
  GroupPtr group;
};

/// The built-in groups every sweep runs over (orders <= 128).
const std::vector<CatalogEntry>& builtin_catalog();
GroupPtr catalog_group(const std::string& id);  // throws on unknown id

}  // namespace pgk
