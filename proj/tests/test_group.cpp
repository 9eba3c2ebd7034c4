#include <doctest.h>

#include "pgk/catalog.hpp"

#include <set>

using namespace pgk;

TEST_CASE("group axioms hold for every catalog entry") {
  for (const CatalogEntry& e : builtin_catalog()) {
    const GroupPtr& g = e.group;
    CAPTURE(e.id);
    const int n = g->order();
    // identity, inverses, associativity on a pseudorandom triple sample
    for (int a = 0; a < n; ++a) {
      CHECK(g->mul(g->identity(), a) == a);
      CHECK(g->mul(a, g->inv(a)) == g->identity());
    }
    for (int a = 0; a < n; a += 3)
      for (int b = 1; b < n; b += 5)
        for (int c = 2; c < n; c += 7)
          CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
    // p-group: every element order is a power of p
    for (int a = 0; a < n; ++a) {
      int o = g->element_order(a);
      while (o % g->prime() == 0) o /= static_cast<int>(g->prime());
      CHECK(o == 1);
    }
  }
}

TEST_CASE("conjugacy classes partition the group and have p-power sizes") {
  for (const char* id : {"heis3", "mod27", "sd81", "q8"}) {
    GroupPtr g = catalog_group(id);
    CAPTURE(id);
    std::set<int> seen;
    long total = 0;
    for (const auto& cls : g->classes()) {
      total += static_cast<long>(cls.size());
      for (int x : cls) CHECK(seen.insert(x).second);
      // all members really conjugate to the representative
      bool found = false;
      for (int by = 0; by < g->order() && !found; ++by)
        found = g->conj(cls[0], by) == cls.back();
      CHECK(found);
    }
    CHECK(total == g->order());
  }
}

TEST_CASE("known class counts") {
  CHECK(catalog_group("heis3")->num_classes() == 11);
  CHECK(catalog_group("mod27")->num_classes() == 11);
  CHECK(catalog_group("q8")->num_classes() == 5);
  CHECK(catalog_group("c27")->num_classes() == 27);
}

TEST_CASE("subgroup lattice: closure, counts, normality") {
  GroupPtr h = catalog_group("heis3");
  // extraspecial 3^3 exponent 3: 1 + 13 + 4 + 1 subgroups
  CHECK(h->subgroups().size() == 19);
  for (const Subgroup& s : h->subgroups()) {
    CHECK(h->order() % s.order() == 0);
    // closed under multiplication
    for (int a : s.elems)
      for (int b : s.elems) CHECK(s.contains(h->mul(a, b)));
  }
  CHECK(h->center().order() == 3);
  CHECK(h->commutator_subgroup() == h->center());
  CHECK(h->normal_subgroups().size() == 7);  // 1, Z, four maximals, G

  GroupPtr e = catalog_group("e9");
  CHECK(e->subgroups().size() == 6);  // 1, four C3, G
  for (const Subgroup& s : e->subgroups()) CHECK(e->is_normal(s));
}

TEST_CASE("quotients and abelianization") {
  GroupPtr h = catalog_group("heis3");
  QuotientGroup q = h->quotient(h->center());
  CHECK(q.grp->order() == 9);
  CHECK(q.grp->is_abelian());
  q.proj.validate();
  QuotientGroup ab = h->abelianization();
  CHECK(ab.grp->order() == 9);
  // section composed with projection is the identity on the quotient
  for (int i = 0; i < q.grp->order(); ++i) CHECK(q.proj(q.section[i]) == i);

  GroupPtr m = catalog_group("mod27");
  CHECK(m->abelianization().grp->order() == 9);
  // the commutator subgroup eats a^3, so the abelianization is C3 x C3 just
  // like heis3's; the two groups differ in the exponent of the group itself
  CHECK(m->abelianization().grp->exponent() == 3);
  CHECK(m->exponent() == 9);
  CHECK(catalog_group("heis3")->exponent() == 3);
}

TEST_CASE("subgroup materialization round-trips") {
  GroupPtr g = catalog_group("sd81");
  for (const Subgroup& s : g->subgroups_up_to_conjugacy()) {
    EmbeddedGroup eg = g->subgroup_group(s);
    CHECK(eg.grp->order() == s.order());
    for (int i = 0; i < eg.grp->order(); ++i) {
      CHECK(eg.from_parent[eg.to_parent[i]] == i);
      for (int j = 0; j < eg.grp->order(); ++j)
        CHECK(eg.to_parent[eg.grp->mul(i, j)] ==
              g->mul(eg.to_parent[i], eg.to_parent[j]));
    }
  }
}

TEST_CASE("transfer is independent of the transversal and lands in U^ab") {
  GroupPtr g = catalog_group("heis3");
  for (const Subgroup& u : g->subgroups()) {
    if (u.order() == 1 || u.order() == g->order()) continue;
    EmbeddedGroup ug = g->subgroup_group(u);
    QuotientGroup uab = ug.grp->abelianization();
    std::vector<int> t1 = left_transversal(g, u);
    // a second transversal: replace each representative by rep * u-element
    std::vector<int> t2 = t1;
    for (size_t i = 0; i < t2.size(); ++i)
      t2[i] = g->mul(t2[i], u.elems[i % u.elems.size()]);
    std::vector<int> r1 = transfer_raw(g, u, t1, ug, uab);
    std::vector<int> r2 = transfer_raw(g, u, t2, ug, uab);
    CHECK(r1 == r2);
  }
}

TEST_CASE("transfer hom agrees with the raw map and is multiplicative") {
  GroupPtr g = catalog_group("mod27");
  for (const Subgroup& u : g->subgroups()) {
    if (u.order() != 9) continue;
    GroupHom v = transfer(g, u);
    v.validate();
  }
}

TEST_CASE("subgroup Moebius function satisfies the defining recursion") {
  for (const CatalogEntry& e : builtin_catalog()) {
    const GroupPtr& g = e.group;
    CAPTURE(e.id);
    CHECK(mobius_subgroup(g, g->trivial_subgroup()) == 1);
    for (const Subgroup& u : g->subgroups()) {
      if (u.order() == 1) continue;
      long s = 0;
      for (const Subgroup& v : g->subgroups())
        if (u.contains(v)) s += mobius_subgroup(g, v);
      CHECK(s == 0);
    }
  }
}

TEST_CASE("Moebius values on known lattices") {
  GroupPtr e9 = catalog_group("e9");
  // C3 x C3: mu(1) = 1, mu(C3) = -1 (x4), mu(G) = 3 = p
  long mu_top = mobius_subgroup(e9, e9->full_subgroup());
  CHECK(mu_top == 3);
  GroupPtr c9 = catalog_group("c9");
  CHECK(mobius_subgroup(c9, c9->full_subgroup()) == 0);  // non-squarefree chain
}

TEST_CASE("subquotient index set enumerates all (C, U) with C normal") {
  GroupPtr h = catalog_group("heis3");
  SubquotientSet s = subquotient_sets(h, h->trivial_subgroup());
  CHECK(s.members.size() == 34);
  for (const Subquotient& m : s.members) {
    CHECK(h->is_normal(m.c));
    CHECK(m.qbar.grp->order() * m.c.order() == h->order());
    CHECK(m.abelian == m.ugrp.grp->is_abelian());
    CHECK(s.find(m.key()) == &m);
  }
  // with a central Z, only C with C \cap Z = 1 are kept
  SubquotientSet sz = subquotient_sets(h, h->center());
  for (const Subquotient& m : sz.members) {
    for (int x : m.c.elems)
      if (x != h->identity()) CHECK(!h->center().contains(x));
  }
  CHECK(sz.members.size() < s.members.size());
}
