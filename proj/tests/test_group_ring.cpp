#include <doctest.h>

#include "pgk/catalog.hpp"
#include "pgk/group_ring.hpp"

using namespace pgk;

TEST_CASE("ring arithmetic and units") {
  GroupPtr g = catalog_group("heis3");
  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    GroupRingElement a = random_element(g, 3, 3, rng);
    GroupRingElement b = random_element(g, 3, 3, rng);
    GroupRingElement c = random_element(g, 3, 3, rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * GroupRingElement::one(g, 3, 3) == a);
  }
  for (int i = 0; i < 50; ++i) {
    GroupRingElement u = random_unit(g, 3, 3, rng);
    CHECK(u.is_unit());
    CHECK(u * u.inverse() == GroupRingElement::one(g, 3, 3));
    CHECK(u.pow(3) == u * u * u);
  }
  // augmentation is a ring hom onto Z/p^k
  GroupRingElement x = random_element(g, 3, 3, rng);
  GroupRingElement y = random_element(g, 3, 3, rng);
  CHECK((x * y).augmentation() == x.augmentation() * y.augmentation() % 27);
}

TEST_CASE("one-units have augmentation 1 mod p and are closed under product") {
  GroupPtr g = catalog_group("c9");
  Rng rng(55);
  for (int i = 0; i < 30; ++i) {
    GroupRingElement u = random_one_unit(g, 3, 4, rng);
    GroupRingElement v = random_one_unit(g, 3, 4, rng);
    CHECK(u.augmentation() % 3 == 1);
    CHECK((u * v).augmentation() % 3 == 1);
  }
}

TEST_CASE("two determinant implementations agree") {
  GroupPtr a = catalog_group("c9");  // abelian entry ring
  Rng rng(7);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<std::vector<GroupRingElement>> mat(
          n, std::vector<GroupRingElement>(n, GroupRingElement::zero(a, 3, 3)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mat[i][j] = random_element(a, 3, 3, rng);
      CHECK(ring_determinant(mat) == ring_determinant_laplace(mat));
    }
  }
}

TEST_CASE("determinant is multiplicative on 2x2 matrices") {
  GroupPtr a = catalog_group("e9");
  Rng rng(13);
  auto rnd = [&] {
    std::vector<std::vector<GroupRingElement>> m(
        2, std::vector<GroupRingElement>(2, GroupRingElement::zero(a, 3, 3)));
    for (auto& row : m)
      for (auto& x : row) x = random_element(a, 3, 3, rng);
    return m;
  };
  for (int t = 0; t < 10; ++t) {
    auto m1 = rnd(), m2 = rnd();
    std::vector<std::vector<GroupRingElement>> prod(
        2, std::vector<GroupRingElement>(2, GroupRingElement::zero(a, 3, 3)));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) prod[i][j] += m1[i][l] * m2[l][j];
    CHECK(ring_determinant(prod) == ring_determinant(m1) * ring_determinant(m2));
  }
}

TEST_CASE("theta is independent of the coset transversal") {
  GroupPtr g = catalog_group("heis3");
  Rng rng(29);
  GroupRingElement u = random_unit(g, 3, 3, rng);
  for (const Subgroup& s : g->subgroups()) {
    if (s.order() == 1 || s.order() == 27) continue;
    std::vector<int> t1 = left_transversal(g, s);
    std::vector<int> t2 = t1;
    for (size_t i = 0; i < t2.size(); ++i)
      t2[i] = g->mul(t2[i], s.elems[(i + 1) % s.elems.size()]);
    CHECK(theta_with_transversal(u, s, t1) == theta_with_transversal(u, s, t2));
  }
}

TEST_CASE("theta of a central element is its deflated [G:U]-th power") {
  GroupPtr g = catalog_group("mod27");
  for (const Subgroup& s : g->subgroups()) {
    if (s.order() != 9) continue;
    EmbeddedGroup sg = g->subgroup_group(s);
    QuotientGroup sab = sg.grp->abelianization();
    for (int z : g->center().elems) {
      GroupRingElement x = GroupRingElement::of_element(g, 3, 3, z);
      GroupRingElement tz = theta(x, s);
      int zbar = sab.proj(sg.from_parent[z]);  // z central => z in every maximal
      GroupRingElement expect =
          GroupRingElement::of_element(sab.grp, 3, 3,
                                       sab.grp->power(zbar, g->order() / s.order()));
      CHECK(tz == expect);
    }
  }
}

TEST_CASE("theta is multiplicative") {
  GroupPtr g = catalog_group("heis3");
  Rng rng(31);
  for (const Subgroup& s : g->subgroups()) {
    if (s.order() != 9 && s.order() != 3) continue;
    GroupRingElement u = random_unit(g, 3, 3, rng);
    GroupRingElement v = random_unit(g, 3, 3, rng);
    CHECK(theta(u * v, s) == theta(u, s) * theta(v, s));
    if (s.order() == 3) break;  // one small-subgroup instance is enough
  }
}

TEST_CASE("theta at the full group is deflation to G^ab") {
  GroupPtr g = catalog_group("heis3");
  Rng rng(37);
  GroupRingElement u = random_unit(g, 3, 3, rng);
  GroupRingElement t = theta(u, g->full_subgroup());
  EmbeddedGroup fg = g->subgroup_group(g->full_subgroup());
  QuotientGroup fab = fg.grp->abelianization();
  GroupHom into = hom_from_fn(g, fab.grp,
                              [&](int x) { return fab.proj(fg.from_parent[x]); });
  CHECK(t == u.mapped_along(into));
}

TEST_CASE("sigma image membership with verified witnesses") {
  GroupPtr g = catalog_group("heis3");
  Subgroup a = g->subgroups()[5];  // an order-3 subgroup
  for (const Subgroup& s : g->subgroups()) {
    if (s.order() != 9 || !s.contains(a)) continue;
    bool normal = true;
    for (int x : s.elems)
      if (!(g->conjugate_subgroup(a, x) == a)) normal = false;
    if (!normal) continue;
    auto action = conjugation_action(g, s, a);
    EmbeddedGroup ag = g->subgroup_group(a);
    Rng rng(71);
    for (int t = 0; t < 10; ++t) {
      GroupRingElement x = random_element(ag.grp, 3, 3, rng);
      GroupRingElement y = sigma_apply(x, action);
      SigmaSolveResult res = sigma_image_solve(y, action);
      REQUIRE(res.member);
      CHECK(sigma_apply(*res.witness, action) == y);
    }
    // a non-member: sigma sums [U:A] = 3 conjugates, so augmentation of any
    // image is divisible by 3; an element of augmentation 1 cannot be hit
    SigmaSolveResult bad = sigma_image_solve(GroupRingElement::one(ag.grp, 3, 3), action);
    CHECK(!bad.member);
    CHECK(!bad.obstruction.empty());
    break;
  }
}

TEST_CASE("linear solver over Z/p^k handles divisibility obstructions") {
  // [[3,0],[0,1]] x = (1, 5) has no solution; (3, 5) does
  std::vector<std::vector<std::uint64_t>> m{{3, 0}, {0, 1}};
  std::string why;
  CHECK(!solve_mod_pk(m, {1, 5}, 3, 3, &why).has_value());
  CHECK(!why.empty());
  auto sol = solve_mod_pk(m, {3, 5}, 3, 3);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] * 3 % 27 == 3);
  CHECK((*sol)[1] % 27 == 5);
}

TEST_CASE("theta tuple entries live over the right rings") {
  GroupPtr g = catalog_group("c27");
  auto s = std::make_shared<SubquotientSet>(
      subquotient_sets(g, g->trivial_subgroup()));
  Rng rng(3);
  GroupRingElement u = random_unit(g, 3, 3, rng);
  UnitTuple t = theta_tuple(u, s);
  CHECK(t.entries.size() == s->members.size());
  for (const Subquotient& m : s->members) {
    const GroupRingElement& x = t.at(m.key());
    CHECK(x.g == m.uab.grp);
    CHECK(x.is_unit());
  }
}
