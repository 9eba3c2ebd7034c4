#include <doctest.h>

#include "pgk/brauer.hpp"
#include "pgk/catalog.hpp"

using namespace pgk;

TEST_CASE("poset order relation and conjugation orbits") {
  GroupPtr g = catalog_group("heis3");
  const CharacterPoset& m = cached_poset(g);
  CHECK(m.size() == 85);
  CHECK(m.orbit_reps().size() == 45);
  // leq is reflexive, antisymmetric, transitive (spot check transitivity)
  for (int x = 0; x < m.size(); ++x) {
    CHECK(m.leq(x, x));
    for (int y = 0; y < m.size(); ++y) {
      if (x != y && m.leq(x, y)) CHECK(!m.leq(y, x));
      for (int z = 0; z < m.size(); z += 7)
        if (m.leq(x, y) && m.leq(y, z)) CHECK(m.leq(x, z));
    }
  }
}

TEST_CASE("incidence Moebius function satisfies its recursion") {
  GroupPtr g = catalog_group("mod27");
  const CharacterPoset& m = cached_poset(g);
  for (int x = 0; x < m.size(); x += 3)
    for (int y = 0; y < m.size(); ++y) {
      if (!m.leq(x, y)) continue;
      long s = 0;
      for (int z = 0; z < m.size(); ++z)
        if (m.leq(x, z) && m.leq(z, y)) s += m.mobius(x, z);
      CHECK(s == (x == y ? 1 : 0));
    }
}

TEST_CASE("poset Moebius is equivariant under conjugation") {
  GroupPtr g = catalog_group("heis3");
  const CharacterPoset& m = cached_poset(g);
  for (int x = 0; x < m.size(); x += 5)
    for (int y = 0; y < m.size(); y += 3) {
      if (!m.leq(x, y)) continue;
      for (int by : {1, 5, 11}) {
        int cx = m.index_of(conjugate_pair(m.nodes()[x], by));
        int cy = m.index_of(conjugate_pair(m.nodes()[y], by));
        REQUIRE(m.leq(cx, cy));
        CHECK(m.mobius(cx, cy) == m.mobius(x, y));
      }
    }
}

TEST_CASE("linear characters decompose as a single top-level pair") {
  for (const char* id : {"heis3", "mod27", "e9"}) {
    GroupPtr g = catalog_group(id);
    CAPTURE(id);
    const CharacterPoset& m = cached_poset(g);
    for (const Character& chi : irreducibles(g)) {
      if (chi.degree() != 1) continue;
      BrauerElement b = brauer_coefficients(m, chi);
      REQUIRE(b.terms.size() == 1);
      const auto& [pair, coef] = *b.terms.begin();
      CHECK(coef == 1);
      CHECK(pair.u.order() == g->order());
      CHECK(verify_section(b, chi));
    }
  }
}

TEST_CASE("section identity for all irreducibles of the order-27 groups") {
  for (const char* id : {"heis3", "mod27"}) {
    GroupPtr g = catalog_group(id);
    CAPTURE(id);
    const CharacterPoset& m = cached_poset(g);
    for (const Character& chi : irreducibles(g)) {
      BrauerElement b = brauer_coefficients(m, chi);
      CHECK(verify_section(b, chi));
      if (chi.degree() == 3) CHECK(b.terms.size() > 1);
    }
  }
}

TEST_CASE("twist lemma: a_G(chi rho) = chi . a_G(rho)") {
  for (const char* id : {"heis3", "mod27"}) {
    GroupPtr g = catalog_group(id);
    CAPTURE(id);
    const CharacterPoset& m = cached_poset(g);
    for (const Character& rho : irreducibles(g)) {
      BrauerElement b = brauer_coefficients(m, rho);
      for (const LinearChar& chi : linear_characters(g)) {
        BrauerElement lhs = brauer_coefficients(m, rho.tensor(chi));
        BrauerElement rhs = twist(chi, b, m);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("coefficients against independent restriction counts on e9") {
  // abelian baseline: for linear rho, the formula must produce rho itself;
  // verify against a brute-force Moebius evaluation over the poset
  GroupPtr g = catalog_group("e9");
  const CharacterPoset& m = cached_poset(g);
  Character rho = irreducibles(g)[3];
  BrauerElement b = brauer_coefficients(m, rho);
  // independent oracle: sum over orbits of the alpha formula computed with
  // explicit inner products (recomputed here from first principles)
  for (const auto& [pair, coef] : b.terms) {
    Rat alpha(0);
    for (int x : m.orbit_of_rep(m.index_of(pair))) {
      for (int y = 0; y < m.size(); ++y) {
        if (!m.leq(x, y)) continue;
        const CharPair& py = m.nodes()[y];
        Cyclotomic s;
        for (int el : py.u.elems) s += rho(el) * py.value_at_parent(el).conj();
        Rat mult = s.rational_part() / Rat(static_cast<long>(py.u.order()));
        alpha += Rat(m.mobius(x, y)) * mult;
      }
    }
    alpha *= Rat(static_cast<long>(pair.u.order()), static_cast<long>(g->order()));
    CHECK(alpha == Rat(coef));
  }
}

TEST_CASE("induce_pair matches character induction") {
  GroupPtr g = catalog_group("heis3");
  const CharacterPoset& m = cached_poset(g);
  for (int x = 0; x < m.size(); x += 9) {
    const CharPair& pair = m.nodes()[x];
    Character ind = induce_pair(g, pair);
    CHECK(ind.degree() == g->order() / pair.u.order());
  }
}
