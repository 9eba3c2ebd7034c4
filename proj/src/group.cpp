#include "pgk/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pgk {

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elems.begin(), elems.end(), other.elems.begin(), other.elems.end());
}

std::string Subgroup::key() const {
  std::ostringstream os;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) os << ",";
    os << elems[i];
  }
  return os.str();
}

void GroupHom::validate() const {
  if (static_cast<int>(map.size()) != source->order())
    throw std::invalid_argument("hom: wrong table size");
  if (map[source->identity()] != target->identity())
    throw std::invalid_argument("hom: identity not preserved");
  for (int a = 0; a < source->order(); ++a)
    for (int b = 0; b < source->order(); ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        throw std::invalid_argument("hom: not multiplicative");
}

GroupHom GroupHom::then(const GroupHom& next) const {
  if (target != next.source) throw std::invalid_argument("hom composition mismatch");
  GroupHom h{source, next.target, std::vector<int>(map.size())};
  for (size_t i = 0; i < map.size(); ++i) h.map[i] = next.map[map[i]];
  return h;
}

bool GroupHom::is_surjective() const {
  std::vector<char> hit(target->order(), 0);
  for (int v : map) hit[v] = 1;
  return std::find(hit.begin(), hit.end(), 0) == hit.end();
}

GroupPtr FiniteGroup::from_table(std::string name, long p, std::vector<std::vector<int>> table) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  const int n = static_cast<int>(table.size());
  if (n == 0) throw std::invalid_argument("empty multiplication table");
  // order must be a power of the declared prime
  {
    long m = n;
    int a = 0;
    while (m % p == 0) { m /= p; ++a; }
    if (m != 1) throw std::invalid_argument("order " + std::to_string(n) +
                                            " is not a power of " + std::to_string(p));
    g->a_ = a;
  }
  g->n_ = n;
  g->p_ = p;
  g->name_ = std::move(name);
  g->mul_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) throw std::invalid_argument("ragged table");
    for (int j = 0; j < n; ++j) {
      int v = table[i][j];
      if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
      g->mul_[static_cast<size_t>(i) * n + j] = v;
    }
  }
  // locate a two-sided identity
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g->mul(e, x) == x && g->mul(x, e) == x;
    if (ok) { id = e; break; }
  }
  if (id < 0) throw std::invalid_argument("no identity element");
  g->id_ = id;
  // associativity
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
          throw std::invalid_argument("multiplication table is not associative");
  // inverses
  g->inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g->mul(a, b) == id && g->mul(b, a) == id) { g->inv_[a] = b; break; }
    if (g->inv_[a] < 0) throw std::invalid_argument("element without inverse");
  }
  return g;
}

int FiniteGroup::power(int g, long e) const {
  long m = element_order(g);
  e %= m;
  if (e < 0) e += m;
  int r = id_;
  int b = g;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::element_order(int g) const {
  int x = g, o = 1;
  while (x != id_) { x = mul(x, g); ++o; }
  return o;
}

long FiniteGroup::exponent() const {
  long e = 1;
  for (int g = 0; g < n_; ++g) e = lcm_l(e, element_order(g));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

const std::vector<std::vector<int>>& FiniteGroup::classes() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!classes_) {
    std::vector<int> cls(n_, -1);
    std::vector<std::vector<int>> out;
    for (int g = 0; g < n_; ++g) {
      if (cls[g] >= 0) continue;
      std::vector<int> orbit;
      for (int x = 0; x < n_; ++x) {
        int h = conj(g, x);
        if (cls[h] < 0) {
          cls[h] = static_cast<int>(out.size());
          orbit.push_back(h);
        }
      }
      std::sort(orbit.begin(), orbit.end());
      out.push_back(std::move(orbit));
    }
    // order classes by representative; reindex
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    for (size_t ci = 0; ci < out.size(); ++ci)
      for (int g : out[ci]) cls[g] = static_cast<int>(ci);
    classes_ = std::move(out);
    class_of_ = std::move(cls);
  }
  return *classes_;
}

int FiniteGroup::class_of(int g) const {
  classes();
  std::lock_guard<std::mutex> lock(mu_);
  return (*class_of_)[g];
}

Subgroup FiniteGroup::closure(std::vector<int> gens) const {
  std::vector<char> in(n_, 0);
  std::vector<int> stack;
  auto add = [&](int g) {
    if (!in[g]) { in[g] = 1; stack.push_back(g); }
  };
  add(id_);
  for (int g : gens) add(g);
  std::vector<int> members;
  while (!stack.empty()) {
    int g = stack.back();
    stack.pop_back();
    members.push_back(g);
    for (int h = 0; h < n_; ++h)
      if (in[h]) {
        add(mul(g, h));
        add(mul(h, g));
      }
  }
  std::vector<int> out;
  for (int g = 0; g < n_; ++g)
    if (in[g]) out.push_back(g);
  return Subgroup{shared_from_this(), std::move(out)};
}

const std::vector<Subgroup>& FiniteGroup::subgroups() const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (subgroups_) return *subgroups_;
  }
  if (n_ > kSubgroupCap)
    throw std::runtime_error("subgroup enumeration cap (" +
                             std::to_string(kSubgroupCap) + ") exceeded by order " +
                             std::to_string(n_));
  // closure of generated subsets: grow each known subgroup by one element
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> todo;
  Subgroup triv{shared_from_this(), {id_}};
  seen.insert(triv.elems);
  todo.push_back(triv);
  std::vector<Subgroup> all{triv};
  while (!todo.empty()) {
    Subgroup h = todo.back();
    todo.pop_back();
    for (int g = 0; g < n_; ++g) {
      if (h.contains(g)) continue;
      std::vector<int> gens = h.elems;
      gens.push_back(g);
      Subgroup k = closure(gens);
      if (seen.insert(k.elems).second) {
        all.push_back(k);
        todo.push_back(k);
      }
    }
  }
  std::sort(all.begin(), all.end());
  std::lock_guard<std::mutex> lock(mu_);
  if (!subgroups_) subgroups_ = std::move(all);
  return *subgroups_;
}

std::vector<Subgroup> FiniteGroup::subgroups_up_to_conjugacy() const {
  std::vector<Subgroup> out;
  std::set<std::vector<int>> covered;
  for (const Subgroup& h : subgroups()) {
    if (covered.count(h.elems)) continue;
    out.push_back(h);
    for (int g = 0; g < n_; ++g) covered.insert(conjugate_subgroup(h, g).elems);
  }
  return out;
}

Subgroup FiniteGroup::trivial_subgroup() const {
  return Subgroup{shared_from_this(), {id_}};
}

Subgroup FiniteGroup::full_subgroup() const {
  std::vector<int> e(n_);
  for (int i = 0; i < n_; ++i) e[i] = i;
  return Subgroup{shared_from_this(), std::move(e)};
}

Subgroup FiniteGroup::center() const {
  std::vector<int> out;
  for (int z = 0; z < n_; ++z) {
    bool central = true;
    for (int g = 0; g < n_ && central; ++g) central = mul(z, g) == mul(g, z);
    if (central) out.push_back(z);
  }
  return Subgroup{shared_from_this(), std::move(out)};
}

Subgroup FiniteGroup::commutator_subgroup() const {
  std::vector<int> gens;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      gens.push_back(mul(mul(a, b), mul(inv_[a], inv_[b])));
  return closure(std::move(gens));
}

bool FiniteGroup::is_normal(const Subgroup& h) const {
  for (int g = 0; g < n_; ++g)
    for (int x : h.elems)
      if (!h.contains(conj(x, g))) return false;
  return true;
}

std::vector<Subgroup> FiniteGroup::normal_subgroups() const {
  std::vector<Subgroup> out;
  for (const Subgroup& h : subgroups())
    if (is_normal(h)) out.push_back(h);
  return out;
}

Subgroup FiniteGroup::conjugate_subgroup(const Subgroup& h, int by) const {
  std::vector<int> out;
  out.reserve(h.elems.size());
  for (int x : h.elems) out.push_back(conj(x, by));
  std::sort(out.begin(), out.end());
  return Subgroup{shared_from_this(), std::move(out)};
}

EmbeddedGroup FiniteGroup::subgroup_group(const Subgroup& h) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sub_cache_.find(h.key());
    if (it != sub_cache_.end()) return it->second;
  }
  const int m = h.order();
  std::vector<int> from(n_, -1);
  for (int i = 0; i < m; ++i) from[h.elems[i]] = i;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = from[mul(h.elems[i], h.elems[j])];
      if (v < 0) throw std::invalid_argument("subgroup not closed under multiplication");
      table[i][j] = v;
    }
  EmbeddedGroup eg;
  eg.grp = FiniteGroup::from_table(name_ + "<" + std::to_string(m) + ">", p_, std::move(table));
  eg.to_parent = h.elems;
  eg.from_parent = std::move(from);
  std::lock_guard<std::mutex> lock(mu_);
  return sub_cache_.emplace(h.key(), std::move(eg)).first->second;
}

QuotientGroup FiniteGroup::quotient(const Subgroup& nsub) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = quot_cache_.find(nsub.key());
    if (it != quot_cache_.end()) return it->second;
  }
  if (!is_normal(nsub)) throw std::invalid_argument("quotient by non-normal subgroup");
  // cosets keyed by minimal member
  std::vector<int> coset_of(n_, -1);
  std::vector<int> reps;
  for (int g = 0; g < n_; ++g) {
    if (coset_of[g] >= 0) continue;
    int ci = static_cast<int>(reps.size());
    reps.push_back(g);  // g is minimal in its coset by scan order
    for (int x : nsub.elems) coset_of[mul(g, x)] = ci;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i][j] = coset_of[mul(reps[i], reps[j])];
  QuotientGroup q;
  q.grp = FiniteGroup::from_table(name_ + "/" + std::to_string(nsub.order()), p_, std::move(table));
  q.proj = GroupHom{shared_from_this(), q.grp, std::move(coset_of)};
  q.section = std::move(reps);
  std::lock_guard<std::mutex> lock(mu_);
  return quot_cache_.emplace(nsub.key(), std::move(q)).first->second;
}

QuotientGroup FiniteGroup::abelianization() const { return quotient(commutator_subgroup()); }

std::vector<int> left_transversal(const GroupPtr& g, const Subgroup& u) {
  std::vector<char> covered(g->order(), 0);
  std::vector<int> reps;
  for (int x = 0; x < g->order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (int h : u.elems) covered[g->mul(x, h)] = 1;
  }
  return reps;
}

std::vector<int> transfer_raw(const GroupPtr& g, const Subgroup& u,
                              const std::vector<int>& transversal,
                              const EmbeddedGroup& ugrp, const QuotientGroup& uab) {
  const int m = static_cast<int>(transversal.size());
  // coset index of an arbitrary element
  std::vector<int> coset_of(g->order(), -1);
  for (int i = 0; i < m; ++i)
    for (int h : u.elems) coset_of[g->mul(transversal[i], h)] = i;
  std::vector<int> out(g->order());
  for (int x = 0; x < g->order(); ++x) {
    int acc = uab.grp->identity();
    for (int i = 0; i < m; ++i) {
      int y = g->mul(x, transversal[i]);          // x t_i = t_j u
      int j = coset_of[y];
      int uelt = g->mul(g->inv(transversal[j]), y);
      int local = ugrp.from_parent[uelt];
      acc = uab.grp->mul(acc, uab.proj(local));
    }
    out[x] = acc;
  }
  return out;
}

GroupHom transfer(const GroupPtr& g, const Subgroup& u) {
  EmbeddedGroup ugrp = g->subgroup_group(u);
  QuotientGroup uab = ugrp.grp->abelianization();
  std::vector<int> raw = transfer_raw(g, u, left_transversal(g, u), ugrp, uab);
  QuotientGroup gab = g->abelianization();
  // factor through G^ab via the section (well-definedness is tested)
  GroupHom h{gab.grp, uab.grp, std::vector<int>(gab.grp->order())};
  for (int i = 0; i < gab.grp->order(); ++i) h.map[i] = raw[gab.section[i]];
  h.validate();
  return h;
}

long mobius_subgroup(const GroupPtr& g, const Subgroup& u) {
  // memoized over the lattice of subgroups of g
  const auto& subs = g->subgroups();
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::vector<long>> cache;
  std::unique_lock<std::mutex> lock(mu);
  auto& tab = cache[g.get()];
  if (tab.empty()) {
    tab.assign(subs.size(), 0);
    for (size_t i = 0; i < subs.size(); ++i) {
      if (subs[i].is_trivial()) { tab[i] = 1; continue; }
      long s = 0;
      for (size_t j = 0; j < i; ++j)
        if (subs[j].order() < subs[i].order() && subs[i].contains(subs[j])) s += tab[j];
      // same-size proper subgroups cannot be contained, list is size-sorted
      tab[i] = -s;
    }
  }
  for (size_t i = 0; i < subs.size(); ++i)
    if (subs[i].elems == u.elems) return tab[i];
  throw std::invalid_argument("mobius_subgroup: not a subgroup of this group");
}

const Subquotient* SubquotientSet::find(const std::string& key) const {
  for (const auto& m : members)
    if (m.key() == key) return &m;
  return nullptr;
}

std::vector<const Subquotient*> SubquotientSet::abelian_members() const {
  std::vector<const Subquotient*> out;
  for (const auto& m : members)
    if (m.abelian) out.push_back(&m);
  return out;
}

SubquotientSet subquotient_sets(const GroupPtr& g, const Subgroup& z) {
  // Z must be central
  for (int zz : z.elems)
    for (int x = 0; x < g->order(); ++x)
      if (g->mul(zz, x) != g->mul(x, zz))
        throw std::invalid_argument("subquotient_sets: Z is not central");
  SubquotientSet s;
  s.g = g;
  s.z = z;
  for (const Subgroup& c : g->normal_subgroups()) {
    // C \cap Z = 1
    bool meets = false;
    for (int x : c.elems)
      if (x != g->identity() && z.contains(x)) { meets = true; break; }
    if (meets) continue;
    QuotientGroup q = g->quotient(c);
    // image of Z in G/C
    std::vector<int> zim;
    for (int x : z.elems) zim.push_back(q.proj(x));
    std::sort(zim.begin(), zim.end());
    zim.erase(std::unique(zim.begin(), zim.end()), zim.end());
    for (const Subgroup& u : q.grp->subgroups()) {
      if (!std::includes(u.elems.begin(), u.elems.end(), zim.begin(), zim.end())) continue;
      Subquotient m;
      m.c = c;
      m.qbar = q;
      m.u = u;
      m.ugrp = q.grp->subgroup_group(u);
      m.abelian = m.ugrp.grp->is_abelian();
      m.uab = m.ugrp.grp->abelianization();
      s.members.push_back(std::move(m));
    }
  }
  return s;
}

std::string permutation_word(const std::vector<int>& elems) {
  std::ostringstream os;
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) os << " ";
    os << elems[i];
  }
  return os.str();
}

}  // namespace pgk
