#include "pgk/brauer.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

namespace pgk {

std::string CharPair::key() const {
  std::ostringstream os;
  os << u.key() << "/" << N << ":";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) os << ",";
    os << e[i];
  }
  return os.str();
}

Cyclotomic CharPair::value_at_parent(int g) const {
  auto it = std::lower_bound(u.elems.begin(), u.elems.end(), g);
  if (it == u.elems.end() || *it != g)
    throw std::invalid_argument("pair value: element outside subgroup");
  return Cyclotomic::zeta(N, e[static_cast<size_t>(it - u.elems.begin())]);
}

namespace {

CharPair normalized_pair(Subgroup u, long N, std::vector<long> e) {
  long d = N;
  for (long& x : e) {
    x %= N;
    if (x < 0) x += N;
    d = gcd_l(d, x);
  }
  for (long& x : e) x /= d;
  return CharPair{std::move(u), N / d, std::move(e)};
}

}  // namespace

CharPair make_pair_from_linear(const Subgroup& u, const LinearChar& chi) {
  const EmbeddedGroup ug = u.parent->subgroup_group(u);
  if (chi.grp != ug.grp) throw std::invalid_argument("pair: character not on the subgroup");
  std::vector<long> e(u.elems.size());
  for (size_t i = 0; i < u.elems.size(); ++i) e[i] = chi.e[ug.from_parent[u.elems[i]]];
  return normalized_pair(u, chi.N, std::move(e));
}

CharPair conjugate_pair(const CharPair& x, int by) {
  const GroupPtr& g = x.u.parent;
  Subgroup cu = g->conjugate_subgroup(x.u, by);
  std::vector<long> e(cu.elems.size());
  for (size_t i = 0; i < cu.elems.size(); ++i) {
    int back = g->conj(cu.elems[i], g->inv(by));  // by^-1 h by, lies in x.u
    auto it = std::lower_bound(x.u.elems.begin(), x.u.elems.end(), back);
    e[i] = x.e[static_cast<size_t>(it - x.u.elems.begin())];
  }
  return normalized_pair(std::move(cu), x.N, std::move(e));
}

CharacterPoset::CharacterPoset(GroupPtr g) : g_(std::move(g)) {
  for (const Subgroup& u : g_->subgroups()) {
    EmbeddedGroup ug = g_->subgroup_group(u);
    for (const LinearChar& chi : linear_characters(ug.grp))
      nodes_.push_back(make_pair_from_linear(u, chi));
  }
  std::sort(nodes_.begin(), nodes_.end());
  const size_t n = nodes_.size();
  leq_.assign(n * n, 0);
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!nodes_[y].u.contains(nodes_[x].u)) continue;
      // restriction of phi_y to u_x must equal phi_x
      bool ok = true;
      for (size_t i = 0; i < nodes_[x].u.elems.size() && ok; ++i) {
        int el = nodes_[x].u.elems[i];
        if (nodes_[y].value_at_parent(el) != Cyclotomic::zeta(nodes_[x].N, nodes_[x].e[i]))
          ok = false;
      }
      leq_[x * n + y] = ok;
    }
  // conjugation orbits
  orbit_rep_.assign(n, -1);
  for (size_t x = 0; x < n; ++x) {
    if (orbit_rep_[x] >= 0) continue;
    std::vector<int> orb;
    for (int by = 0; by < g_->order(); ++by) {
      int idx = index_of(conjugate_pair(nodes_[x], by));
      if (std::find(orb.begin(), orb.end(), idx) == orb.end()) orb.push_back(idx);
    }
    std::sort(orb.begin(), orb.end());
    for (int idx : orb) orbit_rep_[idx] = orb[0];
    int rep = orb[0];
    reps_.push_back(rep);
    orbits_.emplace(rep, std::move(orb));
  }
  std::sort(reps_.begin(), reps_.end());
}

int CharacterPoset::index_of(const CharPair& x) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  if (it == nodes_.end() || !(*it == x)) throw std::invalid_argument("unknown poset node");
  return static_cast<int>(it - nodes_.begin());
}

const std::vector<int>& CharacterPoset::orbit_of_rep(int rep) const {
  auto it = orbits_.find(rep);
  if (it == orbits_.end()) throw std::invalid_argument("not an orbit representative");
  return it->second;
}

long CharacterPoset::mobius(int x, int y) const {
  if (!leq(x, y)) throw std::invalid_argument("mobius: nodes not comparable");
  std::lock_guard<std::mutex> lock(mu_mutex_);
  std::function<long(int, int)> rec = [&](int a, int b) -> long {
    if (a == b) return 1;
    auto it = mu_.find({a, b});
    if (it != mu_.end()) return it->second;
    long s = 0;
    for (int z = 0; z < size(); ++z)
      if (z != b && leq(a, z) && leq(z, b)) s -= rec(a, z);
    mu_[{a, b}] = s;
    return s;
  };
  return rec(x, y);
}

Character induce_pair(const GroupPtr& g, const CharPair& x) {
  EmbeddedGroup ug = g->subgroup_group(x.u);
  LinearChar chi{ug.grp, x.N, std::vector<long>(ug.grp->order())};
  for (int i = 0; i < ug.grp->order(); ++i) {
    int pe = ug.to_parent[i];
    auto it = std::lower_bound(x.u.elems.begin(), x.u.elems.end(), pe);
    chi.e[i] = x.e[static_cast<size_t>(it - x.u.elems.begin())];
  }
  return Character::from_linear(chi).induced_to(g, ug);
}

const CharacterPoset& cached_poset(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::unique_ptr<CharacterPoset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.get());
  if (it == cache.end())
    it = cache.emplace(g.get(), std::make_unique<CharacterPoset>(g)).first;
  return *it->second;
}

BrauerElement brauer_coefficients(const CharacterPoset& poset, const Character& rho) {
  const GroupPtr& g = poset.group();
  if (rho.group() != g) throw std::invalid_argument("brauer: group mismatch");
  const int n = poset.size();
  // multiplicity <phi'', Res rho> for every node
  std::vector<Rat> mult(n);
  std::optional<LinearChar> rho_lin;
  if (g->is_abelian() && rho.degree() == 1) {
    // match rho against the linear-character list on a generating set;
    // multiplicativity extends the match to all of G
    std::vector<int> gens;
    Subgroup cl = g->closure({});
    while (cl.order() < g->order()) {
      for (int x = 0; x < g->order(); ++x)
        if (!cl.contains(x)) {
          gens.push_back(x);
          break;
        }
      cl = g->closure(gens);
    }
    for (const LinearChar& lc : linear_characters(g)) {
      bool hit = true;
      for (int x : gens)
        if (!(lc.value(x) == rho(x))) {
          hit = false;
          break;
        }
      if (hit) {
        rho_lin = lc;
        break;
      }
    }
    if (!rho_lin) throw std::logic_error("brauer: linear character not matched");
  }
  for (int y = 0; y < n; ++y) {
    const CharPair& p = poset.nodes()[y];
    const long uo = static_cast<long>(p.u.order());
    if (rho_lin) {
      // integer-only inner product: both characters are roots of unity, so
      // the sum reduces to an exponent histogram at the joint conductor
      const long L = std::max(rho_lin->N, p.N);
      std::vector<long> exps(p.u.elems.size());
      for (size_t i = 0; i < p.u.elems.size(); ++i) {
        long v = rho_lin->e[p.u.elems[i]] * (L / rho_lin->N) - p.e[i] * (L / p.N);
        exps[i] = ((v % L) + L) % L;
      }
      std::vector<Int> hist = reduced_exponent_histogram(L, exps);
      for (size_t c = 1; c < hist.size(); ++c)
        if (hist[c] != 0) throw std::logic_error("brauer: inner product not rational");
      mult[y] = Rat(hist[0]) / Rat(uo);
      continue;
    }
    // bucket rho-values by the exponent of phi so that each element costs a
    // cyclotomic addition instead of a multiplication
    std::vector<Cyclotomic> bucket(static_cast<size_t>(p.N));
    for (size_t i = 0; i < p.u.elems.size(); ++i)
      bucket[static_cast<size_t>(p.e[i])] += rho(p.u.elems[i]);
    Cyclotomic s;
    for (long t = 0; t < p.N; ++t)
      if (!bucket[static_cast<size_t>(t)].is_zero())
        s += bucket[static_cast<size_t>(t)] * Cyclotomic::zeta(p.N, (p.N - t) % p.N);
    mult[y] = s.rational_part() / Rat(uo);
  }
  BrauerElement out{g, {}};
  for (int rep : poset.orbit_reps()) {
    Rat alpha(0);
    for (int x : poset.orbit_of_rep(rep)) {
      for (int y = 0; y < n; ++y)
        if (poset.leq(x, y) && mult[y] != 0)
          alpha += Rat(poset.mobius(x, y)) * mult[y];
    }
    alpha *= Rat(static_cast<long>(poset.nodes()[rep].u.order()),
                 static_cast<long>(g->order()));
    if (!is_integer(alpha))
      throw std::logic_error("brauer coefficient not integral: " + alpha.str());
    if (alpha != 0) out.terms[poset.nodes()[rep]] = static_cast<long>(to_int(alpha));
  }
  return out;
}

bool verify_section(const BrauerElement& b, const Character& rho) {
  Character acc(b.g, std::vector<Cyclotomic>(b.g->num_classes(), Cyclotomic(Rat(0))));
  for (const auto& [pair, coef] : b.terms) {
    Character ind = induce_pair(b.g, pair);
    for (long i = 0; i < (coef < 0 ? -coef : coef); ++i)
      acc = coef > 0 ? acc + ind : acc - ind;
  }
  return acc == rho;
}

BrauerElement twist(const LinearChar& chi, const BrauerElement& b,
                    const CharacterPoset& poset) {
  if (chi.grp != b.g) throw std::invalid_argument("twist: group mismatch");
  BrauerElement out{b.g, {}};
  for (const auto& [pair, coef] : b.terms) {
    // (U, phi) -> (U, chi|_U * phi)
    long M = lcm_l(pair.N, chi.N);
    std::vector<long> e(pair.e.size());
    for (size_t i = 0; i < pair.e.size(); ++i)
      e[i] = (pair.e[i] * (M / pair.N) + chi.e[pair.u.elems[i]] * (M / chi.N)) % M;
    CharPair twisted = normalized_pair(pair.u, M, std::move(e));
    int rep = poset.orbit_rep(poset.index_of(twisted));
    out.terms[poset.nodes()[rep]] += coef;
    if (out.terms[poset.nodes()[rep]] == 0) out.terms.erase(poset.nodes()[rep]);
  }
  return out;
}

}  // namespace pgk
