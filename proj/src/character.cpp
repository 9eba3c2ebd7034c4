#include "pgk/character.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pgk {

TruncCyclo LinearChar::trunc_value(int g, int a, int W) const {
  return TruncCyclo::from_exact(value(g), grp->prime(), a, W);
}

bool LinearChar::is_trivial() const {
  for (long x : e)
    if (x % N != 0) return false;
  return true;
}

long LinearChar::order() const {
  long d = N;
  for (long x : e) d = gcd_l(d, x);
  return N / d;
}

LinearChar LinearChar::operator*(const LinearChar& o) const {
  if (grp != o.grp) throw std::invalid_argument("linear char product: group mismatch");
  long M = lcm_l(N, o.N);
  LinearChar r{grp, M, std::vector<long>(e.size())};
  for (size_t i = 0; i < e.size(); ++i)
    r.e[i] = (e[i] * (M / N) + o.e[i] * (M / o.N)) % M;
  return r;
}

LinearChar LinearChar::inverse() const {
  LinearChar r = *this;
  for (long& x : r.e) x = (N - x % N) % N;
  return r;
}

LinearChar LinearChar::pow(long k) const {
  LinearChar r = *this;
  k %= N;
  if (k < 0) k += N;
  for (long& x : r.e) x = x * k % N;
  return r;
}

LinearChar LinearChar::restricted(const EmbeddedGroup& u) const {
  LinearChar r{u.grp, N, std::vector<long>(u.grp->order())};
  for (int i = 0; i < u.grp->order(); ++i) r.e[i] = e[u.to_parent[i]];
  return r;
}

LinearChar LinearChar::normalized() const {
  long d = N;
  for (long x : e) d = gcd_l(d, x);
  LinearChar r{grp, N / d, std::vector<long>(e.size())};
  for (size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] / d;
  return r;
}

std::string LinearChar::key() const {
  LinearChar n = normalized();
  std::ostringstream os;
  os << n.N << ":";
  for (size_t i = 0; i < n.e.size(); ++i) {
    if (i) os << ",";
    os << n.e[i];
  }
  return os.str();
}

namespace {

// All homomorphisms A -> Z/N for abelian A, by extending along cyclic steps:
// pick the minimal unassigned g, let m be minimal with g^m already assigned;
// the defining relation m*x = e[g^m] (mod N) has exactly m solutions.
void enumerate_abelian_chars(const GroupPtr& a, long N, std::vector<long>& e,
                             std::vector<std::vector<long>>& out) {
  int n = a->order();
  int g = -1;
  for (int i = 0; i < n; ++i)
    if (e[i] < 0) { g = i; break; }
  if (g < 0) {
    out.push_back(e);
    return;
  }
  long m = 1;
  int gp = g;
  while (e[gp] < 0) { gp = a->mul(gp, g); ++m; }
  long t = e[gp];
  if (t % gcd_l(m, N) != 0) throw std::logic_error("character extension obstructed");
  // m | N for p-groups; solutions x = t/m + j*(N/m).
  std::vector<int> assigned;
  for (int i = 0; i < n; ++i)
    if (e[i] >= 0) assigned.push_back(i);
  for (long j = 0; j < m; ++j) {
    long x = (t / m + j * (N / m)) % N;
    std::vector<long> saved = e;
    for (int h : assigned) {
      int cur = h;
      for (long i = 1; i < m; ++i) {
        cur = a->mul(cur, g);
        e[cur] = (e[h] + i * x) % N;
      }
    }
    enumerate_abelian_chars(a, N, e, out);
    e = std::move(saved);
  }
}

}  // namespace

std::vector<LinearChar> linear_characters(const GroupPtr& g) {
  QuotientGroup ab = g->abelianization();
  const GroupPtr& a = ab.grp;
  long N = a->exponent();
  std::vector<long> e(a->order(), -1);
  e[a->identity()] = 0;
  std::vector<std::vector<long>> raw;
  enumerate_abelian_chars(a, N, e, raw);
  if (raw.size() != static_cast<size_t>(a->order()))
    throw std::logic_error("linear character count mismatch");
  std::vector<LinearChar> out;
  out.reserve(raw.size());
  for (auto& ea : raw) {
    LinearChar chi{g, N, std::vector<long>(g->order())};
    for (int i = 0; i < g->order(); ++i) chi.e[i] = ea[ab.proj(i)];
    out.push_back(std::move(chi));
  }
  std::sort(out.begin(), out.end(),
            [](const LinearChar& x, const LinearChar& y) { return x.e < y.e; });
  return out;
}

std::vector<Int> reduced_exponent_histogram(long N, const std::vector<long>& exps) {
  std::vector<Int> h(static_cast<size_t>(N), Int(0));
  for (long x : exps) {
    long r = x % N;
    if (r < 0) r += N;
    h[static_cast<size_t>(r)] += 1;
  }
  const auto& phi = cyclotomic_polynomial(N);
  const size_t deg = phi.size() - 1;
  for (long i = static_cast<long>(h.size()) - 1; i >= static_cast<long>(deg); --i) {
    Int c = h[i];
    if (c != 0)
      for (size_t j = 0; j < phi.size(); ++j) h[i - deg + j] -= c * phi[j];
  }
  h.resize(deg);
  return h;
}

Character::Character(GroupPtr g, std::vector<Cyclotomic> class_values)
    : g_(std::move(g)), v_(std::move(class_values)) {
  if (static_cast<int>(v_.size()) != g_->num_classes())
    throw std::invalid_argument("character: wrong number of class values");
}

Character Character::trivial(const GroupPtr& g) {
  return Character(g, std::vector<Cyclotomic>(g->num_classes(), Cyclotomic(Rat(1))));
}

Character Character::regular(const GroupPtr& g) {
  std::vector<Cyclotomic> v(g->num_classes(), Cyclotomic(Rat(0)));
  v[g->class_of(g->identity())] = Cyclotomic(Rat(g->order()));
  return Character(g, std::move(v));
}

Character Character::from_linear(const LinearChar& chi) {
  const GroupPtr& g = chi.grp;
  std::vector<Cyclotomic> v(g->num_classes());
  for (int ci = 0; ci < g->num_classes(); ++ci) v[ci] = chi.value(g->class_rep(ci));
  return Character(g, std::move(v));
}

Int Character::degree() const {
  return to_int(v_[g_->class_of(g_->identity())].rational_part());
}

Character Character::conj() const {
  std::vector<Cyclotomic> v(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) v[i] = v_[i].conj();
  return Character(g_, std::move(v));
}

Character Character::tensor(const Character& o) const {
  if (g_ != o.g_) throw std::invalid_argument("tensor: group mismatch");
  std::vector<Cyclotomic> v(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) v[i] = v_[i] * o.v_[i];
  return Character(g_, std::move(v));
}

Character Character::tensor(const LinearChar& chi) const {
  if (g_ != chi.grp) throw std::invalid_argument("tensor: group mismatch");
  std::vector<Cyclotomic> v(v_.size());
  for (size_t i = 0; i < v_.size(); ++i)
    v[i] = v_[i] * chi.value(g_->class_rep(static_cast<int>(i)));
  return Character(g_, std::move(v));
}

Character Character::restricted(const EmbeddedGroup& u) const {
  std::vector<Cyclotomic> v(u.grp->num_classes());
  for (int ci = 0; ci < u.grp->num_classes(); ++ci)
    v[ci] = v_[g_->class_of(u.to_parent[u.grp->class_rep(ci)])];
  return Character(u.grp, std::move(v));
}

Character Character::induced_to(const GroupPtr& big, const EmbeddedGroup& u) const {
  if (u.grp != g_) throw std::invalid_argument("induce: embedding does not match character");
  std::vector<Cyclotomic> v(big->num_classes());
  Rat scale(1, static_cast<long>(g_->order()));
  for (int ci = 0; ci < big->num_classes(); ++ci) {
    int rep = big->class_rep(ci);
    Cyclotomic s;
    for (int x = 0; x < big->order(); ++x) {
      int cg = big->conj(rep, big->inv(x));  // x^-1 rep x
      int inside = u.from_parent[cg];
      if (inside >= 0) s += v_[g_->class_of(inside)];
    }
    v[ci] = scale * s;
  }
  return Character(big, std::move(v));
}

Character Character::inflated_along(const QuotientGroup& q) const {
  if (q.grp != g_) throw std::invalid_argument("inflate: quotient does not match character");
  const GroupPtr& big = q.proj.source;
  std::vector<Cyclotomic> v(big->num_classes());
  for (int ci = 0; ci < big->num_classes(); ++ci)
    v[ci] = v_[g_->class_of(q.proj(big->class_rep(ci)))];
  return Character(big, std::move(v));
}

Character Character::adams(long m) const {
  std::vector<Cyclotomic> v(v_.size());
  for (int ci = 0; ci < g_->num_classes(); ++ci)
    v[ci] = v_[g_->class_of(g_->power(g_->class_rep(ci), m))];
  return Character(g_, std::move(v));
}

Character operator+(const Character& a, const Character& b) {
  if (a.g_ != b.g_) throw std::invalid_argument("character sum: group mismatch");
  std::vector<Cyclotomic> v(a.v_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.v_[i] + b.v_[i];
  return Character(a.g_, std::move(v));
}

Character operator-(const Character& a, const Character& b) {
  if (a.g_ != b.g_) throw std::invalid_argument("character difference: group mismatch");
  std::vector<Cyclotomic> v(a.v_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.v_[i] - b.v_[i];
  return Character(a.g_, std::move(v));
}

bool operator==(const Character& a, const Character& b) {
  if (a.g_ != b.g_) return false;
  for (size_t i = 0; i < a.v_.size(); ++i)
    if (a.v_[i] != b.v_[i]) return false;
  return true;
}

std::string Character::key() const {
  long m = g_->exponent();
  for (const Cyclotomic& c : v_) m = lcm_l(m, c.conductor());
  std::ostringstream os;
  for (const Cyclotomic& c : v_) os << c.lifted_to(m).str() << ";";
  return os.str();
}

Rat schur_inner(const Character& a, const Character& b) {
  if (a.group() != b.group()) throw std::invalid_argument("schur_inner: group mismatch");
  const GroupPtr& g = a.group();
  Cyclotomic s;
  for (int ci = 0; ci < g->num_classes(); ++ci) {
    Rat cls(static_cast<long>(g->classes()[ci].size()));
    s += cls * (a.at_class(ci) * b.at_class(ci).conj());
  }
  return s.rational_part() / Rat(static_cast<long>(g->order()));
}

namespace {

std::mutex g_irr_mutex;
std::map<const FiniteGroup*, std::pair<GroupPtr, std::vector<Character>>> g_irr_cache;

std::vector<Character> compute_irreducibles(const GroupPtr& g) {
  std::vector<Character> out;
  if (g->is_abelian()) {
    for (const LinearChar& chi : linear_characters(g)) out.push_back(Character::from_linear(chi));
  } else {
    std::map<std::string, Character> found;
    Int sq = 0;
    const Int target(g->order());
    auto subs = g->subgroups_up_to_conjugacy();
    std::sort(subs.begin(), subs.end(),
              [](const Subgroup& x, const Subgroup& y) { return x.order() > y.order(); });
    for (const Subgroup& u : subs) {
      EmbeddedGroup ug = g->subgroup_group(u);
      for (const LinearChar& chi : linear_characters(ug.grp)) {
        Character ind = Character::from_linear(chi).induced_to(g, ug);
        if (schur_inner(ind, ind) != 1) continue;
        std::string k = ind.key();
        if (found.count(k)) continue;
        Int d = ind.degree();
        sq += d * d;
        found.emplace(std::move(k), std::move(ind));
        if (sq == target) break;
      }
      if (sq == target) break;
    }
    if (sq != target)
      throw std::logic_error("irreducible sweep incomplete for " + g->name());
    for (auto& [k, chi] : found) out.push_back(std::move(chi));
  }
  std::sort(out.begin(), out.end(), [](const Character& x, const Character& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x.key() < y.key();
  });
  Int sq = 0;
  for (const Character& chi : out) sq += chi.degree() * chi.degree();
  if (sq != g->order()) throw std::logic_error("degree certificate failed for " + g->name());
  return out;
}

}  // namespace

const std::vector<Character>& irreducibles(const GroupPtr& g) {
  {
    std::lock_guard<std::mutex> lock(g_irr_mutex);
    auto it = g_irr_cache.find(g.get());
    if (it != g_irr_cache.end()) return it->second.second;
  }
  std::vector<Character> irr = compute_irreducibles(g);
  std::lock_guard<std::mutex> lock(g_irr_mutex);
  return g_irr_cache.emplace(g.get(), std::make_pair(g, std::move(irr)))
      .first->second.second;
}

SurjectionReport irr_surjection_check(const GroupPtr& g, const QuotientGroup& gamma,
                                      const Subgroup& z) {
  if (gamma.proj.source != g) throw std::invalid_argument("surjection check: quotient mismatch");
  SurjectionReport rep;
  std::vector<Character> twists;
  for (const LinearChar& chi : linear_characters(gamma.grp))
    twists.push_back(Character::from_linear(chi).inflated_along(gamma));
  QuotientGroup qz = g->quotient(z);
  std::vector<Character> inflated;
  for (const Character& rho : irreducibles(qz.grp)) inflated.push_back(rho.inflated_along(qz));
  const auto& irr = irreducibles(g);
  rep.witness.assign(irr.size(), {-1, -1});
  for (size_t i = 0; i < irr.size(); ++i) {
    bool hit = false;
    for (size_t a = 0; a < twists.size() && !hit; ++a)
      for (size_t b = 0; b < inflated.size() && !hit; ++b)
        if (twists[a].tensor(inflated[b]) == irr[i]) {
          rep.witness[i] = {static_cast<int>(a), static_cast<int>(b)};
          hit = true;
        }
    if (!hit) rep.uncovered.push_back(static_cast<int>(i));
  }
  rep.complete = rep.uncovered.empty();
  return rep;
}

}  // namespace pgk
