#include "pgk/logdet.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace pgk {

namespace {

std::uint64_t pk_modulus(long p, int k) {
  unsigned __int128 m = 1;
  for (int i = 0; i < k; ++i) {
    m *= static_cast<unsigned>(p);
    if (m > (static_cast<unsigned __int128>(1) << 62))
      throw std::overflow_error("trace element: modulus exceeds 62 bits");
  }
  return static_cast<std::uint64_t>(m);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void check_trace(const TraceElement& a, const TraceElement& b) {
  if (a.g != b.g || a.p != b.p || a.k != b.k)
    throw std::invalid_argument("trace elements incompatible");
}

int conductor_exp(const GroupPtr& g) {
  long e = g->exponent();
  int a = 0;
  while (e > 1) { e /= g->prime(); ++a; }
  return a;
}

}  // namespace

TraceElement TraceElement::zero_trunc(GroupPtr g, long p, int k) {
  TraceElement t;
  t.p = p;
  t.k = k;
  t.m = pk_modulus(p, k);
  t.ct.assign(g->num_classes(), 0);
  t.g = std::move(g);
  return t;
}

TraceElement TraceElement::zero_exact(GroupPtr g, long p) {
  TraceElement t;
  t.p = p;
  t.cx.assign(g->num_classes(), Rat(0));
  t.g = std::move(g);
  return t;
}

bool TraceElement::is_zero() const {
  if (exact()) {
    for (const Rat& r : cx)
      if (r != 0) return false;
    return true;
  }
  for (std::uint64_t v : ct)
    if (v) return false;
  return true;
}

TraceElement TraceElement::reduced_to(int k2) const {
  TraceElement t = zero_trunc(g, p, k2);
  if (exact()) {
    for (size_t i = 0; i < cx.size(); ++i) {
      Int num = numerator(cx[i]), den = denominator(cx[i]);
      if (den % p == 0) throw std::domain_error("trace coefficient not p-integral: " + cx[i].str());
      Int v = num % Int(t.m);
      if (v < 0) v += Int(t.m);
      std::uint64_t d = static_cast<std::uint64_t>(den % Int(t.m));
      t.ct[i] = mulmod(static_cast<std::uint64_t>(v), inv_mod(d, p, t.m), t.m);
    }
    return t;
  }
  if (k2 > k) throw std::invalid_argument("trace precision cannot grow");
  for (size_t i = 0; i < ct.size(); ++i) t.ct[i] = ct[i] % t.m;
  return t;
}

TraceElement TraceElement::mapped_along(const GroupHom& f) const {
  if (f.source != g) throw std::invalid_argument("trace map: source mismatch");
  TraceElement t = exact() ? zero_exact(f.target, p) : zero_trunc(f.target, p, k);
  for (int ci = 0; ci < g->num_classes(); ++ci) {
    int tc = f.target->class_of(f(g->class_rep(ci)));
    if (exact())
      t.cx[tc] += cx[ci];
    else
      t.ct[tc] = (t.ct[tc] + ct[ci]) % t.m;
  }
  return t;
}

bool TraceElement::congruent(const TraceElement& other, int j) const {
  check_trace(*this, other);
  if (exact()) throw std::invalid_argument("congruent: use truncated mode");
  std::uint64_t pj = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(j));
  for (size_t i = 0; i < ct.size(); ++i)
    if ((ct[i] + m - other.ct[i]) % pj) return false;
  return true;
}

TraceElement operator+(const TraceElement& a, const TraceElement& b) {
  check_trace(a, b);
  TraceElement t = a;
  if (a.exact())
    for (size_t i = 0; i < t.cx.size(); ++i) t.cx[i] += b.cx[i];
  else
    for (size_t i = 0; i < t.ct.size(); ++i) t.ct[i] = (t.ct[i] + b.ct[i]) % t.m;
  return t;
}

TraceElement operator-(const TraceElement& a, const TraceElement& b) {
  check_trace(a, b);
  TraceElement t = a;
  if (a.exact())
    for (size_t i = 0; i < t.cx.size(); ++i) t.cx[i] -= b.cx[i];
  else
    for (size_t i = 0; i < t.ct.size(); ++i) t.ct[i] = (t.ct[i] + t.m - b.ct[i]) % t.m;
  return t;
}

TraceElement TraceElement::scalar_times(const Rat& r) const {
  if (!exact()) throw std::invalid_argument("scalar_times: exact mode only");
  TraceElement t = *this;
  for (Rat& v : t.cx) v *= r;
  return t;
}

bool operator==(const TraceElement& a, const TraceElement& b) {
  check_trace(a, b);
  return a.exact() ? a.cx == b.cx : a.ct == b.ct;
}

std::string TraceElement::str() const {
  std::ostringstream os;
  os << "T(" << g->name() << ")[";
  for (int i = 0; i < g->num_classes(); ++i) {
    if (i) os << ",";
    if (exact())
      os << cx[i].str();
    else
      os << ct[i];
  }
  os << "]";
  return os.str();
}

TraceElement tau(const GroupRingElement& x) {
  TraceElement t = TraceElement::zero_trunc(x.g, x.p, x.k);
  for (int i = 0; i < x.g->order(); ++i)
    t.ct[x.g->class_of(i)] = (t.ct[x.g->class_of(i)] + x.c[i]) % t.m;
  return t;
}

TraceElement frobenius_phi(const TraceElement& t) {
  TraceElement r = t.exact() ? TraceElement::zero_exact(t.g, t.p)
                             : TraceElement::zero_trunc(t.g, t.p, t.k);
  for (int ci = 0; ci < t.g->num_classes(); ++ci) {
    int tc = t.g->class_of(t.g->power(t.g->class_rep(ci), t.p));
    if (t.exact())
      r.cx[tc] += t.cx[ci];
    else
      r.ct[tc] = (r.ct[tc] + t.ct[ci]) % r.m;
  }
  return r;
}

int log_slack(long p, int series_cap) {
  int v = 1;
  long pw = p;
  while (pw < series_cap) { pw *= p; ++v; }
  return v + 1;
}

namespace {

// tau(p^V * log u) at the full precision of u, together with the scale V.
// Keeping the scale attached sidesteps the fact that tau(log u) itself can
// carry denominators when the group has elements of order p^2 or higher.
std::pair<TraceElement, int> scaled_tau_log(const GroupRingElement& u) {
  const long p = u.p;
  const int W = u.k;
  GroupRingElement x = u - GroupRingElement::one(u.g, p, W);
  if (x.augmentation() % p != 0)
    throw std::domain_error("tau_log: input is not a one-unit");
  const int cap = W * u.g->order() + 8;
  const int V = log_slack(p, cap);
  const std::uint64_t pv = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(V));
  GroupRingElement acc = GroupRingElement::zero(u.g, p, W);
  GroupRingElement term = GroupRingElement::one(u.g, p, W);
  bool done = false;
  for (long i = 1; i <= cap; ++i) {
    term *= x;
    if (term.is_zero()) { done = true; break; }
    long v = val_u64(static_cast<std::uint64_t>(i), p);
    if (v > V) throw std::logic_error("log slack too small");
    std::uint64_t coef = mulmod(
        pv / pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(v)),
        inv_mod(static_cast<std::uint64_t>(i) /
                    pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(v)),
                p, u.m),
        u.m);
    GroupRingElement t = term.scalar_times(coef);
    if (i % 2 == 0)
      acc -= t;
    else
      acc += t;
  }
  if (!done) throw std::logic_error("log series did not terminate");
  return {tau(acc), V};
}

}  // namespace

TraceElement tau_log(const GroupRingElement& u) {
  auto [t, V] = scaled_tau_log(u);
  const long p = u.p;
  const int W = u.k;
  const std::uint64_t pv = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(V));
  // t = tau(p^V * log(u)); divide out the scale, dropping V digits.  This
  // certifies that tau(log u) is p-integral, which can genuinely fail once the
  // group has elements of order p^2: only the Frobenius-corrected combination
  // computed by integral_log is integral in general.
  if (W - V < 1) throw std::invalid_argument("tau_log: insufficient working precision");
  TraceElement out = TraceElement::zero_trunc(u.g, p, W - V);
  for (size_t i = 0; i < t.ct.size(); ++i) {
    if (t.ct[i] % pv) throw std::logic_error("scaled log not divisible by the scale");
    out.ct[i] = t.ct[i] / pv % out.m;
  }
  return out;
}

namespace {

// Working precision so that tau_log certifies target+1 digits.
int ledger_precision(long p, int n, int target) {
  int W = target + 2;
  for (int it = 0; it < 8; ++it) {
    int V = log_slack(p, W * n + 8);
    int W2 = target + 1 + V;
    if (W2 == W) break;
    W = W2;
  }
  return W;
}

GroupRingElement lifted(const GroupRingElement& u, int W) {
  GroupRingElement r = GroupRingElement::zero(u.g, u.p, W);
  for (size_t i = 0; i < u.c.size(); ++i) r.c[i] = u.c[i] % r.m;
  return r;
}

}  // namespace

TraceElement integral_log(const GroupRingElement& u, int target_k) {
  const long p = u.p;
  const int W = ledger_precision(p, u.g->order(), target_k);
  auto [t, V] = scaled_tau_log(lifted(u, W));
  // t = tau(p^V * log u) mod p^W.  The integral logarithm is
  //   L = tau(log u) - (1/p) Phi(tau(log u)) = (p t - Phi(t)) / p^{V+1},
  // and p^{V+1} | (p t - Phi(t)) is exactly the integrality certificate: the
  // individual summands may carry denominators, the combination may not.
  TraceElement pt = t;
  for (std::uint64_t& v : pt.ct) v = mulmod(v, static_cast<std::uint64_t>(p) % pt.m, pt.m);
  TraceElement z = pt - frobenius_phi(t);
  const std::uint64_t pv1 =
      pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(V + 1));
  TraceElement out = TraceElement::zero_trunc(u.g, p, target_k);
  for (size_t i = 0; i < z.ct.size(); ++i) {
    if (z.ct[i] % pv1)
      throw std::logic_error("integral logarithm failed integrality certificate");
    out.ct[i] = z.ct[i] / pv1 % out.m;
  }
  return out;
}

TraceElement integral_log_any_unit(const GroupRingElement& u, int target_k) {
  if (!u.is_unit()) throw std::domain_error("integral log of non-unit");
  TraceElement l = integral_log(u.pow(u.p - 1), target_k);
  std::uint64_t inv = inv_mod(static_cast<std::uint64_t>(u.p - 1) % l.m, u.p, l.m);
  for (std::uint64_t& v : l.ct) v = mulmod(v, inv, l.m);
  return l;
}

std::uint64_t teichmuller(long p, int k, std::uint64_t r) {
  std::uint64_t m = pk_modulus(p, k);
  r %= m;
  if (r % p == 0) throw std::domain_error("teichmuller: not a unit");
  for (int it = 0; it < 2 * k + 4; ++it) {
    std::uint64_t r2 = 1;
    for (long i = 0; i < p; ++i) r2 = mulmod(r2, r, m);
    if (r2 == r) return r;
    r = r2;
  }
  throw std::logic_error("teichmuller iteration did not converge");
}

Cyclotomic trace_eval(const TraceElement& t, const Character& chi) {
  if (t.g != chi.group()) throw std::invalid_argument("trace_eval: group mismatch");
  if (!t.exact()) throw std::invalid_argument("trace_eval: exact mode expected");
  Cyclotomic s;
  for (int ci = 0; ci < t.g->num_classes(); ++ci) s += t.cx[ci] * chi.at_class(ci);
  return s;
}

TruncCyclo trace_eval_trunc(const TraceElement& t, const Character& chi, int a, int W) {
  if (t.g != chi.group()) throw std::invalid_argument("trace_eval: group mismatch");
  if (t.exact() || W > t.k) throw std::invalid_argument("trace_eval: precision exceeds input");
  TruncCyclo s(t.p, a, W);
  for (int ci = 0; ci < t.g->num_classes(); ++ci) {
    if (!t.ct[ci]) continue;
    s += TruncCyclo::scalar(t.p, a, W, Int(t.ct[ci])) *
         TruncCyclo::from_exact(chi.at_class(ci), t.p, a, W);
  }
  return s;
}

TraceElement trace_invert_exact(const GroupPtr& g, const std::vector<Cyclotomic>& values) {
  const auto& irr = irreducibles(g);
  if (values.size() != irr.size()) throw std::invalid_argument("trace_invert: value count");
  TraceElement t = TraceElement::zero_exact(g, g->prime());
  for (int ci = 0; ci < g->num_classes(); ++ci) {
    Cyclotomic s;
    for (size_t i = 0; i < irr.size(); ++i) s += values[i] * irr[i].at_class(ci).conj();
    t.cx[ci] = s.rational_part() * Rat(static_cast<long>(g->classes()[ci].size()),
                                       static_cast<long>(g->order()));
  }
  return t;
}

TraceElement trace_invert_trunc(const GroupPtr& g, const std::vector<TruncCyclo>& values) {
  const auto& irr = irreducibles(g);
  if (values.size() != irr.size()) throw std::invalid_argument("trace_invert: value count");
  const long p = g->prime();
  int ag = 0;
  for (int n = g->order(); n > 1; n /= p) ++ag;
  const int a = values[0].conductor_exp();
  const int W = values[0].precision();
  if (W - ag < 1) throw std::invalid_argument("trace_invert: precision exhausted by |G|");
  TraceElement t = TraceElement::zero_trunc(g, p, W - ag);
  const std::uint64_t pag = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(ag));
  for (int ci = 0; ci < g->num_classes(); ++ci) {
    TruncCyclo s(p, a, W);
    for (size_t i = 0; i < irr.size(); ++i)
      s += values[i] * TruncCyclo::from_exact(irr[i].at_class(ci).conj(), p, a, W);
    if (!s.is_scalar())
      throw std::logic_error("trace_invert: non-scalar class coefficient " + s.str());
    unsigned __int128 num =
        static_cast<unsigned __int128>(s.scalar_value()) * g->classes()[ci].size();
    std::uint64_t numr = static_cast<std::uint64_t>(num % s.modulus());
    if (numr % pag)
      throw std::logic_error("trace_invert: coefficient not p-integral at class " +
                             std::to_string(ci));
    t.ct[ci] = numr / pag % t.m;
  }
  return t;
}

namespace {

std::mutex g_pairs_mutex;
std::map<const FiniteGroup*, std::pair<GroupPtr, std::vector<std::vector<CharPair>>>>
    g_pairs_cache;

std::vector<std::vector<CharPair>> compute_monomial_pairs(const GroupPtr& g) {
  const auto& irr = irreducibles(g);
  std::vector<std::vector<CharPair>> out(irr.size());
  constexpr size_t kPairCap = 12;
  for (const Subgroup& u : g->subgroups_up_to_conjugacy()) {
    EmbeddedGroup ug = g->subgroup_group(u);
    for (const LinearChar& chi : linear_characters(ug.grp)) {
      Character ind = Character::from_linear(chi).induced_to(g, ug);
      for (size_t i = 0; i < irr.size(); ++i)
        if (out[i].size() < kPairCap && ind == irr[i])
          out[i].push_back(make_pair_from_linear(u, chi));
    }
  }
  for (size_t i = 0; i < irr.size(); ++i)
    if (out[i].empty())
      throw std::logic_error("no monomial pair for an irreducible of " + g->name());
  return out;
}

}  // namespace

const std::vector<CharPair>& monomial_pairs(const GroupPtr& g, int irr_index) {
  std::lock_guard<std::mutex> lock(g_pairs_mutex);
  auto it = g_pairs_cache.find(g.get());
  if (it == g_pairs_cache.end())
    it = g_pairs_cache.emplace(g.get(), std::make_pair(g, compute_monomial_pairs(g))).first;
  return it->second.second.at(static_cast<size_t>(irr_index));
}

TruncCyclo pair_eval_on_ab(const CharPair& phi, const GroupRingElement& x, int a,
                           const EmbeddedGroup& ug, const QuotientGroup& uab) {
  if (x.g != uab.grp) throw std::invalid_argument("pair_eval: element not over U^ab");
  const long p = x.p;
  const long N = pow_u64(p, static_cast<unsigned>(a));
  if (N % phi.N != 0) throw std::invalid_argument("pair_eval: conductor too small");
  TruncCyclo s(p, a, x.k);
  for (int w = 0; w < uab.grp->order(); ++w) {
    if (!x.c[w]) continue;
    int parent_el = ug.to_parent[uab.section[w]];
    auto it = std::lower_bound(phi.u.elems.begin(), phi.u.elems.end(), parent_el);
    if (it == phi.u.elems.end() || *it != parent_el)
      throw std::logic_error("pair_eval: section left the subgroup");
    long e = phi.e[static_cast<size_t>(it - phi.u.elems.begin())];
    s += TruncCyclo::scalar(p, a, x.k, Int(x.c[w])) *
         TruncCyclo::zeta(p, a, x.k, e * (N / phi.N));
  }
  return s;
}

TruncCyclo det_eval(const GroupRingElement& u, int irr_index, int a) {
  const CharPair& pr = monomial_pairs(u.g, irr_index)[0];
  EmbeddedGroup ug = u.g->subgroup_group(pr.u);
  QuotientGroup uab = ug.grp->abelianization();
  return pair_eval_on_ab(pr, theta(u, pr.u), a, ug, uab);
}

std::vector<TruncCyclo> det_eval_all_pairs(const GroupRingElement& u, int irr_index, int a) {
  std::vector<TruncCyclo> out;
  for (const CharPair& pr : monomial_pairs(u.g, irr_index)) {
    EmbeddedGroup ug = u.g->subgroup_group(pr.u);
    QuotientGroup uab = ug.grp->abelianization();
    out.push_back(pair_eval_on_ab(pr, theta(u, pr.u), a, ug, uab));
  }
  return out;
}

TruncCyclo det_eval_virtual(const GroupRingElement& u, const Character& chi, int a) {
  const auto& irr = irreducibles(u.g);
  // exact match first: spares the full inner-product decomposition, which
  // dominates for large abelian groups where chi is usually irreducible
  for (size_t i = 0; i < irr.size(); ++i)
    if (irr[i] == chi) return det_eval(u, static_cast<int>(i), a);
  TruncCyclo acc = TruncCyclo::scalar(u.p, a, u.k, Int(1));
  for (size_t i = 0; i < irr.size(); ++i) {
    Rat n = schur_inner(chi, irr[i]);
    if (n == 0) continue;
    long ni = static_cast<long>(to_int(n));
    acc *= det_eval(u, static_cast<int>(i), a).pow(ni);
  }
  return acc;
}

TruncCyclo hom_L(const GroupRingElement& u, int irr_index, int a) {
  const auto& irr = irreducibles(u.g);
  TruncCyclo f_chi = det_eval(u, irr_index, a);
  TruncCyclo f_psi = det_eval_virtual(u, irr[irr_index].adams(u.p), a);
  TruncCyclo q = f_chi.pow(u.p) * f_psi.inverse();
  if (!q.congruent(TruncCyclo::scalar(u.p, a, u.k, Int(1)), 1))
    throw std::logic_error("Snaith congruence failed; hom-side log undefined");
  int V = log_slack(u.p, u.k * q.degree() + u.k + 8);
  return q.log_given_slack(V).divided_by_p(1);
}

bool snaith_congruence_holds(const GroupRingElement& u, int irr_index, int a) {
  const auto& irr = irreducibles(u.g);
  TruncCyclo f_chi = det_eval(u, irr_index, a);
  TruncCyclo f_psi = det_eval_virtual(u, irr[irr_index].adams(u.p), a);
  return (f_chi.pow(u.p) * f_psi.inverse())
      .congruent(TruncCyclo::scalar(u.p, a, u.k, Int(1)), 1);
}

TwistedRingElement operator*(const TwistedRingElement& x, const TwistedRingElement& y) {
  if (x.g != y.g || x.p != y.p || x.a != y.a || x.W != y.W)
    throw std::invalid_argument("twisted ring: incompatible operands");
  TwistedRingElement r{x.g, x.p, x.a, x.W,
                       std::vector<TruncCyclo>(x.c.size(), TruncCyclo(x.p, x.a, x.W))};
  for (size_t i = 0; i < x.c.size(); ++i) {
    if (x.c[i].is_zero()) continue;
    for (size_t j = 0; j < y.c.size(); ++j) {
      if (y.c[j].is_zero()) continue;
      int t = x.g->mul(static_cast<int>(i), static_cast<int>(j));
      r.c[t] += x.c[i] * y.c[j];
    }
  }
  return r;
}

bool operator==(const TwistedRingElement& x, const TwistedRingElement& y) {
  if (x.g != y.g || x.p != y.p || x.a != y.a || x.W != y.W) return false;
  for (size_t i = 0; i < x.c.size(); ++i)
    if (x.c[i] != y.c[i]) return false;
  return true;
}

TwistedRingElement to_twisted(const GroupRingElement& x, int a, int W) {
  TwistedRingElement r{x.g, x.p, a, W,
                       std::vector<TruncCyclo>(x.c.size(), TruncCyclo(x.p, a, W))};
  for (size_t i = 0; i < x.c.size(); ++i)
    r.c[i] = TruncCyclo::scalar(x.p, a, W, Int(x.c[i]));
  return r;
}

TwistedRingElement twist_operator(const LinearChar& phi, const TwistedRingElement& x) {
  if (phi.grp != x.g) throw std::invalid_argument("twist operator: group mismatch");
  TwistedRingElement r = x;
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = r.c[i] * phi.trunc_value(static_cast<int>(i), x.a, x.W);
  return r;
}

TruncCyclo twisted_det_eval(const TwistedRingElement& x, const LinearChar& chi) {
  if (chi.grp != x.g) throw std::invalid_argument("twisted det: group mismatch");
  if (!x.g->is_abelian()) throw std::invalid_argument("twisted det: abelian groups only");
  TruncCyclo s(x.p, x.a, x.W);
  for (size_t i = 0; i < x.c.size(); ++i)
    if (!x.c[i].is_zero()) s += x.c[i] * chi.trunc_value(static_cast<int>(i), x.a, x.W);
  return s;
}

TruncCyclo brind_eval(const UnitTuple& tuple, const Subquotient& mem,
                      const CharacterPoset& member_poset, const Character& rho,
                      const BrauerElement& b, int a) {
  const GroupPtr& h = mem.ugrp.grp;
  if (member_poset.group() != h || b.g != h || rho.group() != h)
    throw std::invalid_argument("brind: member/poset/character mismatch");
  const GroupPtr& gbar = mem.qbar.grp;
  TruncCyclo acc = TruncCyclo::scalar(tuple.p, a, tuple.k, Int(1));
  for (const auto& [pair, n] : b.terms) {
    // transport the pair's subgroup from H into G/C
    Subgroup v{gbar, {}};
    for (int e : pair.u.elems) v.elems.push_back(mem.ugrp.to_parent[e]);
    std::sort(v.elems.begin(), v.elems.end());
    std::string key = mem.c.key() + "|" + v.key();
    const GroupRingElement& entry = tuple.at(key);
    EmbeddedGroup vg = gbar->subgroup_group(v);
    QuotientGroup vab = vg.grp->abelianization();
    if (entry.g != vab.grp) throw std::logic_error("brind: tuple entry over unexpected ring");
    // phi on V^ab through the member chain
    const long N = pow_u64(tuple.p, static_cast<unsigned>(a));
    if (N % pair.N != 0) throw std::invalid_argument("brind: conductor too small");
    TruncCyclo val(tuple.p, a, tuple.k);
    for (int w = 0; w < vab.grp->order(); ++w) {
      if (!entry.c[w]) continue;
      int in_gbar = vg.to_parent[vab.section[w]];
      int in_h = mem.ugrp.from_parent[in_gbar];
      auto it = std::lower_bound(pair.u.elems.begin(), pair.u.elems.end(), in_h);
      if (it == pair.u.elems.end() || *it != in_h)
        throw std::logic_error("brind: section escaped the pair's subgroup");
      long e = pair.e[static_cast<size_t>(it - pair.u.elems.begin())];
      val += TruncCyclo::scalar(tuple.p, a, tuple.k, Int(entry.c[w])) *
             TruncCyclo::zeta(tuple.p, a, tuple.k, e * (N / pair.N));
    }
    acc *= val.pow(n);
  }
  return acc;
}

HomValue xi_of_member(const UnitTuple& tuple, const Subquotient& mem, int a) {
  const GroupPtr& h = mem.ugrp.grp;
  const CharacterPoset& poset = cached_poset(h);
  const auto& irr = irreducibles(h);
  HomValue v;
  v.h = h;
  v.a = a;
  for (size_t i = 0; i < irr.size(); ++i) {
    BrauerElement b = brauer_coefficients(poset, irr[i]);
    v.at_irr.push_back(brind_eval(tuple, mem, poset, irr[i], b, a));
  }
  return v;
}

std::vector<TruncCyclo> hom_L_of_values(const HomValue& xi) {
  const auto& irr = irreducibles(xi.h);
  const long p = xi.h->prime();
  const int W = xi.at_irr[0].precision();
  std::vector<TruncCyclo> out;
  for (size_t i = 0; i < irr.size(); ++i) {
    Character psi = irr[i].adams(p);
    TruncCyclo f_psi = TruncCyclo::scalar(p, xi.a, W, Int(1));
    if (irr[i].degree() == 1) {
      // psi(g) = chi(g^p) is again a linear character: look it up directly
      size_t j = 0;
      while (j < irr.size() && !(irr[j] == psi)) ++j;
      if (j == irr.size()) throw std::logic_error("p-power of a linear character not found");
      f_psi = xi.at_irr[j];
    } else {
      for (size_t j = 0; j < irr.size(); ++j) {
        Rat n = schur_inner(psi, irr[j]);
        if (n == 0) continue;
        f_psi *= xi.at_irr[j].pow(static_cast<long>(to_int(n)));
      }
    }
    TruncCyclo q = xi.at_irr[i].pow(p) * f_psi.inverse();
    if (!q.congruent(TruncCyclo::scalar(p, xi.a, W, Int(1)), 1))
      throw std::logic_error("Snaith congruence failed for Xi values");
    int V = log_slack(p, W * q.degree() + W + 8);
    out.push_back(q.log_given_slack(V).divided_by_p(1));
  }
  return out;
}

TraceElement t_of_member(const UnitTuple& tuple, const Subquotient& mem, int a) {
  HomValue xi = xi_of_member(tuple, mem, a);
  return trace_invert_trunc(mem.ugrp.grp, hom_L_of_values(xi));
}

ModTraceProbe modified_trace_probe(const GroupRingElement& u, const Subgroup& v, int a) {
  const GroupPtr& g = u.g;
  EmbeddedGroup vg = g->subgroup_group(v);
  QuotientGroup vab = vg.grp->abelianization();
  GroupRingElement nv = theta(u, v);
  // path A: Tr(L(theta_V u)) on linear characters of V^ab
  int target = u.k > 2 ? u.k - 2 : 1;
  TraceElement l = integral_log_any_unit(nv, target);
  // path B: **L**(Det u)(Ind rho)
  auto lins = linear_characters(vab.grp);
  const auto& irr = irreducibles(g);
  ModTraceProbe probe;
  probe.declared_precision = target;
  probe.window = target;
  probe.min_agreement = target;
  for (const LinearChar& rho : lins) {
    TruncCyclo lhs = trace_eval_trunc(l, Character::from_linear(rho), a, target);
    // inflate rho to V, induce to G, decompose
    LinearChar on_v{vg.grp, rho.N, std::vector<long>(vg.grp->order())};
    for (int i = 0; i < vg.grp->order(); ++i) on_v.e[i] = rho.e[vab.proj(i)];
    Character ind = Character::from_linear(on_v).induced_to(g, vg);
    TruncCyclo rhs(u.p, a, 1);
    bool first = true;
    for (size_t i = 0; i < irr.size(); ++i) {
      Rat n = schur_inner(ind, irr[i]);
      if (n == 0) continue;
      TruncCyclo term = hom_L(u, static_cast<int>(i), a);
      long ni = static_cast<long>(to_int(n));
      TruncCyclo scaled =
          TruncCyclo::scalar(u.p, a, term.precision(), Int(ni)) * term;
      if (first) {
        rhs = scaled;
        first = false;
      } else {
        int W = std::min(rhs.precision(), scaled.precision());
        rhs = rhs.reduced_to(W) + scaled.reduced_to(W);
      }
    }
    int W = std::min(lhs.precision(), rhs.precision());
    TruncCyclo d = lhs.reduced_to(W) - rhs.reduced_to(W);
    int agree = 0;
    while (agree < W && d.divisible_by(agree + 1)) ++agree;
    probe.window = std::min(probe.window, W);
    probe.min_agreement = std::min(probe.min_agreement, agree);
  }
  return probe;
}

}  // namespace pgk
