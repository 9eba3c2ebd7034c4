#include "pgk/group_ring.hpp"

#include <algorithm>
#include <sstream>

namespace pgk {

namespace {

std::uint64_t pk_modulus(long p, int k) {
  unsigned __int128 m = 1;
  for (int i = 0; i < k; ++i) {
    m *= static_cast<unsigned>(p);
    if (m > (static_cast<unsigned __int128>(1) << 62))
      throw std::overflow_error("group ring: modulus exceeds 62 bits");
  }
  return static_cast<std::uint64_t>(m);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void check_ring(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.g != b.g || a.p != b.p || a.k != b.k)
    throw std::invalid_argument("group ring: incompatible operands");
}

}  // namespace

GroupRingElement GroupRingElement::zero(GroupPtr g, long p, int k) {
  GroupRingElement r;
  r.p = p;
  r.k = k;
  r.m = pk_modulus(p, k);
  r.c.assign(g->order(), 0);
  r.g = std::move(g);
  return r;
}

GroupRingElement GroupRingElement::one(GroupPtr g, long p, int k) {
  GroupRingElement r = zero(g, p, k);
  r.c[r.g->identity()] = 1;
  return r;
}

GroupRingElement GroupRingElement::of_element(GroupPtr g, long p, int k, int el,
                                              std::uint64_t coef) {
  GroupRingElement r = zero(std::move(g), p, k);
  r.c[el] = coef % r.m;
  return r;
}

std::uint64_t GroupRingElement::augmentation() const {
  std::uint64_t s = 0;
  for (std::uint64_t v : c) s = (s + v) % m;
  return s;
}

bool GroupRingElement::is_zero() const {
  for (std::uint64_t v : c)
    if (v) return false;
  return true;
}

bool GroupRingElement::divisible_by(int j) const {
  std::uint64_t pj = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(j));
  for (std::uint64_t v : c)
    if (v % pj) return false;
  return true;
}

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
  check_ring(a, b);
  GroupRingElement r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % r.m;
  return r;
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
  check_ring(a, b);
  GroupRingElement r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + r.m - b.c[i]) % r.m;
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r = *this;
  for (std::uint64_t& v : r.c) v = (m - v) % m;
  return r;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  check_ring(a, b);
  GroupRingElement r = GroupRingElement::zero(a.g, a.p, a.k);
  const int n = a.g->order();
  for (int i = 0; i < n; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < n; ++j)
      if (b.c[j]) {
        int t = a.g->mul(i, j);
        r.c[t] = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a.c[i]) * b.c[j] + r.c[t]) % r.m);
      }
  }
  return r;
}

bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
  check_ring(a, b);
  return a.c == b.c;
}

GroupRingElement GroupRingElement::scalar_times(std::uint64_t s) const {
  GroupRingElement r = *this;
  for (std::uint64_t& v : r.c) v = mulmod(v, s % m, m);
  return r;
}

GroupRingElement GroupRingElement::inverse() const {
  if (!is_unit()) throw std::domain_error("group ring inverse of non-unit");
  // u * x0 - 1 lies in the radical (p, augmentation ideal), which is
  // nilpotent mod p^k, so the quadratic lift converges.
  GroupRingElement x = one(g, p, k).scalar_times(inv_mod(augmentation(), p, m));
  GroupRingElement two = one(g, p, k).scalar_times(2 % m);
  for (int it = 0; it < 2 * k * g->order() + 8; ++it) {
    GroupRingElement x2 = x * (two - *this * x);
    if (x2 == x) {
      if (!(*this * x == one(g, p, k))) throw std::logic_error("inverse verification failed");
      return x;
    }
    x = x2;
  }
  throw std::logic_error("group ring inverse did not converge");
}

GroupRingElement GroupRingElement::pow(long e) const {
  GroupRingElement base = e < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  GroupRingElement r = one(g, p, k);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

GroupRingElement GroupRingElement::mapped_along(const GroupHom& f) const {
  if (f.source != g) throw std::invalid_argument("mapped_along: source mismatch");
  GroupRingElement r = zero(f.target, p, k);
  for (size_t i = 0; i < c.size(); ++i)
    r.c[f(static_cast<int>(i))] = (r.c[f(static_cast<int>(i))] + c[i]) % m;
  return r;
}

std::string GroupRingElement::str() const {
  std::ostringstream os;
  os << g->name() << "/" << p << "^" << k << "[";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << c[i];
  }
  os << "]";
  return os.str();
}

GroupRingElement random_element(const GroupPtr& g, long p, int k, Rng& rng) {
  GroupRingElement r = GroupRingElement::zero(g, p, k);
  for (std::uint64_t& v : r.c) v = rng.below(r.m);
  return r;
}

GroupRingElement random_unit(const GroupPtr& g, long p, int k, Rng& rng) {
  GroupRingElement r = random_element(g, p, k, rng);
  while (!r.is_unit()) r.c[g->identity()] = (r.c[g->identity()] + 1) % r.m;
  return r;
}

GroupRingElement random_one_unit(const GroupPtr& g, long p, int k, Rng& rng) {
  GroupRingElement x = random_element(g, p, k, rng);
  std::uint64_t t = x.augmentation() % static_cast<std::uint64_t>(p);
  x.c[g->identity()] = (x.c[g->identity()] + x.m - t) % x.m;
  return GroupRingElement::one(g, p, k) + x;
}

namespace {

// Determinant of a scalar matrix over Z/p^k by elimination with a
// minimal-valuation pivot (such a pivot divides every remaining entry).
std::uint64_t scalar_determinant(std::vector<std::vector<std::uint64_t>> a, long p, int k,
                                 std::uint64_t m) {
  const size_t n = a.size();
  std::uint64_t det = 1 % m;
  bool neg = false;
  for (size_t r = 0; r < n; ++r) {
    size_t bi = n, bj = n;
    long bv = k + 1;
    for (size_t i = r; i < n; ++i)
      for (size_t j = r; j < n; ++j) {
        long v = a[i][j] == 0 ? k + 1 : val_u64(a[i][j], p);
        if (v < bv) { bv = v; bi = i; bj = j; }
      }
    if (bv > k) return 0;  // remaining block vanishes
    if (bi != r) { std::swap(a[bi], a[r]); neg = !neg; }
    if (bj != r) {
      for (size_t i = 0; i < n; ++i) std::swap(a[i][bj], a[i][r]);
      neg = !neg;
    }
    std::uint64_t piv = a[r][r];
    std::uint64_t pv = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(bv));
    std::uint64_t unit_inv = inv_mod(piv / pv, p, m);
    for (size_t i = r + 1; i < n; ++i) {
      if (!a[i][r]) continue;
      std::uint64_t f = mulmod(a[i][r] / pv, unit_inv, m);
      for (size_t j = r; j < n; ++j)
        a[i][j] = (a[i][j] + m - mulmod(f, a[r][j], m)) % m;
    }
    det = mulmod(det, piv, m);
  }
  return neg ? (m - det) % m : det;
}

}  // namespace

GroupRingElement ring_determinant(std::vector<std::vector<GroupRingElement>> mat) {
  const size_t n = mat.size();
  if (n == 0) throw std::invalid_argument("determinant of empty matrix");
  const GroupRingElement& probe = mat[0][0];
  if (!probe.g->is_abelian())
    throw std::invalid_argument("ring_determinant: entries must be commutative");
  if (n == 1) return mat[0][0];
  if (probe.g->order() == 1) {
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) a[i][j] = mat[i][j].c[0];
    GroupRingElement r = GroupRingElement::zero(probe.g, probe.p, probe.k);
    r.c[0] = scalar_determinant(std::move(a), probe.p, probe.k, probe.m);
    return r;
  }
  // Bird's division-free algorithm: X <- mu(X) * M, n-1 times;
  // det = (-1)^{n-1} X[0][0].
  auto mu = [&](const std::vector<std::vector<GroupRingElement>>& x) {
    std::vector<std::vector<GroupRingElement>> y(
        n, std::vector<GroupRingElement>(n, GroupRingElement::zero(probe.g, probe.p, probe.k)));
    GroupRingElement tail = GroupRingElement::zero(probe.g, probe.p, probe.k);
    for (size_t i = n; i-- > 0;) {
      y[i][i] = -tail;
      tail += x[i][i];
      for (size_t j = i + 1; j < n; ++j) y[i][j] = x[i][j];
    }
    return y;
  };
  std::vector<std::vector<GroupRingElement>> x = mat;
  for (size_t step = 0; step + 1 < n; ++step) {
    auto mx = mu(x);
    std::vector<std::vector<GroupRingElement>> nx(
        n, std::vector<GroupRingElement>(n, GroupRingElement::zero(probe.g, probe.p, probe.k)));
    for (size_t i = 0; i < n; ++i)
      for (size_t t = i; t < n; ++t) {  // mu(x) is upper triangular
        if (mx[i][t].is_zero()) continue;
        for (size_t j = 0; j < n; ++j)
          if (!mat[t][j].is_zero()) nx[i][j] += mx[i][t] * mat[t][j];
      }
    x = std::move(nx);
  }
  return (n % 2 == 1) ? x[0][0] : -x[0][0];
}

GroupRingElement ring_determinant_laplace(const std::vector<std::vector<GroupRingElement>>& mat) {
  const size_t n = mat.size();
  const GroupRingElement& probe = mat[0][0];
  if (n == 1) return mat[0][0];
  if (n > 6) throw std::invalid_argument("laplace reference limited to n <= 6");
  GroupRingElement acc = GroupRingElement::zero(probe.g, probe.p, probe.k);
  for (size_t i = 0; i < n; ++i) {
    if (mat[i][0].is_zero()) continue;
    std::vector<std::vector<GroupRingElement>> minor;
    for (size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      minor.emplace_back(mat[r].begin() + 1, mat[r].end());
    }
    GroupRingElement term = mat[i][0] * ring_determinant_laplace(minor);
    acc += (i % 2 == 0) ? term : -term;
  }
  return acc;
}

GroupRingElement theta_with_transversal(const GroupRingElement& u, const Subgroup& U,
                                        const std::vector<int>& transversal) {
  const GroupPtr& g = u.g;
  if (U.parent != g) throw std::invalid_argument("theta: subgroup of a different group");
  EmbeddedGroup ug = g->subgroup_group(U);
  QuotientGroup uab = ug.grp->abelianization();
  const size_t n = transversal.size();
  if (n != static_cast<size_t>(g->order() / U.order()))
    throw std::invalid_argument("theta: transversal has wrong size");
  std::vector<int> coset(g->order(), -1);
  for (size_t i = 0; i < n; ++i)
    for (int h : U.elems) {
      int x = g->mul(transversal[i], h);
      if (coset[x] != -1) throw std::invalid_argument("theta: not a transversal");
      coset[x] = static_cast<int>(i);
    }
  std::vector<std::vector<GroupRingElement>> mat(
      n, std::vector<GroupRingElement>(n, GroupRingElement::zero(uab.grp, u.p, u.k)));
  for (size_t i = 0; i < n; ++i)
    for (int s = 0; s < g->order(); ++s) {
      if (!u.c[s]) continue;
      int x = g->mul(s, transversal[i]);  // left multiplication: s t_i = t_j h
      int j = coset[x];
      int h = g->mul(g->inv(transversal[j]), x);  // t_j^{-1} s t_i, in U
      int hbar = uab.proj(ug.from_parent[h]);
      auto& entry = mat[j][i];
      entry.c[hbar] = (entry.c[hbar] + u.c[s]) % entry.m;
    }
  return ring_determinant(std::move(mat));
}

GroupRingElement theta(const GroupRingElement& u, const Subgroup& U) {
  return theta_with_transversal(u, U, left_transversal(u.g, U));
}

GroupHom hom_from_fn(GroupPtr src, GroupPtr dst, const std::function<int(int)>& fn) {
  GroupHom h;
  h.map.resize(src->order());
  for (int i = 0; i < src->order(); ++i) h.map[i] = fn(i);
  h.source = std::move(src);
  h.target = std::move(dst);
  h.validate();
  return h;
}

GroupRingElement sigma_apply(const GroupRingElement& x, const std::vector<GroupHom>& action) {
  GroupRingElement acc = GroupRingElement::zero(x.g, x.p, x.k);
  for (const GroupHom& f : action) acc += x.mapped_along(f);
  return acc;
}

std::vector<GroupHom> conjugation_action(const GroupPtr& amb, const Subgroup& u,
                                         const Subgroup& a) {
  if (!u.contains(a)) throw std::invalid_argument("sigma: A not inside U");
  EmbeddedGroup ag = amb->subgroup_group(a);
  if (!ag.grp->is_abelian()) throw std::invalid_argument("sigma: A not abelian");
  // transversal of A in U
  std::vector<int> reps;
  std::vector<char> seen(amb->order(), 0);
  for (int el : u.elems) {
    if (seen[el]) continue;
    reps.push_back(el);
    for (int h : a.elems) seen[amb->mul(el, h)] = 1;
  }
  std::vector<GroupHom> out;
  for (int r : reps)
    out.push_back(hom_from_fn(ag.grp, ag.grp, [&](int i) {
      int conj = amb->conj(ag.to_parent[i], r);
      int back = ag.from_parent[conj];
      if (back < 0) throw std::invalid_argument("sigma: A not normal in U");
      return back;
    }));
  return out;
}

std::vector<GroupHom> conjugation_action_on_ab(const GroupPtr& g, const Subgroup& gprime) {
  EmbeddedGroup pg = g->subgroup_group(gprime);
  QuotientGroup pab = pg.grp->abelianization();
  std::vector<GroupHom> out;
  for (int r : left_transversal(g, gprime))
    out.push_back(hom_from_fn(pab.grp, pab.grp, [&](int i) {
      int lift = pg.to_parent[pab.section[i]];
      int conj = g->conj(lift, r);
      int back = pg.from_parent[conj];
      if (back < 0) throw std::invalid_argument("wall action: subgroup not normal");
      return pab.proj(back);
    }));
  return out;
}

std::optional<std::vector<std::uint64_t>> solve_mod_pk(
    std::vector<std::vector<std::uint64_t>> a, std::vector<std::uint64_t> y, long p, int k,
    std::string* obstruction) {
  const std::uint64_t m = pk_modulus(p, k);
  const size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  // column-operation tracker: x = C * w
  std::vector<std::vector<std::uint64_t>> cmat(cols, std::vector<std::uint64_t>(cols, 0));
  for (size_t i = 0; i < cols; ++i) cmat[i][i] = 1;
  size_t rank = 0;
  std::vector<long> pivval;
  while (rank < rows && rank < cols) {
    size_t bi = rows, bj = cols;
    long bv = k + 1;
    for (size_t i = rank; i < rows; ++i)
      for (size_t j = rank; j < cols; ++j) {
        long v = a[i][j] == 0 ? k + 1 : val_u64(a[i][j], p);
        if (v < bv) { bv = v; bi = i; bj = j; }
      }
    if (bv > k) break;
    if (bi != rank) { std::swap(a[bi], a[rank]); std::swap(y[bi], y[rank]); }
    if (bj != rank) {
      for (size_t i = 0; i < rows; ++i) std::swap(a[i][bj], a[i][rank]);
      std::swap(cmat[bj], cmat[rank]);  // cmat stored column-major: cmat[j] is column j
    }
    std::uint64_t piv = a[rank][rank];
    std::uint64_t pv = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(bv));
    std::uint64_t unit_inv = inv_mod(piv / pv, p, m);
    for (size_t i = rank + 1; i < rows; ++i) {
      if (!a[i][rank]) continue;
      std::uint64_t f = mulmod(a[i][rank] / pv, unit_inv, m);
      for (size_t j = rank; j < cols; ++j)
        a[i][j] = (a[i][j] + m - mulmod(f, a[rank][j], m)) % m;
      y[i] = (y[i] + m - mulmod(f, y[rank], m)) % m;
    }
    for (size_t j = rank + 1; j < cols; ++j) {
      if (!a[rank][j]) continue;
      std::uint64_t f = mulmod(a[rank][j] / pv, unit_inv, m);
      for (size_t i = rank; i < rows; ++i)
        a[i][j] = (a[i][j] + m - mulmod(f, a[i][rank], m)) % m;
      for (size_t i = 0; i < cols; ++i)
        cmat[j][i] = (cmat[j][i] + m - mulmod(f, cmat[rank][i], m)) % m;
    }
    pivval.push_back(bv);
    ++rank;
  }
  // back-solve the diagonal system
  std::vector<std::uint64_t> w(cols, 0);
  for (size_t i = 0; i < rank; ++i) {
    std::uint64_t piv = a[i][i];
    std::uint64_t pv = pow_u64(static_cast<std::uint64_t>(p), static_cast<unsigned>(pivval[i]));
    if (y[i] % pv) {
      if (obstruction) {
        std::ostringstream os;
        os << "row " << i << ": residue " << y[i] << " not divisible by " << p << "^"
           << pivval[i];
        *obstruction = os.str();
      }
      return std::nullopt;
    }
    w[i] = mulmod(y[i] / pv, inv_mod(piv / pv, p, m), m);
  }
  for (size_t i = rank; i < rows; ++i)
    if (y[i]) {
      if (obstruction) {
        std::ostringstream os;
        os << "row " << i << ": residue " << y[i] << " outside the image";
        *obstruction = os.str();
      }
      return std::nullopt;
    }
  std::vector<std::uint64_t> x(cols, 0);
  for (size_t j = 0; j < cols; ++j)
    for (size_t i = 0; i < cols; ++i)
      x[i] = (x[i] + mulmod(cmat[j][i], w[j], m)) % m;
  return x;
}

SigmaSolveResult sigma_image_solve(const GroupRingElement& y,
                                   const std::vector<GroupHom>& action) {
  const int n = y.g->order();
  std::vector<std::vector<std::uint64_t>> mat(static_cast<size_t>(n),
                                              std::vector<std::uint64_t>(n, 0));
  for (int j = 0; j < n; ++j)
    for (const GroupHom& f : action) mat[f(j)][j] = (mat[f(j)][j] + 1) % y.m;
  SigmaSolveResult res;
  std::string obs;
  auto sol = solve_mod_pk(mat, y.c, y.p, y.k, &obs);
  if (!sol) {
    res.member = false;
    res.obstruction = obs;
    return res;
  }
  GroupRingElement wit = GroupRingElement::zero(y.g, y.p, y.k);
  wit.c = *sol;
  if (!(sigma_apply(wit, action) == y)) throw std::logic_error("sigma witness failed re-check");
  res.member = true;
  res.witness = std::move(wit);
  return res;
}

const GroupRingElement& UnitTuple::at(const std::string& member_key) const {
  auto it = entries.find(member_key);
  if (it == entries.end()) throw std::invalid_argument("tuple missing member " + member_key);
  return it->second;
}

UnitTuple theta_tuple(const GroupRingElement& u, const SubqSetPtr& s) {
  if (s->g != u.g) throw std::invalid_argument("theta_tuple: group mismatch");
  UnitTuple t;
  t.s = s;
  t.p = u.p;
  t.k = u.k;
  for (const Subquotient& mem : s->members) {
    GroupRingElement defl = u.mapped_along(mem.qbar.proj);
    t.entries.emplace(mem.key(), theta(defl, mem.u));
  }
  return t;
}

}  // namespace pgk
