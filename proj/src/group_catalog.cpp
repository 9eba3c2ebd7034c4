#include "pgk/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace pgk {

namespace {

GroupPtr from_index_mul(std::string name, long p, int n,
                        const std::function<int(int, int)>& mul) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = mul(i, j);
  return FiniteGroup::from_table(std::move(name), p, std::move(t));
}

}  // namespace

GroupPtr cyclic_group(long p, int a) {
  int n = static_cast<int>(pow_u64(p, a));
  return from_index_mul("C" + std::to_string(n), p, n,
                        [n](int i, int j) { return (i + j) % n; });
}

GroupPtr elementary_abelian(long p, int rank) {
  int n = static_cast<int>(pow_u64(p, rank));
  auto mul = [p, rank](int i, int j) {
    int out = 0, mult = 1;
    for (int r = 0; r < rank; ++r) {
      int d = (i % p + j % p) % p;
      out += d * mult;
      mult *= static_cast<int>(p);
      i /= p;
      j /= p;
    }
    return out;
  };
  return from_index_mul("E" + std::to_string(n), p, n, mul);
}

GroupPtr heisenberg_group(long p) {
  if (p == 2) throw std::invalid_argument("heisenberg: p must be odd");
  int pi = static_cast<int>(p);
  int n = pi * pi * pi;
  // element = a + p*b + p^2*c, product (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
  auto mul = [pi](int x, int y) {
    int a = x % pi, b = (x / pi) % pi, c = x / (pi * pi);
    int a2 = y % pi, b2 = (y / pi) % pi, c2 = y / (pi * pi);
    int a3 = (a + a2) % pi, b3 = (b + b2) % pi, c3 = (c + c2 + a * b2) % pi;
    return a3 + pi * b3 + pi * pi * c3;
  };
  return from_index_mul("Heis" + std::to_string(n), p, n, mul);
}

GroupPtr modular_group(long p) {
  if (p == 2) throw std::invalid_argument("modular: p must be odd");
  int pi = static_cast<int>(p);
  int p2 = pi * pi, n = p2 * pi;
  // element = i + p^2*j  with i mod p^2, j mod p; (i,j)(i',j') = (i + i'(1+p)^j, j+j')
  auto mul = [pi, p2](int x, int y) {
    int i = x % p2, j = x / p2;
    int i2 = y % p2, j2 = y / p2;
    int scale = 1;
    for (int t = 0; t < j; ++t) scale = scale * (1 + pi) % p2;
    int i3 = (i + i2 * scale) % p2, j3 = (j + j2) % pi;
    return i3 + p2 * j3;
  };
  return from_index_mul("Mod" + std::to_string(n), p, n, mul);
}

GroupPtr quaternion8() {
  // indices: 1, -1, i, -i, j, -j, k, -k
  auto idx = [](int sign, int unit) { return 2 * unit + (sign < 0 ? 1 : 0); };
  auto mul = [&idx](int x, int y) {
    int sx = (x & 1) ? -1 : 1, ux = x / 2;
    int sy = (y & 1) ? -1 : 1, uy = y / 2;
    // unit table over {1,i,j,k}
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return idx(sx * sy * sgn[ux][uy], unit[ux][uy]);
  };
  return from_index_mul("Q8", 2, 8, mul);
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  if (a->prime() != b->prime()) throw std::invalid_argument("direct product: prime mismatch");
  int na = a->order(), nb = b->order();
  auto mul = [&, na](int x, int y) {
    int xa = x % na, xb = x / na;
    int ya = y % na, yb = y / na;
    return a->mul(xa, ya) + na * b->mul(xb, yb);
  };
  // identity is at index id_a + na*id_b; from_table relocates nothing, it scans
  return from_index_mul(a->name() + "x" + b->name(), a->prime(), na * nb, mul);
}

GroupPtr onedim_model(long p) {
  int pi = static_cast<int>(p);
  int p2 = pi * pi, n = pi * pi * p2;
  // element = x + p*y + p^2*t : ((x,y),t), t mod p^2, action M^t(x,y) = (x + t y, y)
  auto mul = [pi, p2](int u, int v) {
    int x = u % pi, y = (u / pi) % pi, t = u / (pi * pi);
    int x2 = v % pi, y2 = (v / pi) % pi, t2 = v / (pi * pi);
    int x3 = (x + x2 + t % pi * y2) % pi;
    int y3 = (y + y2) % pi;
    int t3 = (t + t2) % p2;
    return x3 + pi * y3 + pi * pi * t3;
  };
  return from_index_mul("SD" + std::to_string(n), p, n, mul);
}

GroupPtr permutation_group(std::string name, long p,
                           const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) throw std::invalid_argument("permutation_group: no generators");
  const size_t deg = generators[0].size();
  for (const auto& g : generators) {
    if (g.size() != deg) throw std::invalid_argument("generator degree mismatch");
    std::vector<char> seen(deg, 0);
    for (int v : g) {
      if (v < 0 || static_cast<size_t>(v) >= deg || seen[v])
        throw std::invalid_argument("not a permutation");
      seen[v] = 1;
    }
  }
  std::vector<int> ident(deg);
  for (size_t i = 0; i < deg; ++i) ident[i] = static_cast<int>(i);
  auto compose = [deg](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> h(deg);
    for (size_t i = 0; i < deg; ++i) h[i] = f[g[i]];
    return h;
  };
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems;
  index[ident] = 0;
  elems.push_back(ident);
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : generators) {
      auto nxt = compose(elems[head], gen);
      if (!index.count(nxt)) {
        if (elems.size() >= 4096) throw std::runtime_error("permutation closure too large");
        index[nxt] = static_cast<int>(elems.size());
        elems.push_back(nxt);
      }
    }
  }
  int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = index.at(compose(elems[i], elems[j]));
  return FiniteGroup::from_table(std::move(name), p, std::move(table));
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static std::vector<CatalogEntry> cat = [] {
    std::vector<CatalogEntry> c;
    auto add = [&c](std::string id, std::string desc, GroupPtr g) {
      c.push_back({std::move(id), std::move(desc), std::move(g)});
    };
    add("c3", "cyclic of order 3", cyclic_group(3, 1));
    add("c9", "cyclic of order 9", cyclic_group(3, 2));
    add("c27", "cyclic of order 27", cyclic_group(3, 3));
    add("c81", "cyclic of order 81", cyclic_group(3, 4));
    add("e9", "elementary abelian 3^2", elementary_abelian(3, 2));
    add("e27", "elementary abelian 3^3", elementary_abelian(3, 3));
    add("heis3", "extraspecial of order 27, exponent 3", heisenberg_group(3));
    add("mod27", "modular group of order 27, exponent 9", modular_group(3));
    add("sd81", "(C3 x C3) : C9, unipotent action", onedim_model(3));
    add("c5", "cyclic of order 5", cyclic_group(5, 1));
    add("c25", "cyclic of order 25", cyclic_group(5, 2));
    add("e25", "elementary abelian 5^2", elementary_abelian(5, 2));
    add("q8", "quaternion group of order 8 (p=2 engine test)", quaternion8());
    return c;
  }();
  return cat;
}

GroupPtr catalog_group(const std::string& id) {
  for (const auto& e : builtin_catalog())
    if (e.id == id) return e.group;
  throw std::invalid_argument("unknown catalog group: " + id);
}

}  // namespace pgk
