#include "pgk/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace pgk {

namespace {

// Exact division of integer polynomials, quotient of (x^n - 1) by the
// product of the proper-divisor cyclotomics.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  std::vector<Int> q(num.size() - den.size() + 1, Int(0));
  for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
    Int c = num[i + den.size() - 1];  // den is monic
    q[i] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (const Int& c : num)
    if (c != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

std::map<long, std::vector<Int>> g_phi_cache;
std::mutex g_phi_mutex;

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long n) {
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  auto it = g_phi_cache.find(n);
  if (it != g_phi_cache.end()) return it->second;
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) {
      // recurse without re-locking
      auto jt = g_phi_cache.find(d);
      if (jt == g_phi_cache.end()) {
        g_phi_mutex.unlock();
        cyclotomic_polynomial(d);
        g_phi_mutex.lock();
        jt = g_phi_cache.find(d);
      }
      num = poly_div_exact(std::move(num), jt->second);
    }
  return g_phi_cache.emplace(n, std::move(num)).first->second;
}

Cyclotomic::Cyclotomic(long n, std::vector<Rat> coeffs) : n_(n) {
  const auto& phi = cyclotomic_polynomial(n);
  const size_t deg = phi.size() - 1;
  // reduce mod Phi_n
  for (long i = static_cast<long>(coeffs.size()) - 1; i >= static_cast<long>(deg); --i) {
    Rat c = coeffs[i];
    if (c != 0)
      for (size_t j = 0; j < phi.size(); ++j) coeffs[i - deg + j] -= c * Rat(phi[j]);
  }
  coeffs.resize(deg, Rat(0));
  c_ = std::move(coeffs);
}

Cyclotomic Cyclotomic::zeta(long n, long power) {
  power %= n;
  if (power < 0) power += n;
  std::vector<Rat> c(power + 1, Rat(0));
  c[power] = 1;
  return Cyclotomic(n, std::move(c));
}

bool Cyclotomic::is_zero() const {
  for (const Rat& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyclotomic::rational_part() const {
  if (!is_rational()) throw std::runtime_error("cyclotomic value is not rational: " + str());
  return c_[0];
}

Cyclotomic Cyclotomic::lifted_to(long m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) throw std::invalid_argument("lifted_to: conductor must be a multiple");
  long s = m / n_;
  std::vector<Rat> c(static_cast<size_t>(s) * c_.size() + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) c[i * s] = c_[i];
  return Cyclotomic(m, std::move(c));
}

Cyclotomic Cyclotomic::galois(long j) const {
  j %= n_;
  if (j < 0) j += n_;
  if (gcd_l(j, n_) != 1) throw std::invalid_argument("galois: exponent not coprime to conductor");
  std::vector<Rat> c(static_cast<size_t>(n_) * c_.size() + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) c[i * j] += c_[i];
  return Cyclotomic(n_, std::move(c));
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  long m = lcm_l(a.n_, b.n_);
  Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  long m = lcm_l(a.n_, b.n_);
  Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
  return x;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic x = *this;
  for (Rat& c : x.c_) c = -c;
  return x;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  long m = lcm_l(a.n_, b.n_);
  Cyclotomic x = a.lifted_to(m), y = b.lifted_to(m);
  std::vector<Rat> c(x.c_.size() + y.c_.size(), Rat(0));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (size_t j = 0; j < y.c_.size(); ++j)
      if (y.c_[j] != 0) c[i + j] += x.c_[i] * y.c_[j];
  }
  return Cyclotomic(m, std::move(c));
}

Cyclotomic operator*(const Rat& r, const Cyclotomic& a) {
  Cyclotomic x = a;
  std::vector<Rat> c = x.coeffs();
  for (Rat& v : c) v *= r;
  return Cyclotomic(a.conductor(), std::move(c));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  long m = lcm_l(a.n_, b.n_);
  return a.lifted_to(m).c_ == b.lifted_to(m).c_;
}

namespace {

// Extended Euclid over Q[x]: returns s with s*f == 1 mod phi.
std::vector<Rat> poly_invert(std::vector<Rat> f, std::vector<Rat> phi) {
  auto deg = [](const std::vector<Rat>& p) {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
      if (p[i] != 0) return i;
    return -1L;
  };
  std::vector<Rat> r0 = std::move(phi), r1 = std::move(f);
  std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};
  while (deg(r1) > 0) {
    long d0 = deg(r0), d1 = deg(r1);
    if (d0 < d1) { std::swap(r0, r1); std::swap(s0, s1); continue; }
    Rat c = r0[d0] / r1[d1];
    long sh = d0 - d1;
    for (long i = 0; i <= d1; ++i) r0[i + sh] -= c * r1[i];
    if (s0.size() < s1.size() + sh) s0.resize(s1.size() + sh, Rat(0));
    for (size_t i = 0; i < s1.size(); ++i) s0[i + sh] -= c * s1[i];
  }
  long d1 = deg(r1);
  if (d1 != 0) throw std::domain_error("cyclotomic inverse of zero");
  Rat lead = r1[0];
  for (Rat& c : s1) c /= lead;
  return s1;
}

}  // namespace

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic");
  const auto& phi_i = cyclotomic_polynomial(n_);
  std::vector<Rat> phi(phi_i.size());
  for (size_t i = 0; i < phi_i.size(); ++i) phi[i] = Rat(phi_i[i]);
  std::vector<Rat> s = poly_invert(c_, phi);
  return Cyclotomic(n_, std::move(s));
}

Cyclotomic Cyclotomic::pow(long e) const {
  Cyclotomic base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Cyclotomic r(Rat(1));
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

std::string Cyclotomic::str() const {
  std::ostringstream os;
  os << "Q(z" << n_ << ")[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].str();
  }
  os << "]";
  return os.str();
}

}  // namespace pgk
