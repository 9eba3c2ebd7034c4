#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgk {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline Int to_int(const Rat& r) {
  if (!is_integer(r)) throw std::runtime_error("expected integer, got " + r.str());
  return numerator(r);
}

/// p-adic valuation of a nonzero rational (negative for denominators).
inline long p_valuation(long p, const Rat& r) {
  if (r == 0) throw std::invalid_argument("valuation of zero");
  long v = 0;
  Int n = numerator(r), d = denominator(r);
  while (n % p == 0) { n /= p; ++v; }
  while (d % p == 0) { d /= p; --v; }
  return v;
}

inline std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Product mod m through 128 bits; moduli up to 62 bits are in range.
inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod_u64(r, b, m);
    b = mul_mod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Inverse of a unit mod p^k (m = p^k); requires gcd(a, p) = 1.
inline std::uint64_t inv_mod(std::uint64_t a, long p, std::uint64_t m) {
  a %= m;
  if (a % p == 0) throw std::domain_error("inv_mod: not a unit");
  // Newton lift of the inverse mod p.
  std::uint64_t x = pow_mod(a % p, static_cast<std::uint64_t>(p - 2), static_cast<std::uint64_t>(p));
  while (true) {
    std::uint64_t e = (2 + m - mul_mod_u64(a, x, m)) % m;  // 2 - a*x
    std::uint64_t x2 = mul_mod_u64(x, e, m);
    if (x2 == x) break;
    x = x2;
  }
  if (mul_mod_u64(a, x, m) != 1) throw std::domain_error("inv_mod failed");
  return x;
}

inline long val_u64(std::uint64_t a, long p) {
  if (a == 0) return -1;  // caller treats as "at least k"
  long v = 0;
  while (a % p == 0) { a /= p; ++v; }
  return v;
}

inline long gcd_l(long a, long b) {
  while (b) { long t = a % b; a = b; b = t; }
  return a < 0 ? -a : a;
}

inline long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

/// Deterministic generator used for every randomized sweep: mt19937_64
/// seeded directly, values drawn by modulo reduction (documented contract,
/// identical across platforms).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }
  /// Derive an independent stream (for per-task seeding).
  Rng fork(std::uint64_t salt) { return Rng(eng_() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pgk
