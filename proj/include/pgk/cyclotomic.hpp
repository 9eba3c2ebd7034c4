#pragma once

#include "pgk/util.hpp"

#include <vector>

namespace pgk {

/// Coefficients of the n-th cyclotomic polynomial (monic, integer), cached.
const std::vector<Int>& cyclotomic_polynomial(long n);

inline long euler_phi(long n) {
  long r = n;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      r -= r / q;
      while (n % q == 0) n /= q;
    }
  if (n > 1) r -= r / n;
  return r;
}

/// Exact element of Q(zeta_n), stored as a reduced polynomial in
/// Q[x]/Phi_n(x).  Equality compares after lifting both sides to the lcm
/// conductor; no conductor minimization is attempted.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_(1, Rat(0)) {}
  explicit Cyclotomic(const Rat& r) : n_(1), c_(1, r) {}
  Cyclotomic(long n, std::vector<Rat> coeffs);  // reduces mod Phi_n

  static Cyclotomic zeta(long n, long power = 1);

  long conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;  // throws unless is_rational()

  Cyclotomic lifted_to(long m) const;  // n_ | m
  Cyclotomic galois(long j) const;     // zeta -> zeta^j, gcd(j, n) = 1
  Cyclotomic conj() const { return galois(-1); }
  Cyclotomic inverse() const;          // throws on zero
  Cyclotomic pow(long e) const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  std::string str() const;

 private:
  long n_;
  std::vector<Rat> c_;  // size deg Phi_n
};

Cyclotomic operator*(const Rat& r, const Cyclotomic& a);

}  // namespace pgk
