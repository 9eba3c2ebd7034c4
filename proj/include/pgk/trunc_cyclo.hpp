#pragma once

#include "pgk/cyclotomic.hpp"

namespace pgk {

/// Element of (Z/p^W)[x] / Phi_{p^a}(x): the value ring every character
/// evaluation lands in, truncated to a finite working precision W.  The
/// coefficient basis is 1, x, ..., x^{phi(p^a)-1} with x the image of
/// zeta_{p^a}.  All moduli fit in 64 bits (asserted at construction).
///
/// The ring is local: the maximal ideal is (p, x-1) and is nilpotent at
/// finite precision, so Newton iteration inverts any unit and the log /
/// exp series of one-units terminate.
class TruncCyclo {
 public:
  TruncCyclo() = default;  // invalid sentinel, p = 0
  TruncCyclo(long p, int a, int W);  // zero element

  static TruncCyclo scalar(long p, int a, int W, const Int& value);
  static TruncCyclo zeta(long p, int a, int W, long power = 1);
  /// Embed an exact cyclotomic whose conductor divides p^a and whose
  /// coefficient denominators are coprime to p.
  static TruncCyclo from_exact(const Cyclotomic& x, long p, int a, int W);

  long prime() const { return p_; }
  int conductor_exp() const { return a_; }        // conductor = p^a (p^0 = 1)
  long conductor() const { return static_cast<long>(pow_u64(p_, a_)); }
  int precision() const { return W_; }            // coefficients mod p^W
  std::uint64_t modulus() const { return m_; }
  int degree() const { return static_cast<int>(c_.size()); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_scalar() const;
  std::uint64_t scalar_value() const;  // throws unless is_scalar()
  /// Image in the residue field F_p (zeta -> 1): sum of coefficients mod p.
  std::uint64_t residue() const;
  bool is_unit() const { return residue() != 0; }

  TruncCyclo lifted_to(int a2) const;   // conductor lift, a <= a2
  TruncCyclo reduced_to(int W2) const;  // precision drop, W2 <= W
  TruncCyclo galois(long j) const;      // zeta -> zeta^j, gcd(j, p) = 1

  /// Every coefficient divisible by p^j (equivalently, element in p^j R).
  bool divisible_by(int j) const;
  /// Exact division by p^j; result carries precision W - j.
  TruncCyclo divided_by_p(int j) const;
  bool congruent(const TruncCyclo& other, int j) const;  // mod p^j

  TruncCyclo inverse() const;  // Newton iteration; throws on non-units
  TruncCyclo pow(long e) const;

  /// log of a one-unit (u = 1 mod the maximal ideal), computed through a
  /// p^V-scaled series to keep every term integral; the result carries
  /// precision W - V.  Throws if V is too small for the series length.
  TruncCyclo log_given_slack(int V) const;
  /// exp of an element of the maximal ideal, same scaling contract.
  TruncCyclo exp_given_slack(int V) const;

  friend TruncCyclo operator+(const TruncCyclo& x, const TruncCyclo& y);
  friend TruncCyclo operator-(const TruncCyclo& x, const TruncCyclo& y);
  friend TruncCyclo operator*(const TruncCyclo& x, const TruncCyclo& y);
  TruncCyclo operator-() const;
  TruncCyclo& operator+=(const TruncCyclo& y) { return *this = *this + y; }
  TruncCyclo& operator-=(const TruncCyclo& y) { return *this = *this - y; }
  TruncCyclo& operator*=(const TruncCyclo& y) { return *this = *this * y; }
  friend bool operator==(const TruncCyclo& x, const TruncCyclo& y);
  friend bool operator!=(const TruncCyclo& x, const TruncCyclo& y) { return !(x == y); }

  std::string str() const;

 private:
  void reduce(std::vector<std::uint64_t> raw);  // mod Phi_{p^a}, coefficients mod m_
  static void check_compatible(const TruncCyclo& x, const TruncCyclo& y);

  long p_ = 0;
  int a_ = 0;
  int W_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> c_;
};

}  // namespace pgk
