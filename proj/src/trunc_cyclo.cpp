#include "pgk/trunc_cyclo.hpp"

#include <sstream>

namespace pgk {

namespace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

TruncCyclo::TruncCyclo(long p, int a, int W) : p_(p), a_(a), W_(W) {
  if (p < 2 || a < 0 || W < 1) throw std::invalid_argument("TruncCyclo: bad parameters");
  unsigned __int128 m = 1;
  for (int i = 0; i < W; ++i) {
    m *= static_cast<unsigned>(p);
    if (m > (static_cast<unsigned __int128>(1) << 62))
      throw std::overflow_error("TruncCyclo: modulus exceeds 62 bits");
  }
  m_ = static_cast<std::uint64_t>(m);
  long n = conductor();
  c_.assign(static_cast<size_t>(a == 0 ? 1 : euler_phi(n)), 0);
}

void TruncCyclo::reduce(std::vector<std::uint64_t> raw) {
  const size_t deg = c_.size();
  // Phi_{p^a}(x) = sum_{i=0}^{p-1} x^{i p^{a-1}}, so
  // x^deg = -(sum_{i=0}^{p-2} x^{i p^{a-1}}).
  const long step = a_ == 0 ? 1 : static_cast<long>(pow_u64(p_, a_ - 1));
  for (long i = static_cast<long>(raw.size()) - 1; i >= static_cast<long>(deg); --i) {
    std::uint64_t v = raw[i];
    if (v == 0) continue;
    raw[i] = 0;
    if (a_ == 0) {
      raw[i - 1] = (raw[i - 1] + v) % m_;
      continue;
    }
    std::uint64_t neg = (m_ - v) % m_;
    for (long t = 0; t < p_ - 1; ++t) {
      size_t j = static_cast<size_t>(i) - deg + static_cast<size_t>(t) * step;
      raw[j] = (raw[j] + neg) % m_;
    }
  }
  raw.resize(deg, 0);
  c_ = std::move(raw);
}

TruncCyclo TruncCyclo::scalar(long p, int a, int W, const Int& value) {
  TruncCyclo r(p, a, W);
  Int v = value % Int(r.m_);
  if (v < 0) v += Int(r.m_);
  r.c_[0] = static_cast<std::uint64_t>(v);
  return r;
}

TruncCyclo TruncCyclo::zeta(long p, int a, int W, long power) {
  TruncCyclo r(p, a, W);
  long n = r.conductor();
  power %= n;
  if (power < 0) power += n;
  std::vector<std::uint64_t> raw(static_cast<size_t>(power) + 1, 0);
  raw[static_cast<size_t>(power)] = 1;
  r.reduce(std::move(raw));
  return r;
}

TruncCyclo TruncCyclo::from_exact(const Cyclotomic& x, long p, int a, int W) {
  TruncCyclo r(p, a, W);
  long n = r.conductor();
  if (n % x.conductor() != 0)
    throw std::invalid_argument("from_exact: conductor does not divide p^a");
  Cyclotomic lifted = x.lifted_to(n);
  std::vector<std::uint64_t> raw(lifted.coeffs().size(), 0);
  for (size_t i = 0; i < raw.size(); ++i) {
    const Rat& q = lifted.coeffs()[i];
    Int num = numerator(q) % Int(r.m_), den = denominator(q);
    if (num < 0) num += Int(r.m_);
    if (den % p == 0) throw std::domain_error("from_exact: denominator not prime to p");
    std::uint64_t d = static_cast<std::uint64_t>(den % Int(r.m_));
    raw[i] = mulmod(static_cast<std::uint64_t>(num), inv_mod(d, p, r.m_), r.m_);
  }
  r.reduce(std::move(raw));
  return r;
}

bool TruncCyclo::is_zero() const {
  for (std::uint64_t v : c_)
    if (v) return false;
  return true;
}

bool TruncCyclo::is_scalar() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

std::uint64_t TruncCyclo::scalar_value() const {
  if (!is_scalar()) throw std::runtime_error("truncated cyclotomic value is not scalar: " + str());
  return c_[0];
}

std::uint64_t TruncCyclo::residue() const {
  std::uint64_t s = 0;
  for (std::uint64_t v : c_) s = (s + v) % static_cast<std::uint64_t>(p_);
  return s;
}

TruncCyclo TruncCyclo::lifted_to(int a2) const {
  if (a2 == a_) return *this;
  if (a2 < a_) throw std::invalid_argument("lifted_to: conductor must grow");
  TruncCyclo r(p_, a2, W_);
  long s = static_cast<long>(pow_u64(p_, a2 - a_));  // zeta_{p^a} = zeta_{p^a2}^s
  std::vector<std::uint64_t> raw(static_cast<size_t>(s) * c_.size() + 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) raw[i * s] = c_[i];
  r.reduce(std::move(raw));
  return r;
}

TruncCyclo TruncCyclo::reduced_to(int W2) const {
  if (W2 == W_) return *this;
  if (W2 > W_) throw std::invalid_argument("reduced_to: precision must drop");
  TruncCyclo r(p_, a_, W2);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] % r.m_;
  return r;
}

TruncCyclo TruncCyclo::galois(long j) const {
  long n = conductor();
  j %= n;
  if (j < 0) j += n;
  if (gcd_l(j, n) != 1) throw std::invalid_argument("galois: exponent not coprime to conductor");
  TruncCyclo r(p_, a_, W_);
  std::vector<std::uint64_t> raw(static_cast<size_t>(n) + c_.size(), 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    size_t pos = static_cast<size_t>(i * static_cast<size_t>(j) % static_cast<size_t>(n));
    raw[pos] = (raw[pos] + c_[i]) % m_;
  }
  r.reduce(std::move(raw));
  return r;
}

bool TruncCyclo::divisible_by(int j) const {
  if (j > W_) throw std::invalid_argument("divisible_by: beyond precision");
  std::uint64_t pj = pow_u64(static_cast<std::uint64_t>(p_), static_cast<unsigned>(j));
  for (std::uint64_t v : c_)
    if (v % pj) return false;
  return true;
}

TruncCyclo TruncCyclo::divided_by_p(int j) const {
  if (!divisible_by(j)) throw std::domain_error("divided_by_p: not divisible: " + str());
  if (W_ - j < 1) throw std::invalid_argument("divided_by_p: no precision left");
  std::uint64_t pj = pow_u64(static_cast<std::uint64_t>(p_), static_cast<unsigned>(j));
  TruncCyclo r(p_, a_, W_ - j);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] / pj % r.m_;
  return r;
}

bool TruncCyclo::congruent(const TruncCyclo& other, int j) const {
  check_compatible(*this, other);
  if (j > W_) throw std::invalid_argument("congruent: beyond precision");
  std::uint64_t pj = pow_u64(static_cast<std::uint64_t>(p_), static_cast<unsigned>(j));
  for (size_t i = 0; i < c_.size(); ++i)
    if ((c_[i] + m_ - other.c_[i]) % pj) return false;
  return true;
}

void TruncCyclo::check_compatible(const TruncCyclo& x, const TruncCyclo& y) {
  if (x.p_ != y.p_ || x.a_ != y.a_ || x.W_ != y.W_)
    throw std::invalid_argument("TruncCyclo: incompatible rings " + x.str() + " vs " + y.str());
}

TruncCyclo operator+(const TruncCyclo& x, const TruncCyclo& y) {
  TruncCyclo::check_compatible(x, y);
  TruncCyclo r = x;
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + y.c_[i]) % r.m_;
  return r;
}

TruncCyclo operator-(const TruncCyclo& x, const TruncCyclo& y) {
  TruncCyclo::check_compatible(x, y);
  TruncCyclo r = x;
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + r.m_ - y.c_[i]) % r.m_;
  return r;
}

TruncCyclo TruncCyclo::operator-() const {
  TruncCyclo r = *this;
  for (std::uint64_t& v : r.c_) v = (m_ - v) % m_;
  return r;
}

TruncCyclo operator*(const TruncCyclo& x, const TruncCyclo& y) {
  TruncCyclo::check_compatible(x, y);
  std::vector<std::uint64_t> raw(x.c_.size() + y.c_.size(), 0);
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (!x.c_[i]) continue;
    for (size_t j = 0; j < y.c_.size(); ++j)
      if (y.c_[j])
        raw[i + j] = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x.c_[i]) * y.c_[j] + raw[i + j]) % x.m_);
  }
  TruncCyclo r(x.p_, x.a_, x.W_);
  r.reduce(std::move(raw));
  return r;
}

bool operator==(const TruncCyclo& x, const TruncCyclo& y) {
  TruncCyclo::check_compatible(x, y);
  return x.c_ == y.c_;
}

TruncCyclo TruncCyclo::inverse() const {
  if (!is_unit()) throw std::domain_error("inverse of non-unit: " + str());
  // Start from the inverse of the residue-field image; u*x - 1 then lies in
  // the nilpotent maximal ideal and Newton doubling converges.
  TruncCyclo x = scalar(p_, a_, W_, Int(inv_mod(residue(), p_, m_)));
  TruncCyclo two = scalar(p_, a_, W_, Int(2));
  for (int it = 0; it < 2 * W_ * degree() + 8; ++it) {
    TruncCyclo x2 = x * (two - *this * x);
    if (x2 == x) {
      if (!(*this * x).is_scalar() || (*this * x).scalar_value() != 1)
        throw std::logic_error("inverse verification failed");
      return x;
    }
    x = x2;
  }
  throw std::logic_error("inverse did not converge");
}

TruncCyclo TruncCyclo::pow(long e) const {
  TruncCyclo base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  TruncCyclo r = scalar(p_, a_, W_, Int(1));
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

TruncCyclo TruncCyclo::log_given_slack(int V) const {
  TruncCyclo one = scalar(p_, a_, W_, Int(1));
  TruncCyclo x = *this - one;  // must lie in the maximal ideal
  if (x.residue() != 0) throw std::domain_error("log of a non-one-unit: " + str());
  TruncCyclo acc(p_, a_, W_);
  TruncCyclo term = one;
  const std::uint64_t pv = pow_u64(static_cast<std::uint64_t>(p_), static_cast<unsigned>(V));
  const long cap = W_ * degree() + W_ + 8;
  for (long i = 1; i <= cap; ++i) {
    term *= x;
    if (term.is_zero()) return acc.divided_by_p(V);
    long v = val_u64(static_cast<std::uint64_t>(i), p_);
    if (v > V) throw std::logic_error("log slack too small for series length");
    std::uint64_t coef = mulmod(
        pv / pow_u64(static_cast<std::uint64_t>(p_), static_cast<unsigned>(v)),
        inv_mod(static_cast<std::uint64_t>(i) /
                    pow_u64(static_cast<std::uint64_t>(p_), static_cast<unsigned>(v)),
                p_, m_),
        m_);
    TruncCyclo t = scalar(p_, a_, W_, Int(coef)) * term;
    if (i % 2 == 0) t = -t;
    acc += t;
  }
  throw std::logic_error("log series did not terminate");
}

TruncCyclo TruncCyclo::exp_given_slack(int V) const {
  if (residue() != 0) throw std::domain_error("exp outside the maximal ideal: " + str());
  TruncCyclo one = scalar(p_, a_, W_, Int(1));
  TruncCyclo acc = one;
  TruncCyclo term = one;
  Int fact = 1;
  const long cap = W_ * degree() + W_ + 8;
  for (long i = 1; i <= cap; ++i) {
    term *= *this;
    if (term.is_zero()) break;
    fact *= i;
    long v = 0;
    Int f = fact;
    while (f % p_ == 0) { f /= p_; ++v; }
    if (v > V) throw std::logic_error("exp slack too small for series length");
    std::uint64_t pv = 1 % m_;
    for (long t = 0; t < V - v; ++t) pv = mulmod(pv, static_cast<std::uint64_t>(p_), m_);
    std::uint64_t finv = inv_mod(static_cast<std::uint64_t>(f % Int(m_)), p_, m_);
    std::uint64_t coef = mulmod(pv, finv, m_);
    acc += scalar(p_, a_, W_, Int(coef)) * term;
  }
  // acc = 1 + (exp(x) - 1) * p^V; undo the scaling on the tail.
  return ((acc - one).divided_by_p(V) + one.reduced_to(W_ - V));
}

std::string TruncCyclo::str() const {
  std::ostringstream os;
  os << "Z/" << p_ << "^" << W_ << "(z" << conductor() << ")[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i];
  }
  os << "]";
  return os.str();
}

}  // namespace pgk
