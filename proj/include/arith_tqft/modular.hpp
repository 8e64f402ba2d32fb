#ifndef ARITH_TQFT_MODULAR_HPP
#define ARITH_TQFT_MODULAR_HPP

// Residues mod a runtime prime, exact integers/rationals, and CRT recovery.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "arith_tqft/units.hpp"

namespace arith_tqft {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& z) { return z.str(); }

inline std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Residue modulo a prime chosen at run time. The modulus travels with the
/// value so matrices over different primes never mix silently.
class ModInt {
 public:
  ModInt() = default;
  ModInt(i64 v, u64 mod) : mod_(mod) {
    i64 r = v % static_cast<i64>(mod);
    if (r < 0) r += static_cast<i64>(mod);
    v_ = static_cast<u64>(r);
  }
  static ModInt from_u64(u64 v, u64 mod) {
    ModInt x;
    x.mod_ = mod;
    x.v_ = v < mod ? v : v % mod;
    return x;
  }
  static ModInt from_rational(const Rational& q, u64 mod) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Integer n = numerator(q) % mod;
    if (n < 0) n += mod;
    Integer d = denominator(q) % mod;
    return from_u64(static_cast<u64>(n), mod) / from_u64(static_cast<u64>(d), mod);
  }

  u64 value() const noexcept { return v_; }
  u64 modulus() const noexcept { return mod_; }

  ModInt inv() const {
    if (v_ == 0) throw Error("division-by-zero", "inverse of 0 mod " + std::to_string(mod_));
    return from_u64(invmod(v_, mod_), mod_);
  }

  /// Least absolute residue in (-mod/2, mod/2].
  i64 centered() const {
    return v_ > mod_ / 2 ? static_cast<i64>(v_) - static_cast<i64>(mod_) : static_cast<i64>(v_);
  }

  ModInt& operator+=(const ModInt& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= mod_) v_ -= mod_;
    return *this;
  }
  ModInt& operator-=(const ModInt& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + mod_ - o.v_;
    return *this;
  }
  ModInt& operator*=(const ModInt& o) {
    check(o);
    v_ = mulmod(v_, o.v_, mod_);
    return *this;
  }
  ModInt& operator/=(const ModInt& o) { return *this *= o.inv(); }

  friend ModInt operator+(ModInt a, const ModInt& b) { return a += b; }
  friend ModInt operator-(ModInt a, const ModInt& b) { return a -= b; }
  friend ModInt operator*(ModInt a, const ModInt& b) { return a *= b; }
  friend ModInt operator/(ModInt a, const ModInt& b) { return a /= b; }
  ModInt operator-() const { return ModInt(0, mod_) - *this; }
  friend bool operator==(const ModInt& a, const ModInt& b) { return a.v_ == b.v_ && a.mod_ == b.mod_; }

  ModInt pow(u64 e) const { return from_u64(powmod(v_, e, mod_), mod_); }

  std::string str() const { return std::to_string(v_); }

 private:
  void check(const ModInt& o) const {
    if (o.mod_ != mod_)
      throw Error("modulus-mismatch", "mixing residues mod " + std::to_string(mod_) + " and " + std::to_string(o.mod_));
  }
  u64 v_ = 0;
  u64 mod_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const ModInt& x) { return os << x.str(); }

/// Smallest prime l > min_exclusive with l = 1 mod step.
inline u64 next_prime_congruent_one(u64 step, u64 min_exclusive) {
  u64 l = min_exclusive / step * step + 1;
  if (l <= min_exclusive) l += step;
  while (!is_prime(l)) l += step;
  return l;
}

/// An element of exact order e in (Z/l)^*, for a prime l = 1 mod e.
inline u64 root_of_unity(u64 l, u64 e) {
  std::vector<u64> factors;
  u64 n = e;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) factors.push_back(n);
  for (u64 g = 2; g < l; ++g) {
    const u64 w = powmod(g, (l - 1) / e, l);
    if (std::all_of(factors.begin(), factors.end(), [&](u64 q) { return powmod(w, e / q, l) != 1; })) return w;
  }
  return 1;
}

/// Smallest primitive root of the prime l.
inline u64 primitive_root(u64 l) {
  std::vector<u64> factors;
  u64 n = l - 1;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);
  for (u64 g = 2; g < l; ++g) {
    bool ok = true;
    for (u64 q : factors)
      if (powmod(g, (l - 1) / q, l) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

/// Chinese remaindering of residues (r_i mod m_i, pairwise coprime) followed by
/// the centered lift. Throws "crt-insufficient" unless prod m_i > 2*bound.
inline Integer recover_integer(const std::vector<ModInt>& residues, const Integer& bound) {
  Integer m = 1, x = 0;
  for (const ModInt& r : residues) {
    Integer mi = r.modulus();
    // x' = x + m * ((r - x) * m^{-1} mod mi)
    Integer xm = x % mi;
    if (xm < 0) xm += mi;
    u64 diff = (r.value() + r.modulus() - static_cast<u64>(xm)) % r.modulus();
    u64 minv = invmod(static_cast<u64>(m % mi), r.modulus());
    u64 t = mulmod(diff, minv, r.modulus());
    x += m * t;
    m *= mi;
  }
  if (m <= 2 * bound)
    throw Error("crt-insufficient", "CRT modulus " + m.str() + " does not exceed 2*bound " + Integer(2 * bound).str());
  if (2 * x > m) x -= m;
  return x;
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_MODULAR_HPP
