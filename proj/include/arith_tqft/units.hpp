#ifndef ARITH_TQFT_UNITS_HPP
#define ARITH_TQFT_UNITS_HPP

// Principal units 1 + pZ_p held modulo p^k, and the level grading.

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <regex>
#include <string>

#include "arith_tqft/error.hpp"

namespace arith_tqft {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr unsigned kDefaultPrecision = 8;

/// Orientability level: a positive integer or INF. INF compares above every
/// finite level; in exponent positions p^INF reads as 0.
class Level {
 public:
  constexpr Level() = default;
  constexpr explicit Level(unsigned r) : value_(r) {
    if (r == 0) throw Error("invalid-level", "level must be positive");
  }
  static constexpr Level inf() {
    Level l;
    l.value_ = kInf;
    return l;
  }

  constexpr bool is_inf() const noexcept { return value_ == kInf; }
  /// Finite value; throws for INF.
  unsigned value() const {
    if (is_inf()) throw Error("infinite-level", "level is INF");
    return value_;
  }

  friend constexpr auto operator<=>(const Level&, const Level&) = default;

  std::string str() const { return is_inf() ? "inf" : std::to_string(value_); }

  /// Parses "inf" or a positive integer.
  static Level parse(const std::string& s) {
    if (s == "inf" || s == "INF") return inf();
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      throw Error("invalid-level", "cannot parse level '" + s + "'");
    }
    if (pos != s.size() || v == 0 || v >= kInf)
      throw Error("invalid-level", "cannot parse level '" + s + "'");
    return Level(static_cast<unsigned>(v));
  }

 private:
  static constexpr unsigned kInf = std::numeric_limits<unsigned>::max();
  unsigned value_ = kInf;
};

inline std::ostream& operator<<(std::ostream& os, const Level& l) { return os << l.str(); }

inline constexpr Level min(Level a, Level b) { return a < b ? a : b; }

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if ((a | b) >> 32 == 0) return a * b % m;
  return static_cast<u64>((u128)a * b % m);
}

/// Barrett reduction: residues mod l without a hardware division when
/// l < 2^32, falling back to % otherwise.
class FastMod {
 public:
  explicit FastMod(u64 l) : l_(l), m_(UINT64_MAX / l) {}
  u64 modulus() const noexcept { return l_; }
  u64 reduce(u64 x) const noexcept {
    if (l_ >> 32) return x % l_;
    u64 r = x - static_cast<u64>(((u128)x * m_) >> 64) * l_;
    while (r >= l_) r -= l_;
    return r;
  }
  u64 mul(u64 a, u64 b) const noexcept { return l_ >> 32 ? static_cast<u64>((u128)a * b % l_) : reduce(a * b); }
  u64 add(u64 a, u64 b) const noexcept {
    const u64 s = a + b;
    return s >= l_ ? s - l_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + l_ - b; }
  // How many products of reduced residues fit in a raw u64 sum; 0 when none do.
  u64 raw_batch() const noexcept { return l_ >> 32 ? 0 : UINT64_MAX / ((l_ - 1) * (l_ - 1) + 1); }

 private:
  u64 l_, m_;
};

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
  while (nr != 0) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw Error("not-invertible", std::to_string(a) + " has no inverse mod " + std::to_string(m));
  if (t < 0) t += static_cast<i64>(m);
  return static_cast<u64>(t);
}

inline bool is_prime(u64 n) {
  if (n < 4) return n >= 2;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (u64 d = 5; d * d <= n; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

/// p^e, throwing if the result would not leave headroom for 128-bit products.
inline u64 checked_pow(u64 p, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::numeric_limits<u64>::max() >> 2) / p)
      throw Error("precision-overflow", "p^k exceeds 62 bits");
    r *= p;
  }
  return r;
}

/// Element of 1 + pZ_p reduced modulo p^precision.
class PadicUnit {
 public:
  PadicUnit(u64 p, unsigned precision, u64 residue) : p_(p), precision_(precision) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw Error("invalid-unit", "p must be an odd prime");
    if (precision == 0) throw Error("invalid-unit", "precision must be positive");
    modulus_ = checked_pow(p, precision);
    residue_ = residue % modulus_;
    if (residue_ % p != 1 % p)
      throw Error("invalid-unit", std::to_string(residue) + " is not congruent to 1 mod " + std::to_string(p));
  }

  static PadicUnit one(u64 p, unsigned precision) { return PadicUnit(p, precision, 1); }

  /// 1 + p^r, the standard representative of level r (needs r < precision).
  static PadicUnit of_level(u64 p, unsigned precision, Level r) {
    if (r.is_inf()) return one(p, precision);
    if (r.value() >= precision)
      throw Error("precision-exhausted", "level " + r.str() + " needs precision > " + r.str());
    return PadicUnit(p, precision, 1 + checked_pow(p, r.value()));
  }

  u64 p() const noexcept { return p_; }
  unsigned precision() const noexcept { return precision_; }
  u64 residue() const noexcept { return residue_; }
  u64 modulus() const noexcept { return modulus_; }
  bool is_one() const noexcept { return residue_ == 1; }

  /// Largest r < precision with residue = 1 mod p^r, or INF for residue 1.
  Level level() const {
    if (residue_ == 1) return Level::inf();
    u64 d = residue_ - 1 + (residue_ == 0 ? modulus_ : 0);
    unsigned r = 0;
    while (d % p_ == 0) {
      d /= p_;
      ++r;
    }
    return Level(r);
  }

  /// Like level() but refuses to answer INF: the true level may lie beyond
  /// the precision held.
  unsigned certified_level() const {
    Level l = level();
    if (l.is_inf())
      throw Error("precision-exhausted",
                  "unit is 1 mod " + std::to_string(p_) + "^" + std::to_string(precision_) +
                      "; its level is not certified at this precision");
    return l.value();
  }

  PadicUnit inverse() const { return PadicUnit(p_, precision_, invmod(residue_, modulus_)); }

  /// Same unit viewed at a smaller precision.
  PadicUnit reduce(unsigned precision) const {
    if (precision > precision_) throw Error("incompatible-units", "cannot raise precision by reduction");
    return PadicUnit(p_, precision, residue_);
  }

  /// Residue mod p^e for e <= precision.
  u64 residue_mod_pow(unsigned e) const {
    if (e > precision_) throw Error("precision-exhausted", "requested digits beyond precision");
    return residue_ % checked_pow(p_, e);
  }

  friend bool operator==(const PadicUnit& a, const PadicUnit& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_ && a.residue_ == b.residue_;
  }

  std::string str() const {
    return std::to_string(residue_) + " mod " + std::to_string(p_) + "^" + std::to_string(precision_);
  }

  /// Parses "R mod p^k".
  static PadicUnit parse(const std::string& text) {
    static const std::regex re(R"(^\s*(\d+)\s*mod\s*(\d+)\s*\^\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw Error("parse-error", "expected 'R mod p^k', got '" + text + "'");
    return PadicUnit(std::stoull(m[2]), static_cast<unsigned>(std::stoul(m[3])), std::stoull(m[1]));
  }

 private:
  u64 p_;
  unsigned precision_;
  u64 modulus_ = 1;
  u64 residue_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const PadicUnit& u) { return os << u.str(); }

inline void require_compatible(const PadicUnit& a, const PadicUnit& b) {
  if (a.p() != b.p() || a.precision() != b.precision())
    throw Error("incompatible-units", "units " + a.str() + " and " + b.str() + " differ in p or precision");
}

inline PadicUnit unit_mul(const PadicUnit& a, const PadicUnit& b) {
  require_compatible(a, b);
  return PadicUnit(a.p(), a.precision(), mulmod(a.residue(), b.residue(), a.modulus()));
}

inline PadicUnit unit_inv(const PadicUnit& a) { return a.inverse(); }

inline PadicUnit operator*(const PadicUnit& a, const PadicUnit& b) { return unit_mul(a, b); }

inline Level level(const PadicUnit& a) { return a.level(); }

inline Level ratio_level(const PadicUnit& a, const PadicUnit& b) { return unit_mul(a, unit_inv(b)).level(); }

/// p^r - 1 reduced mod m, with the INF convention p^INF - 1 = -1.
inline u64 p_pow_minus_one(u64 p, Level r, u64 m) {
  if (m == 1) return 0;
  if (r.is_inf()) return m - 1;
  return (powmod(p, r.value(), m) + m - 1) % m;
}

/// 1 - p^r reduced mod m (1 for r = INF).
inline u64 one_minus_p_pow(u64 p, Level r, u64 m) {
  if (m == 1) return 0;
  if (r.is_inf()) return 1 % m;
  return (1 + m - powmod(p, r.value(), m)) % m;
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_UNITS_HPP
