#ifndef ARITH_TQFT_UNIVERSAL_HPP
#define ARITH_TQFT_UNIVERSAL_HPP

// The rank-2 universal example: V = R + Rx over R = Z[h,t] U_p / I, where
// the level symbols [r] satisfy [r][s] = h([r] + [s] - [min(r,s)]) and
// 2[r] = 0. The symbol of the trivial unit, [INF], is 0.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arith_tqft/matrix.hpp"
#include "arith_tqft/units.hpp"

namespace arith_tqft {

/// Sparse polynomial in h and t with integer coefficients.
class BivarPoly {
 public:
  using Exp = std::pair<unsigned, unsigned>;  // (deg_h, deg_t)

  BivarPoly() = default;
  BivarPoly(i64 c) {  // NOLINT(google-explicit-constructor)
    if (c) terms_[{0, 0}] = c;
  }
  static BivarPoly monomial(i64 c, unsigned dh, unsigned dt) {
    BivarPoly p;
    if (c) p.terms_[{dh, dt}] = c;
    return p;
  }
  static BivarPoly h() { return monomial(1, 1, 0); }
  static BivarPoly t() { return monomial(1, 0, 1); }

  const std::map<Exp, i64>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  BivarPoly& operator+=(const BivarPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  BivarPoly& operator-=(const BivarPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  BivarPoly operator-() const { return BivarPoly() - *this; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
  }
  friend bool operator==(const BivarPoly&, const BivarPoly&) = default;

  /// Coefficients reduced to {0, 1}.
  BivarPoly mod2() const {
    BivarPoly r;
    for (const auto& [e, c] : terms_)
      if (c % 2) r.terms_[e] = 1;
    return r;
  }

  /// Terms by total degree, then h-degree, both descending: "2h^2+8t".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exp, i64>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      unsigned da = a.first.first + a.first.second, db = b.first.first + b.first.second;
      if (da != db) return da > db;
      return a.first.first > b.first.first;
    });
    std::string out;
    for (const auto& [e, c] : v) {
      std::string mono;
      if (e.first) mono += "h" + (e.first > 1 ? "^" + std::to_string(e.first) : "");
      if (e.second) mono += "t" + (e.second > 1 ? "^" + std::to_string(e.second) : "");
      i64 a = c < 0 ? -c : c;
      std::string term = (a != 1 || mono.empty()) ? std::to_string(a) + mono : mono;
      if (out.empty())
        out = (c < 0 ? "-" : "") + term;
      else
        out += (c < 0 ? "-" : "+") + term;
    }
    return out;
  }

  std::size_t term_count() const noexcept { return terms_.size(); }

 private:
  void add(const Exp& e, i64 c) {
    if (!c) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else if ((it->second += c) == 0) {
      terms_.erase(it);
    }
  }
  std::map<Exp, i64> terms_;
};

/// Element of R: a free polynomial plus level symbols [r] with mod-2
/// polynomial coefficients. Only finite levels are stored.
class UniversalScalar {
 public:
  UniversalScalar() = default;
  UniversalScalar(i64 c) : free_(c) {}  // NOLINT(google-explicit-constructor)
  UniversalScalar(BivarPoly p) : free_(std::move(p)) {}  // NOLINT(google-explicit-constructor)

  /// The symbol [r] of a unit of level r; zero for INF.
  static UniversalScalar symbol(Level r) {
    UniversalScalar s;
    if (!r.is_inf()) s.levels_[r] = BivarPoly(1);
    return s;
  }

  const BivarPoly& free_part() const noexcept { return free_; }
  const std::map<Level, BivarPoly>& level_part() const noexcept { return levels_; }
  bool is_zero() const noexcept { return free_.is_zero() && levels_.empty(); }

  UniversalScalar& operator+=(const UniversalScalar& o) {
    free_ += o.free_;
    for (const auto& [r, p] : o.levels_) add_level(r, p);
    return *this;
  }
  UniversalScalar& operator-=(const UniversalScalar& o) {
    free_ -= o.free_;
    for (const auto& [r, p] : o.levels_) add_level(r, p);  // -1 = 1 mod 2
    return *this;
  }
  friend UniversalScalar operator+(UniversalScalar a, const UniversalScalar& b) { return a += b; }
  friend UniversalScalar operator-(UniversalScalar a, const UniversalScalar& b) { return a -= b; }
  UniversalScalar operator-() const { return UniversalScalar() - *this; }

  friend UniversalScalar operator*(const UniversalScalar& a, const UniversalScalar& b) {
    UniversalScalar c(a.free_ * b.free_);
    for (const auto& [r, p] : b.levels_) c.add_level(r, a.free_ * p);
    for (const auto& [r, p] : a.levels_) c.add_level(r, b.free_ * p);
    const BivarPoly h = BivarPoly::h();
    for (const auto& [r, p] : a.levels_)
      for (const auto& [s, q] : b.levels_) {
        // [r][s] = h([r] + [s] + [min(r,s)]) with coefficients mod 2
        const BivarPoly w = h * p * q;
        c.add_level(r, w);
        c.add_level(s, w);
        c.add_level(min(r, s), w);
      }
    return c;
  }
  friend bool operator==(const UniversalScalar&, const UniversalScalar&) = default;

  std::string str() const {
    std::string out = free_.is_zero() ? "" : free_.str();
    for (const auto& [r, p] : levels_) {
      std::string coef;
      if (p == BivarPoly(1))
        coef = "";
      else if (p.term_count() == 1)
        coef = p.str();
      else
        coef = "(" + p.str() + ")";
      std::string term = coef + "[" + r.str() + "]";
      out += out.empty() ? term : "+" + term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  void add_level(Level r, const BivarPoly& p) {
    if (r.is_inf()) return;
    BivarPoly s = (levels_[r] + p).mod2();
    if (s.is_zero())
      levels_.erase(r);
    else
      levels_[r] = std::move(s);
  }
  BivarPoly free_;
  std::map<Level, BivarPoly> levels_;
};

inline std::ostream& operator<<(std::ostream& os, const UniversalScalar& s) { return os << s.str(); }

/// A + Bx in V.
struct UniversalElem {
  UniversalScalar a, b;
  friend bool operator==(const UniversalElem&, const UniversalElem&) = default;
  std::string str() const { return "(" + a.str() + ") + (" + b.str() + ")x"; }
};

/// The universal algebra in the basis (1, x). The counit can be swapped for
/// a different linear form to exercise the axiom checker.
class UniversalAlgebra {
 public:
  using scalar_type = UniversalScalar;
  using M = Matrix<UniversalScalar>;

  explicit UniversalAlgebra(u64 p = 3, unsigned precision = kDefaultPrecision,
                            std::optional<std::pair<UniversalScalar, UniversalScalar>> counit_override = std::nullopt)
      : p_(p), precision_(precision), counit_override_(std::move(counit_override)) {}

  std::size_t dim() const noexcept { return 2; }
  u64 prime() const noexcept { return p_; }
  unsigned precision() const noexcept { return precision_; }
  UniversalScalar zero() const { return UniversalScalar(); }
  UniversalScalar one() const { return UniversalScalar(1); }
  std::vector<std::string> basis_labels() const { return {"1", "x"}; }
  std::string name() const { return "universal"; }

  M unit() const {
    M u(2, 1, zero());
    u(0, 0) = 1;
    return u;
  }
  M counit() const {
    M e(1, 2, zero());
    if (counit_override_) {
      e(0, 0) = counit_override_->first;
      e(0, 1) = counit_override_->second;
    } else {
      e(0, 1) = 1;
    }
    return e;
  }
  M mul() const {
    M m(2, 4, zero());
    m(0, 0) = 1;                      // 1*1
    m(1, 1) = 1;                      // 1*x
    m(1, 2) = 1;                      // x*1
    m(0, 3) = BivarPoly::t();         // x*x = t + hx
    m(1, 3) = BivarPoly::h();
    return m;
  }
  M comul() const {
    M d(4, 2, zero());
    d(0, 0) = -UniversalScalar(BivarPoly::h());  // D(1) = 1(x)x + x(x)1 - h 1(x)1
    d(1, 0) = 1;
    d(2, 0) = 1;
    d(0, 1) = BivarPoly::t();                     // D(x) = x(x)x + t 1(x)1
    d(3, 1) = 1;
    return d;
  }
  M twist(const PadicUnit& u) const {
    M f = M::identity(2, zero(), one());
    f(0, 1) = UniversalScalar::symbol(u.level());
    return f;
  }

 private:
  u64 p_;
  unsigned precision_;
  std::optional<std::pair<UniversalScalar, UniversalScalar>> counit_override_;
};

inline UniversalElem universal_mul(const UniversalElem& v, const UniversalElem& w) {
  const UniversalScalar h(BivarPoly::h()), t(BivarPoly::t());
  return {v.a * w.a + v.b * w.b * t, v.a * w.b + v.b * w.a + v.b * w.b * h};
}

/// Coefficients of D(v) on 1(x)1, 1(x)x, x(x)1, x(x)x.
inline std::vector<UniversalScalar> universal_delta(const UniversalElem& v) {
  const UniversalScalar h(BivarPoly::h()), t(BivarPoly::t());
  return {-(v.a * h) + v.b * t, v.a, v.a, v.b};
}

inline UniversalScalar universal_eps(const UniversalElem& v) { return v.b; }

inline UniversalElem universal_iota(const UniversalScalar& s) { return {s, UniversalScalar()}; }

inline UniversalElem universal_phi(const PadicUnit& u, const UniversalElem& v) {
  return {v.a + v.b * UniversalScalar::symbol(u.level()), v.b};
}

/// 2x - h + [r].
inline UniversalElem universal_kappa(Level r) {
  return {-UniversalScalar(BivarPoly::h()) + UniversalScalar::symbol(r), UniversalScalar(2)};
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_UNIVERSAL_HPP
