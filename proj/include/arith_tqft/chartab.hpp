#ifndef ARITH_TQFT_CHARTAB_HPP
#define ARITH_TQFT_CHARTAB_HPP

// Irreducible characters modulo a split prime by simultaneous
// diagonalisation of the class multiplication matrices (Dixon).

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arith_tqft/modular.hpp"
#include "arith_tqft/pgroup.hpp"
#include "json.hpp"

namespace arith_tqft {

inline constexpr u64 kDixonSeed = 20240917;
inline constexpr int kDixonAttempts = 8;
// cheap to seed, and random class combinations need no more
using DixonRng = std::ranlux48_base;

/// a(i,j,k) = #{(x,y) : x in C_i, y in C_j, xy = z_k} for the fixed
/// representative z_k, so that C_i C_j = sum_k a(i,j,k) C_k.
class ClassStructure {
 public:
  explicit ClassStructure(const FiniteGroup& g) : k_(g.classes().count()), a_(k_ * k_ * k_, 0) {
    const auto& cd = g.classes();
    for (std::size_t c = 0; c < k_; ++c) {
      const Elem z = cd.reps[c];
      for (Elem x = 0; x < g.order(); ++x) {
        const Elem y = g.mul(g.inv(x), z);
        ++a_[(cd.class_of[x] * k_ + cd.class_of[y]) * k_ + c];
      }
    }
  }
  std::size_t classes() const noexcept { return k_; }
  u64 operator()(std::size_t i, std::size_t j, std::size_t k) const { return a_[(i * k_ + j) * k_ + k]; }

 private:
  std::size_t k_;
  std::vector<u64> a_;
};

struct SplitPrime {
  u64 l = 0;
  u64 omega = 0;  // primitive exponent-th root of unity mod l
  u64 exponent = 1;
};

/// The first `count` primes l = 1 mod exp(G) with l > 2|G|, in increasing order.
inline std::vector<SplitPrime> split_primes(const FiniteGroup& g, std::size_t count, u64 after = 0) {
  std::vector<SplitPrime> out;
  const u64 e = g.exponent();
  u64 floor = std::max<u64>(2 * g.order(), after);
  while (out.size() < count) {
    const u64 l = next_prime_congruent_one(e, floor);
    out.push_back({l, root_of_unity(l, e), e});
    floor = l;
  }
  return out;
}

namespace detail {

using ModMatrix = std::vector<std::vector<u64>>;

/// Characteristic polynomial (coefficients low to high, monic) via reduction
/// to upper Hessenberg form by similarity transformations mod l.
inline std::vector<u64> charpoly_mod(ModMatrix h, u64 l) {
  const std::size_t n = h.size();
  const FastMod fm(l);
  auto sub = [&](u64 a, u64 b) { return fm.sub(a, b); };
  for (std::size_t col = 0; col + 2 < n + 1 && col + 1 < n; ++col) {
    std::size_t piv = col + 1;
    while (piv < n && h[piv][col] == 0) ++piv;
    if (piv == n) continue;
    if (piv != col + 1) {
      std::swap(h[piv], h[col + 1]);
      for (auto& row : h) std::swap(row[piv], row[col + 1]);
    }
    const u64 inv = invmod(h[col + 1][col], l);
    for (std::size_t i = col + 2; i < n; ++i) {
      const u64 f = fm.mul(h[i][col], inv);
      if (!f) continue;
      for (std::size_t j = 0; j < n; ++j) h[i][j] = sub(h[i][j], fm.mul(f, h[col + 1][j]));
      for (std::size_t j = 0; j < n; ++j) h[j][col + 1] = fm.add(h[j][col + 1], fm.mul(f, h[j][i]));
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{im} (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
  // row m of p holds the m + 1 coefficients of p_m
  std::vector<u64> p((n + 1) * (n + 1), 0);
  auto row = [&](std::size_t m) { return p.data() + m * (n + 1); };
  row(0)[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    u64* cur = row(m);
    const u64* prev = row(m - 1);
    for (std::size_t d = 0; d < m; ++d) {
      cur[d + 1] = fm.add(cur[d + 1], prev[d]);
      cur[d] = sub(cur[d], fm.mul(h[m - 1][m - 1], prev[d]));
    }
    u64 prod = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      prod = fm.mul(prod, h[i + 1][i]);
      const u64 c = fm.mul(h[i][m - 1], prod);
      if (!c) continue;
      const u64* pi = row(i);
      for (std::size_t d = 0; d <= i; ++d) cur[d] = sub(cur[d], fm.mul(c, pi[d]));
    }
  }
  return std::vector<u64>(row(n), row(n) + n + 1);
}

/// Basis of the null space of a mod l.
inline std::vector<std::vector<u64>> nullspace_mod(ModMatrix a, u64 l) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const u64 inv = invmod(a[r][c], l);
    for (auto& x : a[r]) x = mulmod(x, inv, l);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !a[i][c]) continue;
      const u64 f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = (a[i][j] + l - mulmod(f, a[r][j], l)) % l;
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<u64>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = (l - a[i][f]) % l;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Eigen-decomposition of the M-invariant subspace spanned by basis: returns
/// bases of the eigenspaces of M restricted to it.
inline std::vector<std::vector<std::vector<u64>>> split_space(const std::vector<std::vector<u64>>& basis, const ModMatrix& m, u64 l) {
  const std::size_t d = basis.size(), k = m.size();
  // Solve basis * A = m * basis column by column: reduce [basis | m basis].
  ModMatrix aug(k, std::vector<u64>(2 * d, 0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      aug[i][j] = basis[j][i];
      u64 s = 0;
      for (std::size_t t = 0; t < k; ++t) s = (s + mulmod(m[i][t], basis[j][t], l)) % l;
      aug[i][d + j] = s;
    }
  std::size_t r = 0;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = r;
    while (piv < k && aug[piv][c] == 0) ++piv;
    if (piv == k) throw Error("internal", "subspace basis is not independent");
    std::swap(aug[piv], aug[r]);
    const u64 inv = invmod(aug[r][c], l);
    for (auto& x : aug[r]) x = mulmod(x, inv, l);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == r || !aug[i][c]) continue;
      const u64 f = aug[i][c];
      for (std::size_t j = 0; j < 2 * d; ++j) aug[i][j] = (aug[i][j] + l - mulmod(f, aug[r][j], l)) % l;
    }
    ++r;
  }
  ModMatrix a(d, std::vector<u64>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = aug[i][d + j];

  const auto poly = charpoly_mod(a, l);
  std::vector<std::vector<std::vector<u64>>> parts;
  std::size_t total = 0;
  for (u64 x = 0; x < l; ++x) {
    u64 v = 0;
    for (std::size_t t = poly.size(); t-- > 0;) v = (mulmod(v, x, l) + poly[t]) % l;
    if (v) continue;
    auto shifted = a;
    for (std::size_t i = 0; i < d; ++i) shifted[i][i] = (shifted[i][i] + l - x) % l;
    std::vector<std::vector<u64>> part;
    for (const auto& y : nullspace_mod(shifted, l)) {
      std::vector<u64> vec(k, 0);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < k; ++i) vec[i] = (vec[i] + mulmod(basis[j][i], y[j], l)) % l;
      part.push_back(std::move(vec));
    }
    total += part.size();
    parts.push_back(std::move(part));
  }
  if (total != d) throw Error("eigenspace-separation-failed", "class matrix is not diagonalisable mod " + std::to_string(l));
  return parts;
}

/// Roots in F_l of a polynomial (low to high), in increasing order, found by
/// stepping a forward-difference table across the field.
inline std::vector<u64> roots_mod(const std::vector<u64>& poly, u64 l, std::size_t max_roots) {
  const FastMod fm(l);
  const std::size_t deg = poly.size() - 1;
  auto eval = [&](u64 x) {
    u64 v = 0;
    for (std::size_t t = poly.size(); t-- > 0;) v = fm.add(fm.mul(v, x), poly[t]);
    return v;
  };
  std::vector<u64> out;
  if (l <= 2 * deg + 2) {
    for (u64 x = 0; x < l && out.size() < max_roots; ++x)
      if (!eval(x)) out.push_back(x);
    return out;
  }
  std::vector<u64> diff(deg + 1);
  for (std::size_t i = 0; i <= deg; ++i) diff[i] = eval(i);
  for (std::size_t j = 1; j <= deg; ++j)
    for (std::size_t i = deg; i >= j; --i) diff[i] = fm.sub(diff[i], diff[i - 1]);
  if (l < (u64{1} << 31)) {
    const std::uint32_t l32 = static_cast<std::uint32_t>(l);
    std::vector<std::uint32_t> d32(diff.begin(), diff.end());
    for (u64 x = 0; x < l && out.size() < max_roots; ++x) {
      if (!d32[0]) out.push_back(x);
      for (std::size_t j = 0; j < deg; ++j) {
        const std::uint32_t t = d32[j] + d32[j + 1];
        d32[j] = std::min(t, t - l32);
      }
    }
    return out;
  }
  for (u64 x = 0; x < l && out.size() < max_roots; ++x) {
    if (!diff[0]) out.push_back(x);
    for (std::size_t j = 0; j < deg; ++j) diff[j] = fm.add(diff[j], diff[j + 1]);
  }
  return out;
}

/// Eigenvectors of a k x k matrix with k distinct eigenvalues mod l, as the
/// projections q_lambda(A) v of a random v, q_lambda = charpoly / (x - lambda).
/// Empty when the eigenvalues repeat or v misses an eigenline.
inline std::optional<std::vector<std::vector<u64>>> krylov_eigenvectors(const ModMatrix& a, u64 l, DixonRng& rng) {
  const std::size_t k = a.size();
  const FastMod fm(l);
  const auto poly = charpoly_mod(a, l);
  const std::vector<u64> roots = roots_mod(poly, l, k);
  if (roots.size() != k) return std::nullopt;
  std::uniform_int_distribution<u64> coef(0, l - 1);
  std::vector<std::vector<u64>> krylov(k, std::vector<u64>(k, 0));
  for (auto& x : krylov[0]) x = coef(rng);
  const u64 batch = fm.raw_batch();
  for (std::size_t j = 1; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) {
      u64 s = 0;
      if (k <= batch) {
        for (std::size_t t = 0; t < k; ++t) s += a[i][t] * krylov[j - 1][t];
        s = fm.reduce(s);
      } else {
        for (std::size_t t = 0; t < k; ++t) s = fm.add(s, fm.mul(a[i][t], krylov[j - 1][t]));
      }
      krylov[j][i] = s;
    }
  std::vector<std::vector<u64>> out;
  std::vector<u64> q(k, 0);
  for (u64 lambda : roots) {
    // synthetic division of the monic charpoly by (x - lambda)
    u64 carry = 0;
    for (std::size_t t = k; t-- > 0;) {
      carry = fm.add(poly[t + 1], fm.mul(carry, lambda));
      q[t] = carry;
    }
    std::vector<u64> w(k, 0);
    if (k <= batch) {
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) w[i] += q[j] * krylov[j][i];
      for (auto& x : w) x = fm.reduce(x);
    } else {
      for (std::size_t j = 0; j < k; ++j)
        if (q[j])
          for (std::size_t i = 0; i < k; ++i) w[i] = fm.add(w[i], fm.mul(q[j], krylov[j][i]));
    }
    if (std::all_of(w.begin(), w.end(), [](u64 x) { return x == 0; })) return std::nullopt;
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

class CharacterTableMod {
 public:
  CharacterTableMod(FiniteGroup g, SplitPrime sp, u64 seed, std::vector<u64> degrees, std::vector<std::vector<ModInt>> rows)
      : group_(std::move(g)), sp_(sp), seed_(seed), degrees_(std::move(degrees)), rows_(std::move(rows)) {}

  const FiniteGroup& group() const noexcept { return group_; }
  u64 l() const noexcept { return sp_.l; }
  const SplitPrime& prime() const noexcept { return sp_; }
  u64 seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<u64>& degrees() const noexcept { return degrees_; }
  const std::vector<std::vector<ModInt>>& rows() const noexcept { return rows_; }
  /// chi_rho at class k.
  const ModInt& value(std::size_t rho, std::size_t k) const { return rows_[rho][k]; }
  ModInt mod(i64 v) const { return ModInt(v, sp_.l); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["l"] = sp_.l;
    j["omega"] = sp_.omega;
    j["seed"] = seed_;
    j["degrees"] = degrees_;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
      std::vector<u64> v;
      for (const auto& x : r) v.push_back(x.value());
      rows.push_back(v);
    }
    j["rows"] = rows;
    return j;
  }

 private:
  FiniteGroup group_;
  SplitPrime sp_;
  u64 seed_;
  std::vector<u64> degrees_;
  std::vector<std::vector<ModInt>> rows_;
};

inline CharacterTableMod character_table_mod(const FiniteGroup& g, const SplitPrime& sp, u64 seed = kDixonSeed) {
  const u64 l = sp.l;
  const u64 exp = g.exponent();
  if ((l - 1) % exp != 0 || l <= 2 * g.order() || !is_prime(l))
    throw Error("not-split", "prime " + std::to_string(l) + " is not a split prime for this group");
  const auto& cd = g.classes();
  const std::size_t k = cd.count();
  const ClassStructure a(g);
  const u64 n = g.order();

  // Common eigenlines of the class matrices: those of a seeded random
  // combination with distinct eigenvalues if one turns up within a few
  // draws, otherwise split along the last draw and then each class matrix.
  DixonRng rng(seed);
  std::uniform_int_distribution<u64> coef(1, l - 1);
  const FastMod fm(l);
  // sum_i c_i a_ijc stays below k l |G|, so entries are summed raw and reduced once
  const bool raw = (l >> 32) == 0 && k * n < (u64{1} << 31);
  auto class_matrix = [&](std::size_t i, u64 c, detail::ModMatrix& m) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c2 = 0; c2 < k; ++c2)
        if (const u64 x = a(i, j, c2)) m[j][c2] = raw ? m[j][c2] + c * x : fm.add(m[j][c2], fm.mul(c, fm.reduce(x)));
  };
  auto finish = [&](detail::ModMatrix& m) {
    if (raw)
      for (auto& row : m)
        for (auto& x : row) x = fm.reduce(x);
  };
  detail::ModMatrix comb;
  std::vector<std::vector<std::vector<u64>>> spaces;
  for (int attempt = 0; attempt < kDixonAttempts && spaces.empty(); ++attempt) {
    comb.assign(k, std::vector<u64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) class_matrix(i, coef(rng), comb);
    finish(comb);
    if (auto lines = detail::krylov_eigenvectors(comb, l, rng))
      for (auto& v : *lines) spaces.push_back({std::move(v)});
  }
  if (spaces.empty()) {
    spaces.resize(1);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<u64> e(k, 0);
      e[i] = 1;
      spaces[0].push_back(std::move(e));
    }
    for (std::size_t i = 0; i <= k; ++i) {
      if (std::all_of(spaces.begin(), spaces.end(), [](const auto& v) { return v.size() == 1; })) break;
      detail::ModMatrix op = comb;
      if (i > 0) {
        op.assign(k, std::vector<u64>(k, 0));
        class_matrix(i - 1, 1, op);
        finish(op);
      }
      std::vector<std::vector<std::vector<u64>>> next;
      for (auto& v : spaces) {
        if (v.size() == 1) {
          next.push_back(std::move(v));
          continue;
        }
        for (auto& part : detail::split_space(v, op, l)) next.push_back(std::move(part));
      }
      spaces = std::move(next);
    }
  }
  if (spaces.size() != k) throw Error("eigenspace-separation-failed", "could not separate characters mod " + std::to_string(l));

  {
    std::vector<std::pair<u64, std::vector<ModInt>>> chars;
    bool ok = true;
    std::vector<u64> inv_size(k);
    for (std::size_t c = 0; c < k; ++c) inv_size[c] = invmod(cd.sizes[c] % l, l);
    std::vector<u64> w(k);
    for (const auto& space : spaces) {
      const auto& vec = space.front();
      if (vec[0] == 0) {
        ok = false;
        break;
      }
      // w_k = omega(C_k) = |C_k| chi(g_k) / chi(1), normalised by w_identity = 1.
      const u64 inv0 = invmod(vec[0], l);
      for (std::size_t c = 0; c < k; ++c) w[c] = fm.mul(vec[c], inv0);
      u64 s = 0;
      for (std::size_t c = 0; c < k; ++c) s = fm.add(s, fm.mul(fm.mul(w[c], w[cd.inverse_class[c]]), inv_size[c]));
      if (s == 0) {
        ok = false;
        break;
      }
      const u64 d2 = fm.mul(fm.reduce(n), invmod(s, l));
      u64 d = 0;
      for (u64 cand = 1; cand * cand <= n; ++cand)
        if (fm.reduce(cand * cand) == d2) d = cand;
      if (!d) {
        ok = false;
        break;
      }
      std::vector<ModInt> row;
      row.reserve(k);
      const u64 dl = fm.reduce(d);
      for (std::size_t c = 0; c < k; ++c) row.push_back(ModInt::from_u64(fm.mul(fm.mul(w[c], dl), inv_size[c]), l));
      chars.push_back({d, std::move(row)});
    }
    if (!ok) throw Error("eigenspace-separation-failed", "degenerate eigenvector mod " + std::to_string(l));
    u64 sum_sq = 0;
    for (const auto& [d, r] : chars) sum_sq += d * d;
    if (sum_sq != n) throw Error("eigenspace-separation-failed", "degrees do not square-sum to |G| mod " + std::to_string(l));

    std::sort(chars.begin(), chars.end(), [&](const auto& x, const auto& y) {
      auto trivial = [](const auto& c) {
        return std::all_of(c.second.begin(), c.second.end(), [](const ModInt& v) { return v.value() == 1; });
      };
      if (trivial(x) != trivial(y)) return trivial(x);
      if (x.first != y.first) return x.first < y.first;
      for (std::size_t c = 0; c < k; ++c)
        if (x.second[c].value() != y.second[c].value()) return x.second[c].value() < y.second[c].value();
      return false;
    });
    std::vector<u64> degrees;
    std::vector<std::vector<ModInt>> rows;
    for (auto& [d, r] : chars) {
      degrees.push_back(d);
      rows.push_back(std::move(r));
    }
    return CharacterTableMod(g, sp, seed, std::move(degrees), std::move(rows));
  }
}

inline CharacterTableMod character_table_mod(const FiniteGroup& g) { return character_table_mod(g, split_primes(g, 1).front()); }

/// Multiplicity of omega^j as an eigenvalue of rho(g_c), for each character
/// rho, class c and j mod exp(G). These integers lie in [0, d_rho] and pin
/// down the table modulo every split prime.
struct EigenMultiplicities {
  std::vector<u64> degrees;
  u64 exponent = 1;
  u64 seed = kDixonSeed;
  std::size_t classes = 0;
  std::vector<u64> m;  // (rho * classes + c) * exponent + j
  u64 at(std::size_t rho, std::size_t c, u64 j) const { return m[(rho * classes + c) * exponent + j]; }
};

inline EigenMultiplicities eigen_multiplicities(const CharacterTableMod& t) {
  const FiniteGroup& g = t.group();
  const auto& cd = g.classes();
  const u64 e = t.prime().exponent, l = t.l();
  const FastMod fm(l);
  const u64 inv_e = invmod(e % l, l);
  const std::size_t k = cd.count();
  EigenMultiplicities out{t.degrees(), e, t.seed(), k, std::vector<u64>(t.size() * k * e, 0)};
  std::vector<std::size_t> power_class(k * e);
  for (std::size_t c = 0; c < k; ++c) {
    Elem x = g.identity();
    for (u64 s = 0; s < e; ++s, x = g.mul(x, cd.reps[c])) power_class[c * e + s] = cd.class_of[x];
  }
  std::vector<u64> wpow(e);
  for (u64 s = 0; s < e; ++s) wpow[s] = powmod(t.prime().omega, s, l);
  std::vector<u64> vals(e);
  const u64 batch = fm.raw_batch();
  for (std::size_t rho = 0; rho < t.size(); ++rho) {
    for (std::size_t c = 0; c < k; ++c) {
      for (u64 s = 0; s < e; ++s) vals[s] = t.value(rho, power_class[c * e + s]).value();
      for (u64 j = 0; j < e; ++j) {
        // (1/e) sum_s chi(g^s) omega^(-js)
        const u64 step = (e - j) % e;
        u64 sum = 0;
        if (e <= batch) {
          for (u64 s = 0, idx = 0; s < e; ++s, idx = idx + step >= e ? idx + step - e : idx + step) sum += vals[s] * wpow[idx];
          sum = fm.reduce(sum);
        } else {
          for (u64 s = 0, idx = 0; s < e; ++s, idx = idx + step >= e ? idx + step - e : idx + step)
            sum = fm.add(sum, fm.mul(vals[s], wpow[idx]));
        }
        const u64 v = fm.mul(sum, inv_e);
        if (v > t.degrees()[rho])
          throw Error("eigenspace-separation-failed", "eigenvalue multiplicity out of range mod " + std::to_string(l));
        out.m[(rho * k + c) * e + j] = v;
      }
    }
  }
  return out;
}

/// The table modulo another split prime, chi(g_c) = sum_j m_j omega^j.
inline CharacterTableMod reduce_table(const EigenMultiplicities& em, const FiniteGroup& g, const SplitPrime& sp) {
  if (sp.exponent != em.exponent) throw Error("not-split", "split prime built for a different exponent");
  const u64 l = sp.l;
  const FastMod fm(l);
  std::vector<u64> wpow(em.exponent);
  for (u64 j = 0; j < em.exponent; ++j) wpow[j] = powmod(sp.omega, j, l);
  std::vector<std::vector<ModInt>> rows;
  rows.reserve(em.degrees.size());
  for (std::size_t rho = 0; rho < em.degrees.size(); ++rho) {
    auto& row = rows.emplace_back();
    row.reserve(em.classes);
    for (std::size_t c = 0; c < em.classes; ++c) {
      u64 v = 0;
      for (u64 j = 0; j < em.exponent; ++j)
        if (const u64 mj = em.at(rho, c, j)) v = fm.add(v, fm.mul(mj, wpow[j]));
      row.push_back(ModInt::from_u64(v, l));
    }
  }
  return CharacterTableMod(g, sp, em.seed, em.degrees, std::move(rows));
}

/// Exponent p^r - 1 as an integer reduced mod exp(G); -1 for r = INF.
inline i64 p_pow_minus_one_exponent(u64 p, Level r, u64 exponent) {
  if (r.is_inf()) return -1;
  return static_cast<i64>(p_pow_minus_one(p, r, exponent));
}

/// Per character: sum over g of chi(g^(p^r - 1)) chi(g), mod l.
inline std::vector<ModInt> char_sum(const CharacterTableMod& t, u64 p, Level r) {
  const FiniteGroup& g = t.group();
  const auto& cd = g.classes();
  const i64 e = p_pow_minus_one_exponent(p, r, g.exponent());
  const FastMod fm(t.l());
  std::vector<std::size_t> pc(cd.count());
  for (std::size_t c = 0; c < cd.count(); ++c) pc[c] = cd.class_of[g.power(cd.reps[c], e)];
  std::vector<ModInt> out;
  for (std::size_t rho = 0; rho < t.size(); ++rho) {
    u64 s = 0;
    for (std::size_t c = 0; c < cd.count(); ++c)
      s = fm.add(s, fm.mul(fm.reduce(cd.sizes[c]), fm.mul(t.value(rho, pc[c]).value(), t.value(rho, c).value())));
    out.push_back(ModInt::from_u64(s, t.l()));
  }
  return out;
}

struct OrthogonalityReport {
  bool rows_ok = true;
  bool columns_ok = true;
  bool degrees_ok = true;
};

/// Row and column orthogonality mod l and sum of squared degrees.
inline OrthogonalityReport check_orthogonality(const CharacterTableMod& t) {
  const FiniteGroup& g = t.group();
  const auto& cd = g.classes();
  const u64 l = t.l();
  const std::size_t k = cd.count();
  OrthogonalityReport rep;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      ModInt s(0, l);
      for (std::size_t c = 0; c < k; ++c)
        s += ModInt::from_u64(cd.sizes[c], l) * t.value(i, c) * t.value(j, cd.inverse_class[c]);
      if (s != ModInt::from_u64(i == j ? g.order() : 0, l)) rep.rows_ok = false;
    }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      ModInt s(0, l);
      for (std::size_t rho = 0; rho < k; ++rho) s += t.value(rho, a) * t.value(rho, cd.inverse_class[b]);
      if (s != ModInt::from_u64(a == b ? cd.centralizer_orders[a] : 0, l)) rep.columns_ok = false;
    }
  u64 sq = 0;
  for (u64 d : t.degrees()) sq += d * d;
  rep.degrees_ok = sq == g.order();
  for (std::size_t rho = 0; rho < k; ++rho)
    if (t.value(rho, 0) != ModInt::from_u64(t.degrees()[rho], l)) rep.degrees_ok = false;
  return rep;
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_CHARTAB_HPP
