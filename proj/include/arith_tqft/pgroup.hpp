#ifndef ARITH_TQFT_PGROUP_HPP
#define ARITH_TQFT_PGROUP_HPP

// Finite groups by dense Cayley table: constructors, conjugacy classes,
// subgroup enumeration, Sylow subgroups and automorphism counting.

#include <algorithm>
#include <array>
#include <map>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arith_tqft/units.hpp"
#include "json.hpp"

namespace arith_tqft {

using Elem = std::uint32_t;

inline constexpr std::size_t kMaxGroupOrder = 10'000;
inline constexpr std::size_t kMaxSubgroupEnumOrder = 200;
inline constexpr std::size_t kMaxAutomorphismOrder = 128;

struct ConjugacyData {
  std::vector<std::size_t> class_of;        // per element
  std::vector<Elem> reps;                   // smallest element of each class; identity class first
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> centralizer_orders;
  std::vector<std::size_t> inverse_class;   // class of g^-1 for g in class k
  std::size_t count() const noexcept { return reps.size(); }
};

struct Subgroup {
  std::vector<Elem> elements;  // sorted
  std::size_t order() const noexcept { return elements.size(); }
  bool contains(Elem g) const { return std::binary_search(elements.begin(), elements.end(), g); }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() <=> b.elements.size();
    return a.elements <=> b.elements;
  }
};

inline bool is_p_power(std::size_t n, u64 p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

class FiniteGroup {
 public:
  /// Validates a Cayley table given row-major as mul[a*n + b] = a*b.
  FiniteGroup(std::size_t n, std::vector<Elem> mul, std::vector<std::string> names = {}, bool trusted = false)
      : n_(n), mul_(std::move(mul)), names_(std::move(names)), cache_(std::make_shared<Cache>()) {
    if (n == 0) throw Error("invalid-group", "group must be nonempty");
    if (n > kMaxGroupOrder) throw Error("bound-exceeded", "group order " + std::to_string(n) + " exceeds " + std::to_string(kMaxGroupOrder));
    if (mul_.size() != n * n) throw Error("invalid-group", "Cayley table must have n*n entries");
    for (Elem x : mul_)
      if (x >= n) throw Error("invalid-group", "Cayley table entry out of range");
    validate(trusted);
    if (names_.empty())
      for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  }

  std::size_t order() const noexcept { return n_; }
  Elem identity() const noexcept { return e_; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<Elem>& table() const noexcept { return mul_; }

  Elem conj(Elem g, Elem h) const noexcept { return mul(mul(h, g), inv(h)); }  // h g h^-1
  /// x^-1 y^-1 x y
  Elem commutator(Elem x, Elem y) const noexcept { return mul(mul(inv(x), inv(y)), mul(x, y)); }

  std::size_t elem_order(Elem g) const { return orders()[g]; }
  const std::vector<std::size_t>& orders() const {
    std::call_once(cache_->orders_once, [&] {
      cache_->orders.resize(n_);
      for (Elem g = 0; g < n_; ++g) {
        std::size_t k = 1;
        for (Elem x = g; x != e_; x = mul(x, g)) ++k;
        cache_->orders[g] = k;
        cache_->exponent = std::lcm(cache_->exponent, k);
      }
    });
    return cache_->orders;
  }
  std::size_t exponent() const {
    orders();
    return cache_->exponent;
  }

  /// g^k with k reduced mod the order of g; negative k allowed.
  Elem power(Elem g, i64 k) const {
    const i64 o = static_cast<i64>(elem_order(g));
    i64 r = k % o;
    if (r < 0) r += o;
    Elem result = e_, base = g;
    u64 ex = static_cast<u64>(r);
    while (ex) {
      if (ex & 1) result = mul(result, base);
      base = mul(base, base);
      ex >>= 1;
    }
    return result;
  }

  const ConjugacyData& classes() const {
    std::call_once(cache_->classes_once, [&] { cache_->classes = compute_classes(); });
    return cache_->classes;
  }

  /// Smallest subgroup containing gens.
  Subgroup closure(const std::vector<Elem>& gens) const {
    std::vector<char> in(n_, 0);
    std::vector<Elem> elems{e_};
    in[e_] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (Elem g : gens) {
        Elem y = mul(elems[i], g);
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
    std::sort(elems.begin(), elems.end());
    return Subgroup{std::move(elems)};
  }

  /// The subgroup as a group in its own right, elements renumbered in order.
  FiniteGroup subgroup_group(const Subgroup& h) const {
    const std::size_t m = h.order();
    std::vector<Elem> idx(n_, static_cast<Elem>(-1));
    for (std::size_t i = 0; i < m; ++i) idx[h.elements[i]] = static_cast<Elem>(i);
    std::vector<Elem> t(m * m);
    std::vector<std::string> nm;
    for (std::size_t i = 0; i < m; ++i) {
      nm.push_back(names_[h.elements[i]]);
      for (std::size_t j = 0; j < m; ++j) {
        Elem y = idx[mul(h.elements[i], h.elements[j])];
        if (y == static_cast<Elem>(-1)) throw Error("invalid-subgroup", "element set is not closed");
        t[i * m + j] = y;
      }
    }
    return FiniteGroup(m, std::move(t), std::move(nm), true);
  }

  Subgroup whole() const {
    std::vector<Elem> all(n_);
    std::iota(all.begin(), all.end(), 0);
    return Subgroup{std::move(all)};
  }

 private:
  struct Cache {
    std::once_flag orders_once, classes_once;
    std::vector<std::size_t> orders;
    std::size_t exponent = 1;
    ConjugacyData classes;
  };

  void validate(bool trusted) {
    // Latin square rows and columns.
    for (std::size_t a = 0; a < n_; ++a) {
      std::vector<char> row(n_, 0), col(n_, 0);
      for (std::size_t b = 0; b < n_; ++b) {
        if (row[mul_[a * n_ + b]]++ || col[mul_[b * n_ + a]]++)
          throw Error("invalid-group", "Cayley table is not a Latin square");
      }
    }
    bool found = false;
    for (Elem a = 0; a < n_ && !found; ++a) {
      bool ok = true;
      for (Elem b = 0; b < n_ && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
      if (ok) {
        e_ = a;
        found = true;
      }
    }
    if (!found) throw Error("invalid-group", "no identity element");
    inv_.assign(n_, 0);
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b)
        if (mul(a, b) == e_) inv_[a] = b;
    if (trusted) return;
    auto bad = [&](Elem a, Elem b, Elem c) { return mul(mul(a, b), c) != mul(a, mul(b, c)); };
    if (n_ <= 64) {
      for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
          for (Elem c = 0; c < n_; ++c)
            if (bad(a, b, c)) throw Error("invalid-group", "multiplication is not associative");
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n_ - 1));
      for (int i = 0; i < 20000; ++i)
        if (bad(pick(rng), pick(rng), pick(rng))) throw Error("invalid-group", "multiplication is not associative");
    }
  }

  ConjugacyData compute_classes() const {
    ConjugacyData cd;
    const std::size_t none = static_cast<std::size_t>(-1);
    cd.class_of.assign(n_, none);
    auto add_class = [&](Elem g) {
      const std::size_t k = cd.reps.size();
      std::vector<Elem> orbit;
      for (Elem h = 0; h < n_; ++h) {
        Elem c = conj(g, h);
        if (cd.class_of[c] == none) {
          cd.class_of[c] = k;
          orbit.push_back(c);
        }
      }
      cd.reps.push_back(*std::min_element(orbit.begin(), orbit.end()));
      cd.sizes.push_back(orbit.size());
      cd.centralizer_orders.push_back(n_ / orbit.size());
    };
    add_class(e_);
    for (Elem g = 0; g < n_; ++g)
      if (cd.class_of[g] == none) add_class(g);
    cd.inverse_class.resize(cd.reps.size());
    for (std::size_t k = 0; k < cd.reps.size(); ++k) cd.inverse_class[k] = cd.class_of[inv(cd.reps[k])];
    return cd;
  }

  std::size_t n_;
  std::vector<Elem> mul_;
  std::vector<std::string> names_;
  Elem e_ = 0;
  std::vector<Elem> inv_;
  std::shared_ptr<Cache> cache_;
};

inline const ConjugacyData& conjugacy_classes(const FiniteGroup& g) { return g.classes(); }
/// g^k; pass k = -1 for the INF convention p^INF - 1.
inline Elem power_map(const FiniteGroup& G, Elem g, i64 k) { return G.power(g, k); }

inline bool is_p_group(const FiniteGroup& g, u64 p) { return is_p_power(g.order(), p); }
inline bool is_p_group(const Subgroup& h, u64 p) { return is_p_power(h.order(), p); }

// ---------------------------------------------------------------------------
// Named constructors

inline FiniteGroup cyclic(std::size_t m) {
  std::vector<Elem> t(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a * m + b] = static_cast<Elem>((a + b) % m);
  return FiniteGroup(m, std::move(t));
}

inline FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t a = g.order(), b = h.order(), n = a * b;
  std::vector<Elem> t(n * n);
  std::vector<std::string> names;
  for (Elem x = 0; x < n; ++x) names.push_back("(" + g.name(x / b) + "," + h.name(x % b) + ")");
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      t[x * n + y] = static_cast<Elem>(g.mul(x / b, y / b) * b + h.mul(x % b, y % b));
  return FiniteGroup(n, std::move(t), std::move(names));
}

inline FiniteGroup elementary_abelian(u64 p, unsigned k) {
  FiniteGroup g = cyclic(1);
  for (unsigned i = 0; i < k; ++i) g = product(g, cyclic(p));
  return g;
}

/// Upper unitriangular 3x3 matrices over F_p: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
inline FiniteGroup heisenberg(u64 p) {
  const std::size_t n = p * p * p;
  auto idx = [&](u64 a, u64 b, u64 c) { return static_cast<Elem>((a % p * p + b % p) * p + c % p); };
  std::vector<Elem> t(n * n);
  std::vector<std::string> names;
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b)
      for (u64 c = 0; c < p; ++c) names.push_back("[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]");
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      u64 a = x / (p * p), b = x / p % p, c = x % p;
      u64 a2 = y / (p * p), b2 = y / p % p, c2 = y % p;
      t[x * n + y] = idx(a + a2, b + b2, c + c2 + a * b2);
    }
  return FiniteGroup(n, std::move(t), std::move(names));
}

/// C_{p^2} semidirect C_p with y x y^-1 = x^(1+p): x^i y^j x^k y^l = x^(i + k(1+p)^j) y^(j+l).
inline FiniteGroup extraspecial_exp_p2(u64 p) {
  const u64 q = p * p;
  const std::size_t n = q * p;
  std::vector<Elem> t(n * n);
  std::vector<std::string> names;
  for (u64 i = 0; i < q; ++i)
    for (u64 j = 0; j < p; ++j) names.push_back("x^" + std::to_string(i) + "y^" + std::to_string(j));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      u64 i = a / p, j = a % p, k = b / p, l = b % p;
      u64 e = (i + k * powmod(1 + p, j, q)) % q;
      t[a * n + b] = static_cast<Elem>(e * p + (j + l) % p);
    }
  return FiniteGroup(n, std::move(t), std::move(names));
}

/// Invertible 2x2 matrices over F_p.
inline FiniteGroup gl2(u64 p) {
  std::vector<std::array<u64, 4>> mats;
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b)
      for (u64 c = 0; c < p; ++c)
        for (u64 d = 0; d < p; ++d)
          if ((a * d + p * p - b * c) % p) mats.push_back({a, b, c, d});
  const std::size_t n = mats.size();
  auto key = [&](const std::array<u64, 4>& m) { return ((m[0] * p + m[1]) * p + m[2]) * p + m[3]; };
  std::vector<Elem> index(p * p * p * p, 0);
  for (std::size_t i = 0; i < n; ++i) index[key(mats[i])] = static_cast<Elem>(i);
  std::vector<Elem> t(n * n);
  std::vector<std::string> names;
  for (const auto& m : mats)
    names.push_back("[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" + std::to_string(m[2]) + "," + std::to_string(m[3]) + "]]");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& x = mats[i];
      const auto& y = mats[j];
      std::array<u64, 4> z = {(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
                              (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p};
      t[i * n + j] = index[key(z)];
    }
  return FiniteGroup(n, std::move(t), std::move(names));
}

/// Closure of permutations given as image arrays; x*y applies x first.
inline FiniteGroup from_permutations(std::size_t degree, const std::vector<std::vector<unsigned>>& gens,
                                     std::size_t bound = kMaxGroupOrder) {
  using Perm = std::vector<unsigned>;
  for (const auto& g : gens) {
    if (g.size() != degree) throw Error("invalid-permutation", "permutation length differs from degree");
    std::vector<char> seen(degree, 0);
    for (unsigned v : g) {
      if (v >= degree || seen[v]++) throw Error("invalid-permutation", "not a bijection of {0..degree-1}");
    }
  }
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  auto compose = [&](const Perm& x, const Perm& y) {
    Perm z(degree);
    for (std::size_t i = 0; i < degree; ++i) z[i] = y[x[i]];
    return z;
  };
  std::vector<Perm> elems{id};
  std::map<Perm, Elem> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Perm z = compose(elems[i], g);
      if (!index.count(z)) {
        if (elems.size() >= bound) throw Error("bound-exceeded", "permutation closure exceeds " + std::to_string(bound) + " elements");
        index[z] = static_cast<Elem>(elems.size());
        elems.push_back(std::move(z));
      }
    }
  const std::size_t n = elems.size();
  std::vector<Elem> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = index.at(compose(elems[i], elems[j]));
  return FiniteGroup(n, std::move(t));
}

// ---------------------------------------------------------------------------
// Group specs

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline u64 spec_int(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw Error("invalid-group-spec", "expected an integer, got '" + s + "'");
  return v;
}

inline u64 odd_prime_arg(const std::string& s, const std::string& what) {
  u64 p = spec_int(s);
  if (p < 3 || !is_prime(p)) throw Error("invalid-group-spec", what + " needs an odd prime, got " + s);
  return p;
}

inline FiniteGroup named_group(const std::vector<std::string>& parts) {
  if (parts.empty()) throw Error("invalid-group-spec", "empty group name");
  const std::string& nm = parts[0];
  auto need = [&](std::size_t k) {
    if (parts.size() != k + 1) throw Error("invalid-group-spec", nm + " takes " + std::to_string(k) + " argument(s)");
  };
  if (nm == "cyclic") {
    need(1);
    u64 m = spec_int(parts[1]);
    if (m == 0) throw Error("invalid-group-spec", "cyclic order must be positive");
    return cyclic(m);
  }
  if (nm == "elementary_abelian") {
    need(2);
    return elementary_abelian(odd_prime_arg(parts[1], nm), static_cast<unsigned>(spec_int(parts[2])));
  }
  if (nm == "heisenberg") {
    need(1);
    return heisenberg(odd_prime_arg(parts[1], nm));
  }
  if (nm == "extraspecial_exp_p2") {
    need(1);
    return extraspecial_exp_p2(odd_prime_arg(parts[1], nm));
  }
  if (nm == "gl2") {
    need(1);
    u64 p = spec_int(parts[1]);
    if (!is_prime(p)) throw Error("invalid-group-spec", "gl2 needs a prime");
    return gl2(p);
  }
  throw Error("invalid-group-spec", "unknown group '" + nm + "'");
}

}  // namespace detail

inline FiniteGroup group_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind");
    if (kind == "cayley") {
      const std::size_t n = j.at("n");
      std::vector<Elem> t;
      const auto& rows = j.at("mul");
      if (rows.size() != n) throw Error("invalid-group", "Cayley table must have n rows");
      for (const auto& row : rows) {
        if (row.size() != n) throw Error("invalid-group", "Cayley table rows must have n entries");
        for (const auto& v : row) t.push_back(v.get<Elem>());
      }
      return FiniteGroup(n, std::move(t));
    }
    if (kind == "perm") return from_permutations(j.at("degree"), j.at("gens").get<std::vector<std::vector<unsigned>>>());
    if (kind == "named") {
      const std::string nm = j.at("name");
      if (nm == "product") {
        FiniteGroup g = cyclic(1);
        for (const auto& f : j.at("factors")) g = product(g, group_from_json(f));
        return g;
      }
      std::vector<std::string> parts{nm};
      if (nm == "cyclic") parts.push_back(std::to_string(j.at("m").get<u64>()));
      if (nm == "elementary_abelian") {
        parts.push_back(std::to_string(j.at("p").get<u64>()));
        parts.push_back(std::to_string(j.at("k").get<u64>()));
      }
      if (nm == "heisenberg" || nm == "extraspecial_exp_p2" || nm == "gl2") parts.push_back(std::to_string(j.at("p").get<u64>()));
      return detail::named_group(parts);
    }
    throw Error("invalid-group-spec", "unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid-group-spec", e.what());
  }
}

/// "named:cyclic:3", "named:elementary_abelian:3:2", "named:product:cyclic:3*cyclic:9",
/// "file:path.json", or an inline JSON object.
inline FiniteGroup group_from_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::exception& e) {
      throw Error("invalid-group-spec", e.what());
    }
    return group_from_json(j);
  }
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw Error("invalid-group-spec", "cannot open " + spec.substr(5));
    std::stringstream ss;
    ss << in.rdbuf();
    return group_from_spec(ss.str());
  }
  if (spec.rfind("named:", 0) == 0) {
    const std::string rest = spec.substr(6);
    if (rest.rfind("product:", 0) == 0) {
      FiniteGroup g = cyclic(1);
      for (const auto& f : detail::split(rest.substr(8), '*')) g = product(g, detail::named_group(detail::split(f, ':')));
      return g;
    }
    return detail::named_group(detail::split(rest, ':'));
  }
  throw Error("invalid-group-spec", "group spec must start with 'named:', 'file:' or '{'");
}

// ---------------------------------------------------------------------------
// Subgroups

namespace detail {
inline std::string subgroup_key(const Subgroup& h, std::size_t n) {
  std::string k(n, '0');
  for (Elem g : h.elements) k[g] = '1';
  return k;
}
}  // namespace detail

/// Every subgroup, ordered by (order, elements). Closure of each known
/// subgroup with one more element, breadth first.
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& G, std::size_t bound = kMaxSubgroupEnumOrder) {
  if (G.order() > bound)
    throw Error("bound-exceeded", "subgroup enumeration limited to order " + std::to_string(bound));
  std::set<std::string> seen;
  std::vector<Subgroup> found;
  std::deque<Subgroup> queue;
  Subgroup triv{{G.identity()}};
  seen.insert(detail::subgroup_key(triv, G.order()));
  queue.push_back(triv);
  // Cyclic subgroups first so each larger subgroup is a join of known ones.
  while (!queue.empty()) {
    Subgroup h = queue.front();
    queue.pop_front();
    for (Elem g = 0; g < G.order(); ++g) {
      if (h.contains(g)) continue;
      std::vector<Elem> gens = h.elements;
      gens.push_back(g);
      Subgroup k = G.closure(gens);
      if (seen.insert(detail::subgroup_key(k, G.order())).second) queue.push_back(k);
    }
    found.push_back(std::move(h));
  }
  std::sort(found.begin(), found.end());
  return found;
}

/// contains[i][j] is true when subgroups[i] is a subgroup of subgroups[j].
inline std::vector<std::vector<bool>> subgroup_lattice(const std::vector<Subgroup>& subs) {
  const std::size_t k = subs.size();
  std::vector<std::vector<bool>> c(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      c[i][j] = subs[i].order() <= subs[j].order() && subs[j].order() % subs[i].order() == 0 &&
                std::includes(subs[j].elements.begin(), subs[j].elements.end(), subs[i].elements.begin(), subs[i].elements.end());
  return c;
}

inline std::vector<std::vector<bool>> subgroup_lattice(const FiniteGroup& G) { return subgroup_lattice(all_subgroups(G)); }

/// All Sylow p-subgroups: one grown greedily through p-subgroups, then its conjugates.
inline std::vector<Subgroup> sylow_p_subgroups(const FiniteGroup& G, u64 p) {
  std::size_t pa = 1;
  for (std::size_t n = G.order(); n % p == 0; n /= p) pa *= p;
  Subgroup s{{G.identity()}};
  while (s.order() < pa) {
    bool grown = false;
    for (Elem g = 0; g < G.order() && !grown; ++g) {
      if (s.contains(g) || !is_p_power(G.elem_order(g), p)) continue;
      std::vector<Elem> gens = s.elements;
      gens.push_back(g);
      Subgroup k = G.closure(gens);
      if (is_p_group(k, p)) {
        s = std::move(k);
        grown = true;
      }
    }
    if (!grown) throw Error("internal", "failed to grow a p-subgroup");
  }
  std::set<Subgroup> conj;
  for (Elem h = 0; h < G.order(); ++h) {
    std::vector<Elem> e;
    for (Elem x : s.elements) e.push_back(G.conj(x, h));
    std::sort(e.begin(), e.end());
    conj.insert(Subgroup{std::move(e)});
  }
  return {conj.begin(), conj.end()};
}

/// Greedy generating set: each new generator is the one that enlarges the
/// subgroup the most. Ties go to larger element orders, then to smaller
/// centralizers, so central elements come last.
inline std::vector<Elem> generating_set(const FiniteGroup& G) {
  const ConjugacyData& cd = G.classes();
  auto cent = [&](Elem a) { return cd.centralizer_orders[cd.class_of[a]]; };
  std::vector<Elem> by_order(G.order());
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(), [&](Elem a, Elem b) {
    if (G.elem_order(a) != G.elem_order(b)) return G.elem_order(a) > G.elem_order(b);
    return cent(a) < cent(b);
  });
  std::vector<Elem> gens;
  Subgroup cur{{G.identity()}};
  while (cur.order() < G.order()) {
    std::optional<Subgroup> best;
    Elem pick = G.identity();
    for (Elem g : by_order) {
      if (cur.contains(g)) continue;
      gens.push_back(g);
      Subgroup s = G.closure(gens);
      gens.pop_back();
      if (!best || s.order() > best->order()) {
        best = std::move(s);
        pick = g;
        if (best->order() == G.order()) break;
      }
    }
    gens.push_back(pick);
    cur = std::move(*best);
  }
  return gens;
}

/// Number of automorphisms: backtracking over generator images with a
/// consistency check on each prefix of the generating set.
inline u64 automorphism_count(const FiniteGroup& G, std::size_t bound = kMaxAutomorphismOrder) {
  if (G.order() > bound)
    throw Error("bound-exceeded", "automorphism counting limited to order " + std::to_string(bound));
  const std::vector<Elem> gens = generating_set(G);
  const Elem none = static_cast<Elem>(-1);
  std::vector<Elem> images;

  // Map on <gens[0..k)> determined by the chosen images, or nullopt if the
  // images do not define an injective homomorphism there.
  auto extend = [&](std::size_t k) -> std::optional<std::vector<Elem>> {
    std::vector<Elem> f(G.order(), none);
    std::vector<char> hit(G.order(), 0);
    std::vector<Elem> frontier{G.identity()};
    f[G.identity()] = G.identity();
    hit[G.identity()] = 1;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Elem x = frontier[i];
      for (std::size_t j = 0; j < k; ++j) {
        const Elem y = G.mul(x, gens[j]);
        const Elem fy = G.mul(f[x], images[j]);
        if (f[y] == none) {
          if (hit[fy]) return std::nullopt;
          f[y] = fy;
          hit[fy] = 1;
          frontier.push_back(y);
        } else if (f[y] != fy) {
          return std::nullopt;
        }
      }
    }
    return f;
  };

  u64 count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == gens.size()) {
      ++count;
      return;
    }
    const std::size_t want = G.elem_order(gens[i]);
    for (Elem c = 0; c < G.order(); ++c) {
      if (G.elem_order(c) != want) continue;
      images.push_back(c);
      if (extend(i + 1)) go(i + 1);
      images.pop_back();
    }
  };
  go(0);
  return count;
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_PGROUP_HPP
