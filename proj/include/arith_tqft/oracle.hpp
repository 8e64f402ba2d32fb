#ifndef ARITH_TQFT_ORACLE_HPP
#define ARITH_TQFT_ORACLE_HPP

// Brute-force enumeration of homomorphisms from one-relator and free pro-p
// presentations into a finite group, used to validate the closed formulas.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arith_tqft/cobordism.hpp"
#include "arith_tqft/dw.hpp"
#include "arith_tqft/modular.hpp"
#include "arith_tqft/pgroup.hpp"
#include "json.hpp"

namespace arith_tqft {

inline constexpr u64 kDefaultBudget = 100000000;

/// ARITH_TQFT_BUDGET if set to a positive integer, else the default.
inline u64 oracle_budget() {
  if (const char* env = std::getenv("ARITH_TQFT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

struct ClassConstraint {
  std::size_t letter;  // index into (x1, y1, ..., xn, yn) or the free basis
  std::size_t cls;     // conjugacy class index in the target
};

struct EnumerationTask {
  RelatorSpec spec;
  std::vector<ClassConstraint> constraints;
  bool p_image = false;  // generated subgroup must have p-power order
  bool epi = false;      // generated subgroup must be the whole target
  bool symmetry = true;  // loop x1 over class representatives when unconstrained
  std::optional<u64> budget;
};

struct EnumerationResult {
  u64 count = 0;
  u64 scanned = 0;
  double seconds = 0;
  nlohmann::ordered_json to_json() const { return {{"count", count}, {"scanned", scanned}, {"seconds", seconds}}; }
};

namespace detail {

inline bool is_power_of(u64 n, u64 p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

/// Interns subgroups and memoises closure(H, g) so that generated-subgroup
/// tests cost a table lookup after warm-up.
class ClosureCache {
 public:
  explicit ClosureCache(const FiniteGroup& g) : g_(g) { trivial_ = intern(g.closure({})); }
  std::uint32_t trivial() const noexcept { return trivial_; }
  std::uint32_t step(std::uint32_t h, Elem x) {
    if (member_[h][x]) return h;
    const u64 key = static_cast<u64>(h) * g_.order() + x;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto gens = subgroups_[h];
    gens.push_back(x);
    const std::uint32_t id = intern(g_.closure(gens));
    memo_.emplace(key, id);
    return id;
  }
  std::size_t order(std::uint32_t h) const { return subgroups_[h].size(); }

 private:
  std::uint32_t intern(const Subgroup& s) {
    if (auto it = ids_.find(s.elements); it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(subgroups_.size());
    ids_.emplace(s.elements, id);
    subgroups_.push_back(s.elements);
    std::vector<char> m(g_.order(), 0);
    for (Elem e : s.elements) m[e] = 1;
    member_.push_back(std::move(m));
    return id;
  }
  const FiniteGroup& g_;
  std::map<std::vector<Elem>, std::uint32_t> ids_;
  std::vector<std::vector<Elem>> subgroups_;
  std::vector<std::vector<char>> member_;
  std::unordered_map<u64, std::uint32_t> memo_;
  std::uint32_t trivial_ = 0;
};

inline u64 checked_pow(u64 base, std::size_t e) {
  u64 r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace detail

/// Counts tuples (x1, y1, ..., xn, yn) with x1^(p^r) [x1,y1] ... [xn,yn] = e
/// (x1^0 for r = INF), or arbitrary tuples for a free presentation.
inline EnumerationResult count_solutions(const EnumerationTask& task, const FiniteGroup& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& spec = task.spec;
  if (!spec.free && spec.n == 0) throw Error("invalid-spec", "the relator needs n >= 1");
  const std::size_t letters = spec.free ? spec.rank : 2 * spec.n;
  const auto& cd = g.classes();
  const u64 n = g.order();
  for (const auto& c : task.constraints)
    if (c.letter >= letters || c.cls >= cd.count()) throw Error("invalid-constraint", "constraint out of range");

  std::vector<std::vector<char>> allowed(letters, std::vector<char>(n, 1));
  for (const auto& c : task.constraints)
    for (Elem x = 0; x < n; ++x)
      if (cd.class_of[x] != c.cls) allowed[c.letter][x] = 0;

  // Conjugating a solution gives a solution with the same generated subgroup
  // order, so an unconstrained x1 can range over class representatives.
  const bool symmetric = task.symmetry && letters > 0 && std::none_of(task.constraints.begin(), task.constraints.end(),
                                                     [](const ClassConstraint& c) { return c.letter == 0; });
  std::vector<std::pair<Elem, u64>> first;
  if (letters > 0) {
    if (symmetric)
      for (std::size_t c = 0; c < cd.count(); ++c) first.push_back({cd.reps[c], cd.sizes[c]});
    else
      for (Elem x = 0; x < n; ++x)
        if (allowed[0][x]) first.push_back({x, 1});
  }

  const u64 budget = task.budget.value_or(oracle_budget());
  const u64 predicted = letters == 0 ? 1 : first.size() * detail::checked_pow(n, letters - 1);
  if (predicted > budget || predicted == UINT64_MAX)
    throw Error("budget-exceeded", "enumeration needs " + std::to_string(predicted) + " tuples, budget is " + std::to_string(budget));

  u64 q = 0;
  if (!spec.free && !spec.r.is_inf()) {
    const u64 e = g.exponent();
    q = 1 % e;
    for (unsigned i = 0; i < spec.r.value(); ++i) q = q * (spec.p % e) % e;
  }
  std::vector<Elem> comm(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) comm[x * n + y] = g.commutator(x, y);

  const bool need_closure = task.p_image || task.epi;
  detail::ClosureCache cache(g);
  auto accept_subgroup = [&](std::uint32_t h) {
    const std::size_t o = cache.order(h);
    if (task.epi && o != n) return false;
    if (task.p_image && !detail::is_power_of(o, spec.p)) return false;
    return true;
  };

  EnumerationResult res;
  std::vector<Elem> tup(letters);
  if (letters == 0) {
    res.scanned = 1;
    res.count = accept_subgroup(cache.trivial()) ? 1 : 0;
  } else {
    const Elem e = g.identity();
    // Depth-first over letters 1.., carrying the partial relator word and
    // the generated subgroup.
    auto rec = [&](auto&& self, std::size_t i, Elem word, std::uint32_t h, u64 weight) -> void {
      if (i == letters) {
        ++res.scanned;
        if (!spec.free && word != e) return;
        if (need_closure && !accept_subgroup(h)) return;
        res.count += weight;
        return;
      }
      for (Elem x = 0; x < n; ++x) {
        if (!allowed[i][x]) continue;
        Elem w = word;
        if (!spec.free && i % 2 == 1) w = g.mul(word, comm[tup[i - 1] * n + x]);
        tup[i] = x;
        self(self, i + 1, w, need_closure ? cache.step(h, x) : h, weight);
      }
    };
    for (const auto& [x1, mult] : first) {
      tup[0] = x1;
      const Elem w = spec.free ? e : g.power(x1, static_cast<i64>(q));
      rec(rec, 1, w, need_closure ? cache.step(cache.trivial(), x1) : 0, mult);
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline EnumerationResult count_epis(EnumerationTask task, const FiniteGroup& g) {
  task.epi = true;
  return count_solutions(task, g);
}

/// Hall inversion check: epi count from hom counts into every subgroup.
inline Integer hall_epi_count(const EnumerationTask& task, const FiniteGroup& g) {
  Integer total = 0;
  for (const auto& [h, mu] : hall_mobius(g)) {
    if (mu == 0) continue;
    EnumerationTask sub = task;
    sub.epi = false;
    sub.constraints.clear();
    total += Integer(mu) * Integer(count_solutions(sub, g.subgroup_group(h)).count);
  }
  return total;
}

/// Boundary-decorated count sum_{p in P_G(p1, p2)} |Aut(p2)| / |Aut(p)| for
/// a generator cobordism. p1 lists incoming boundary classes, p2 outgoing
/// ones; homomorphisms are enumerated on the free fundamental group and
/// taken up to simultaneous conjugation.
///   P21: <a,b>, in (a, b), out ab
///   P12: <a,b>, in ab, out (a, b)
///   TORUS(r): <s,x,y>, in s, out s x^(p^r) [x,y]  (x^0 for INF)
inline Rational decorated_generator_count(const FiniteGroup& g, u64 p, const Token& tok, const std::vector<std::size_t>& p1,
                                          const std::vector<std::size_t>& p2, std::optional<u64> budget = std::nullopt) {
  const auto& cd = g.classes();
  const u64 n = g.order();
  std::size_t rank = 0;
  u64 q = 0;
  switch (tok.kind()) {
    case Gen::P21:
      rank = 2;
      if (p1.size() != 2 || p2.size() != 1) throw Error("invalid-classes", "P21 needs two incoming and one outgoing class");
      break;
    case Gen::P12:
      rank = 2;
      if (p1.size() != 1 || p2.size() != 2) throw Error("invalid-classes", "P12 needs one incoming and two outgoing classes");
      break;
    case Gen::Torus: {
      rank = 3;
      if (p1.size() != 1 || p2.size() != 1) throw Error("invalid-classes", "TORUS needs one incoming and one outgoing class");
      if (!tok.level().is_inf()) {
        const u64 e = g.exponent();
        q = 1 % e;
        for (unsigned i = 0; i < tok.level().value(); ++i) q = q * (p % e) % e;
      }
      break;
    }
    default:
      throw Error("invalid-token", "decorated counts cover P21, P12 and TORUS only");
  }
  for (auto c : p1)
    if (c >= cd.count()) throw Error("invalid-classes", "class index out of range");
  for (auto c : p2)
    if (c >= cd.count()) throw Error("invalid-classes", "class index out of range");
  const u64 predicted = detail::checked_pow(n, rank) * n;
  if (predicted > budget.value_or(oracle_budget()))
    throw Error("budget-exceeded", "enumeration needs " + std::to_string(predicted) + " steps");

  auto boundaries = [&](const std::vector<Elem>& v, std::vector<Elem>& in, std::vector<Elem>& out) {
    in.clear();
    out.clear();
    switch (tok.kind()) {
      case Gen::P21:
        in = {v[0], v[1]};
        out = {g.mul(v[0], v[1])};
        break;
      case Gen::P12:
        in = {g.mul(v[0], v[1])};
        out = {v[0], v[1]};
        break;
      default:
        in = {v[0]};
        out = {g.mul(g.mul(v[0], g.power(v[1], static_cast<i64>(q))), g.commutator(v[1], v[2]))};
    }
  };

  u64 aut_p2 = 1;
  for (auto c : p2) aut_p2 *= cd.centralizer_orders[c];

  Rational total = 0;
  std::vector<Elem> v(rank), in, out, w(rank);
  const u64 tuples = detail::checked_pow(n, rank);
  for (u64 code = 0; code < tuples; ++code) {
    u64 c = code;
    for (std::size_t i = rank; i-- > 0;) {
      v[i] = static_cast<Elem>(c % n);
      c /= n;
    }
    boundaries(v, in, out);
    bool ok = true;
    for (std::size_t i = 0; ok && i < in.size(); ++i) ok = cd.class_of[in[i]] == p1[i];
    for (std::size_t i = 0; ok && i < out.size(); ++i) ok = cd.class_of[out[i]] == p2[i];
    if (!ok) continue;
    // Keep one representative per conjugation orbit (the lexicographically
    // least tuple) and record its stabiliser.
    bool minimal = true;
    u64 stab = 0;
    for (Elem h = 0; h < n && minimal; ++h) {
      for (std::size_t i = 0; i < rank; ++i) w[i] = g.conj(v[i], h);
      if (w < v) minimal = false;
      if (w == v) ++stab;
    }
    if (minimal) total += Rational(Integer(aut_p2), Integer(stab));
  }
  return total;
}

inline Level level_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Level::parse(j.get<std::string>());
  if (j.is_number_unsigned()) return Level(j.get<unsigned>());
  throw Error("invalid-level", "level must be a positive integer or \"inf\"");
}

/// Runs a task given as JSON:
/// {"group": spec, "n": int, "r": lvl, "p": int, "free": rank,
///  "constraints": [[letter, class], ...], "p_image": bool, "epi": bool, "budget": int}
inline EnumerationResult run_oracle_task(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("group")) throw Error("invalid-task", "task needs a group");
  const FiniteGroup g = group_from_spec(j.at("group").get<std::string>());
  EnumerationTask task;
  const u64 p = j.value("p", u64{3});
  if (j.contains("free"))
    task.spec = RelatorSpec::free_group(p, j.at("free").get<unsigned>());
  else
    task.spec = RelatorSpec::demushkin(p, j.value("n", 1u), level_from_json(j.value("r", nlohmann::json("inf"))));
  if (j.contains("constraints"))
    for (const auto& c : j.at("constraints")) task.constraints.push_back({c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>()});
  task.p_image = j.value("p_image", false);
  task.epi = j.value("epi", false);
  task.symmetry = j.value("symmetry", true);
  if (j.contains("budget")) task.budget = j.at("budget").get<u64>();
  return count_solutions(task, g);
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_ORACLE_HPP
