#ifndef ARITH_TQFT_DW_HPP
#define ARITH_TQFT_DW_HPP

// Dijkgraaf-Witten theory with finite gauge group: class functions as the
// state space, generator matrices, and the closed counting formulas.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arith_tqft/chartab.hpp"
#include "arith_tqft/frobenius.hpp"
#include "arith_tqft/modular.hpp"
#include "arith_tqft/pgroup.hpp"

namespace arith_tqft {

/// Caches character tables of one group per split prime.
class DwContext {
 public:
  explicit DwContext(FiniteGroup g) : g_(std::move(g)), state_(std::make_shared<State>()) {}

  const FiniteGroup& group() const noexcept { return g_; }

  const ClassStructure& structure() const {
    std::lock_guard<std::mutex> lock(state_->mu);
    if (!state_->structure) state_->structure.emplace(g_);
    return *state_->structure;
  }

  /// The i-th split prime (0-based) and its table.
  const CharacterTableMod& table(std::size_t i) const {
    std::lock_guard<std::mutex> lock(state_->mu);
    while (state_->primes.size() <= i) {
      const u64 after = state_->primes.empty() ? 0 : state_->primes.back().l;
      state_->primes.push_back(split_primes(g_, 1, after).front());
    }
    return table_locked(state_->primes[i]);
  }

  /// Table for the `i`-th split prime above `floor`, reduced from integral
  /// eigenvalue multiplicities rather than recomputed by Dixon.
  const CharacterTableMod& table_above(u64 floor, std::size_t i) const {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto& list = state_->above[floor];
    while (list.size() <= i) list.push_back(split_primes(g_, 1, list.empty() ? floor : list.back().l).front());
    auto it = state_->tables.find(list[i].l);
    if (it != state_->tables.end()) return it->second;
    if (!state_->multiplicities) {
      // Above 2k^2 a random class combination usually has k distinct
      // eigenvalues, and the root scan stays short.
      const u64 k = g_.classes().count();
      const SplitPrime src = split_primes(g_, 1, std::max<u64>(2 * g_.order(), 2 * k * k)).front();
      state_->multiplicities.emplace(eigen_multiplicities(character_table_mod(g_, src)));
    }
    return state_->tables.emplace(list[i].l, reduce_table(*state_->multiplicities, g_, list[i])).first->second;
  }

 private:
  struct State {
    std::mutex mu;
    std::optional<ClassStructure> structure;
    std::vector<SplitPrime> primes;
    std::map<u64, CharacterTableMod> tables;
    std::map<u64, std::vector<SplitPrime>> above;
    std::optional<EigenMultiplicities> multiplicities;
  };
  const CharacterTableMod& table_locked(const SplitPrime& sp) const {
    auto it = state_->tables.find(sp.l);
    if (it == state_->tables.end()) it = state_->tables.emplace(sp.l, character_table_mod(g_, sp)).first;
    return it->second;
  }
  FiniteGroup g_;
  std::shared_ptr<State> state_;
};

/// Z(C Gamma) in the basis of class indicators 1_c. Coordinates of a class
/// function are its values on the classes.
template <class S>
class DwAlgebra {
 public:
  using scalar_type = S;
  using M = Matrix<S>;

  /// Modular version: scalars mod the table's prime; the torus uses the
  /// character formula.
  DwAlgebra(const CharacterTableMod& t, u64 p, unsigned precision = kDefaultPrecision)
    requires std::same_as<S, ModInt>
      : g_(t.group()), p_(p), precision_(precision), zero_(0, t.l()), one_(1, t.l()), a_(t.group()), table_(&t) {}

  /// Exact version over the rationals; the torus is m o (kappa_r (x) id).
  DwAlgebra(const FiniteGroup& g, u64 p, unsigned precision = kDefaultPrecision)
    requires std::same_as<S, Rational>
      : g_(g), p_(p), precision_(precision), zero_(0), one_(1), a_(g) {}

  std::size_t dim() const { return g_.classes().count(); }
  u64 prime() const noexcept { return p_; }
  unsigned precision() const noexcept { return precision_; }
  S zero() const { return zero_; }
  S one() const { return one_; }
  const FiniteGroup& group() const noexcept { return g_; }
  std::vector<std::string> basis_labels() const {
    std::vector<std::string> out;
    for (Elem r : g_.classes().reps) out.push_back("1_" + g_.name(r));
    return out;
  }

  S make(const Rational& q) const {
    if constexpr (std::same_as<S, ModInt>)
      return ModInt::from_rational(q, zero_.modulus());
    else
      return q;
  }

  /// iota(1) = delta_e.
  M unit() const {
    M u(dim(), 1, zero_);
    u(0, 0) = one_;
    return u;
  }
  /// eps(f) = f(e) / |Gamma|.
  M counit() const {
    M e(1, dim(), zero_);
    e(0, 0) = make(Rational(1, static_cast<long long>(g_.order())));
    return e;
  }
  /// Convolution: (1_i * 1_j)(g) = a(i, j, class g).
  M mul() const {
    const std::size_t k = dim();
    M m(k, k * k, zero_);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < k; ++c)
          if (a_(i, j, c)) m(c, i * k + j) = make(Rational(static_cast<long long>(a_(i, j, c))));
    return m;
  }
  /// Delta(f)(x, y) = sum_w f(x w y w^-1).
  M comul() const {
    const std::size_t k = dim();
    const auto& cd = g_.classes();
    const long long n = static_cast<long long>(g_.order());
    M d(k * k, k, zero_);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < k; ++c)
          if (a_(i, j, c))
            d(i * k + j, c) = make(Rational(n * static_cast<long long>(a_(i, j, c) * cd.sizes[c]),
                                            static_cast<long long>(cd.sizes[i] * cd.sizes[j])));
    return d;
  }
  /// (phi_u F)(g) = F(g^v) with v = u^-1 mod exp(Gamma).
  M twist(const PadicUnit& u) const {
    const u64 e = g_.exponent();
    if (u.p() != p_) throw Error("incompatible-units", "unit prime differs from the theory's prime");
    unsigned digits = 0;
    for (u64 x = e; x % p_ == 0; x /= p_) ++digits;
    if (checked_pow(p_, digits) != e) throw Error("not-p-group", "twists need a p-group gauge group");
    if (digits > u.precision()) throw Error("precision-exhausted", "unit precision below the group exponent");
    const u64 v = invmod(u.residue_mod_pow(digits), e == 0 ? 1 : e);
    const auto& cd = g_.classes();
    const std::size_t k = dim();
    M f(k, k, zero_);
    for (std::size_t c = 0; c < k; ++c) f(c, cd.class_of[g_.power(cd.reps[c], static_cast<i64>(v))]) = one_;
    return f;
  }

  /// T^r(b_rho)(g) = (|Gamma|/d) sum_h chi((g h^-1)^(1 - p^r)) chi(h), moved to
  /// the indicator basis with 1_c = sum_rho |c| chi_rho(c^-1) / |Gamma| b_rho.
  M torus(Level r) const
    requires std::same_as<S, ModInt>
  {
    const auto& cd = g_.classes();
    const std::size_t k = dim();
    const u64 l = zero_.modulus();
    const u64 n = g_.order();
    const u64 ex = g_.exponent();
    const i64 e = r.is_inf() ? 1 : static_cast<i64>(one_minus_p_pow(p_, r, ex));
    // g_rho(class of g)
    std::vector<std::vector<ModInt>> img(k, std::vector<ModInt>(k, zero_));
    for (std::size_t rho = 0; rho < k; ++rho) {
      const ModInt scale = ModInt::from_u64(n, l) / ModInt::from_u64(table_->degrees()[rho], l);
      for (std::size_t c = 0; c < k; ++c) {
        const Elem g = cd.reps[c];
        ModInt s = zero_;
        for (Elem h = 0; h < n; ++h)
          s += table_->value(rho, cd.class_of[g_.power(g_.mul(g, g_.inv(h)), e)]) * table_->value(rho, cd.class_of[h]);
        img[rho][c] = scale * s;
      }
    }
    M t(k, k, zero_);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t rho = 0; rho < k; ++rho) {
        const ModInt coef = ModInt::from_u64(cd.sizes[c], l) * table_->value(rho, cd.inverse_class[c]) / ModInt::from_u64(n, l);
        if (coef == zero_) continue;
        for (std::size_t out = 0; out < k; ++out) t(out, c) += coef * img[rho][out];
      }
    return t;
  }

 private:
  FiniteGroup g_;
  u64 p_;
  unsigned precision_;
  S zero_, one_;
  ClassStructure a_;
  const CharacterTableMod* table_ = nullptr;
};

using DwAlgebraMod = DwAlgebra<ModInt>;
using DwAlgebraExact = DwAlgebra<Rational>;

/// Image of one generator token in the modular theory.
inline Matrix<ModInt> dw_generator_map(const CharacterTableMod& t, u64 p, const Token& tok) {
  DwAlgebraMod alg(t, p);
  return Evaluator<DwAlgebraMod>(alg).token(tok);
}

inline Matrix<ModInt> evaluate_dw(const Diagram& d, const CharacterTableMod& t, u64 p) {
  DwAlgebraMod alg(t, p);
  return evaluate_diagram(d, alg);
}

// ---------------------------------------------------------------------------
// Counting

/// Demushkin-type group G_{n,r} = <x1,y1,...,xn,yn | x1^(p^r)[x1,y1]...[xn,yn]>,
/// or a free pro-p group of the given rank.
struct RelatorSpec {
  u64 p = 3;
  unsigned n = 1;
  Level r = Level::inf();
  bool free = false;
  unsigned rank = 0;

  static RelatorSpec demushkin(u64 p, unsigned n, Level r) { return {p, n, r, false, 0}; }
  static RelatorSpec free_group(u64 p, unsigned rank) { return {p, 0, Level::inf(), true, rank}; }

  std::string str() const {
    return free ? "FREE(" + std::to_string(rank) + ")" : "G(n=" + std::to_string(n) + ", r=" + r.str() + ")";
  }
};

struct CountResult {
  Integer count;
  std::vector<u64> primes_used;  // the last one is the verification prime
};

inline constexpr std::size_t kMaxCrtPrimes = 64;
inline constexpr u64 kCrtPrimeCap = 4096;

/// |Hom(G, Gamma)| = |Gamma|^(2n-2) sum_rho d^-(2n-2) sum_g chi(g^(p^r-1)) chi(g),
/// evaluated mod split primes and recovered by CRT within |Gamma|^(2n).
inline CountResult hom_count(const RelatorSpec& spec, const DwContext& ctx) {
  const FiniteGroup& g = ctx.group();
  const Integer n = g.order();
  if (spec.free) return {boost::multiprecision::pow(n, spec.rank), {}};
  if (spec.n == 0) throw Error("invalid-spec", "the relator needs n >= 1");
  const Integer bound = boost::multiprecision::pow(n, 2 * spec.n);

  // Primes near sqrt(2 bound) make two of them enough, capped so that prime
  // search and the residue arithmetic stay on short words.
  u64 floor = kCrtPrimeCap;
  if (2 * bound < Integer(kCrtPrimeCap) * kCrtPrimeCap) floor = static_cast<u64>(boost::multiprecision::sqrt(Integer(2 * bound)));
  auto residue = [&](std::size_t i) {
    const CharacterTableMod& t = ctx.table_above(floor, i);
    const u64 l = t.l();
    const auto sums = char_sum(t, spec.p, spec.r);
    const ModInt gn = ModInt::from_u64(g.order(), l);
    ModInt total(0, l);
    std::map<u64, ModInt> weight;  // (|Gamma| / d)^(2n-2), by degree
    for (std::size_t rho = 0; rho < t.size(); ++rho) {
      const u64 d = t.degrees()[rho];
      auto it = weight.find(d);
      if (it == weight.end()) it = weight.emplace(d, (gn / ModInt::from_u64(d, l)).pow(2 * spec.n - 2)).first;
      total += it->second * sums[rho];
    }
    return total;
  };

  std::vector<ModInt> res;
  std::vector<u64> primes;
  Integer modulus = 1;
  while (modulus <= 2 * bound) {
    if (res.size() >= kMaxCrtPrimes) throw Error("crt-insufficient", "more than " + std::to_string(kMaxCrtPrimes) + " primes needed");
    res.push_back(residue(res.size()));
    primes.push_back(res.back().modulus());
    modulus *= res.back().modulus();
  }
  Integer value = recover_integer(res, bound);
  const ModInt check = residue(res.size());
  primes.push_back(check.modulus());
  Integer vm = value % check.modulus();
  if (vm < 0) vm += check.modulus();
  if (static_cast<u64>(vm) != check.value())
    throw Error("crt-verification-failed", "recovered count disagrees with the verification prime " + std::to_string(check.modulus()));
  if (value < 0) throw Error("internal", "negative homomorphism count");
  return {value, primes};
}

inline CountResult hom_count(const RelatorSpec& spec, const FiniteGroup& g) { return hom_count(spec, DwContext(g)); }

/// Hall's Moebius function on the subgroup lattice: mu(Gamma) = 1 and
/// sum_{K >= H} mu(K) = 0 for H < Gamma.
inline std::vector<std::pair<Subgroup, i64>> hall_mobius(const FiniteGroup& g) {
  const auto subs = all_subgroups(g);
  const auto lat = subgroup_lattice(subs);
  const std::size_t k = subs.size();
  std::vector<i64> mu(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    if (subs[i].order() == g.order()) {
      mu[i] = 1;
      continue;
    }
    i64 s = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i && lat[i][j]) s += mu[j];
    mu[i] = -s;
  }
  std::vector<std::pair<Subgroup, i64>> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back({subs[i], mu[i]});
  return out;
}

/// Surjective homomorphisms: sum_H mu(H) |Hom(G, H)|.
inline CountResult epi_count(const RelatorSpec& spec, const FiniteGroup& g) {
  CountResult out{0, {}};
  for (const auto& [h, mu] : hall_mobius(g)) {
    if (!mu) continue;
    CountResult c = h.order() == g.order() ? hom_count(spec, g) : hom_count(spec, g.subgroup_group(h));
    out.count += mu * c.count;
    for (u64 l : c.primes_used)
      if (std::find(out.primes_used.begin(), out.primes_used.end(), l) == out.primes_used.end()) out.primes_used.push_back(l);
  }
  std::sort(out.primes_used.begin(), out.primes_used.end());
  return out;
}

struct ExtensionResult {
  Integer hom_count;
  Integer epi_count;
  u64 automorphisms = 0;
  Rational extensions;
  std::vector<u64> primes_used;
};

/// Galois extensions with group Gamma: epi_count / |Aut(Gamma)|.
inline ExtensionResult extension_count(const RelatorSpec& spec, const FiniteGroup& g) {
  ExtensionResult r;
  const CountResult h = hom_count(spec, g);
  const CountResult e = epi_count(spec, g);
  r.hom_count = h.count;
  r.epi_count = e.count;
  r.automorphisms = automorphism_count(g);
  r.extensions = Rational(e.count, Integer(r.automorphisms));
  r.primes_used = e.primes_used;
  return r;
}

/// Yamagishi's count for a local field of degree N over Q_p containing the
/// p-th roots of unity: the Demushkin group with n = N/2 + 1.
inline CountResult yamagishi_count(unsigned N, Level r, const FiniteGroup& g, u64 p = 3) {
  if (N == 0 || N % 2) throw Error("invalid-degree", "degree N must be even and positive");
  return hom_count(RelatorSpec::demushkin(p, N / 2 + 1, r), g);
}

struct GaugeCountResult {
  Integer count;
  Rational homotopy_cardinality;
  std::optional<Integer> fast_path_count;  // set when all Sylow subgroups meet trivially
  std::size_t sylow_count = 0;
};

/// Homomorphisms into H whose image is a p-group: a sum of epi counts over all
/// p-subgroups, plus the Sylow shortcut when it applies.
inline GaugeCountResult general_gauge_count(const FiniteGroup& h, u64 p, const RelatorSpec& spec) {
  GaugeCountResult out;
  for (const auto& s : all_subgroups(h))
    if (is_p_group(s, p)) out.count += epi_count(spec, h.subgroup_group(s)).count;
  out.homotopy_cardinality = Rational(out.count, Integer(h.order()));
  const auto syl = sylow_p_subgroups(h, p);
  out.sylow_count = syl.size();
  bool trivial = true;
  for (std::size_t i = 0; i < syl.size() && trivial; ++i)
    for (std::size_t j = i + 1; j < syl.size() && trivial; ++j) {
      std::vector<Elem> common;
      std::set_intersection(syl[i].elements.begin(), syl[i].elements.end(), syl[j].elements.begin(), syl[j].elements.end(),
                            std::back_inserter(common));
      trivial = common.size() == 1;
    }
  if (trivial) {
    const Integer one_sylow = hom_count(spec, h.subgroup_group(syl.front())).count;
    out.fast_path_count = Integer(syl.size()) * (one_sylow - 1) + 1;
  }
  return out;
}

inline nlohmann::ordered_json primes_json(const std::vector<u64>& p) { return nlohmann::ordered_json(p); }

}  // namespace arith_tqft

#endif  // ARITH_TQFT_DW_HPP
