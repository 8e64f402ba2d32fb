#ifndef ARITH_TQFT_FROBENIUS_HPP
#define ARITH_TQFT_FROBENIUS_HPP

// Extended Frobenius algebras as matrices in a fixed basis, the axiom
// checker, and evaluation of diagrams through the generator table.

#include <concepts>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "arith_tqft/cobordism.hpp"
#include "arith_tqft/matrix.hpp"
#include "json.hpp"

namespace arith_tqft {

/// All structure maps are matrices in the algebra's basis; tensor products
/// are Kronecker products with the left factor most significant.
template <class A>
concept ExtFrobAlgebra = requires(const A& a, const PadicUnit& u) {
  typename A::scalar_type;
  requires Scalar<typename A::scalar_type>;
  { a.dim() } -> std::convertible_to<std::size_t>;
  { a.zero() } -> std::convertible_to<typename A::scalar_type>;
  { a.one() } -> std::convertible_to<typename A::scalar_type>;
  { a.unit() } -> std::convertible_to<Matrix<typename A::scalar_type>>;
  { a.counit() } -> std::convertible_to<Matrix<typename A::scalar_type>>;
  { a.mul() } -> std::convertible_to<Matrix<typename A::scalar_type>>;
  { a.comul() } -> std::convertible_to<Matrix<typename A::scalar_type>>;
  { a.twist(u) } -> std::convertible_to<Matrix<typename A::scalar_type>>;
  { a.prime() } -> std::convertible_to<u64>;
  { a.precision() } -> std::convertible_to<unsigned>;
  { a.basis_labels() } -> std::convertible_to<std::vector<std::string>>;
};

inline constexpr std::size_t kDefaultMaxEntries = 10'000'000;

/// Generator images for one algebra, with kappa cached per level.
template <ExtFrobAlgebra A>
class Evaluator {
 public:
  using S = typename A::scalar_type;
  using M = Matrix<S>;

  explicit Evaluator(const A& alg, std::size_t max_entries = kDefaultMaxEntries)
      : a_(alg), max_entries_(max_entries), m_(alg.mul()), d_(alg.comul()), iota_(alg.unit()), eps_(alg.counit()) {}

  const A& algebra() const noexcept { return a_; }
  std::size_t dim() const { return a_.dim(); }
  M id(std::size_t width = 1) const { return M::identity(ipow(a_.dim(), width), a_.zero(), a_.one()); }
  const M& mul() const { return m_; }
  const M& comul() const { return d_; }
  const M& unit() const { return iota_; }
  const M& counit() const { return eps_; }
  M twist(const PadicUnit& u) const { return a_.twist(u); }

  M swap() const {
    const std::size_t n = a_.dim();
    M s(n * n, n * n, a_.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(j * n + i, i * n + j) = a_.one();
    return s;
  }

  /// m o (phi_alpha (x) id) o Delta o iota for a given unit.
  M kappa_with(const PadicUnit& alpha) const { return m_ * kron(a_.twist(alpha), id()) * d_ * iota_; }

  /// kappa_r using the representative 1 + p^r (the identity unit for INF).
  M kappa(Level r) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = kappa_.find(r);
    if (it != kappa_.end()) return it->second;
    M k = kappa_with(PadicUnit::of_level(a_.prime(), a_.precision(), r));
    kappa_.emplace(r, k);
    return k;
  }

  /// Image of the level-r torus: the algebra's own hook if it has one,
  /// otherwise m o (kappa_r (x) id).
  M torus(Level r) const {
    if constexpr (requires { a_.torus(r); }) {
      return a_.torus(r);
    } else {
      return m_ * kron(kappa(r), id());
    }
  }

  M token(const Token& t) const {
    switch (t.kind()) {
      case Gen::P21: return m_;
      case Gen::P12: return d_;
      case Gen::Cup: return eps_;
      case Gen::Cap: return iota_;
      case Gen::Cyl: return id();
      case Gen::Twist: return a_.twist(t.unit());
      case Gen::Swap: return swap();
      case Gen::Torus: return torus(t.level());
    }
    throw Error("unknown-token", t.str());
  }

  /// Matrix from V^(x)in to V^(x)out.
  M evaluate(const Diagram& dg) const {
    const std::size_t n = a_.dim();
    guard(ipow(n, dg.in_arity()), ipow(n, dg.in_arity()));
    M state = id(dg.in_arity());
    for (const auto& slice : dg.slices()) {
      unsigned done_out = 0, rest_in = slice_in(slice);
      for (const auto& tok : slice) {
        rest_in -= tok.in_arity();
        if (tok.kind() == Gen::Cyl) {
          done_out += 1;
          continue;
        }
        const M op = token(tok);
        guard(ipow(n, done_out + tok.out_arity() + rest_in), state.cols());
        state = apply_local(state, op, ipow(n, done_out), ipow(n, rest_in));
        done_out += tok.out_arity();
      }
    }
    return state;
  }

 private:
  void guard(std::size_t rows, std::size_t cols) const {
    if (rows > max_entries_ / std::max<std::size_t>(cols, 1))
      throw Error("dimension-guard", "matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                                         " exceeds the configured limit of " + std::to_string(max_entries_) + " entries");
  }

  const A& a_;
  std::size_t max_entries_;
  M m_, d_, iota_, eps_;
  mutable std::mutex mu_;
  mutable std::map<Level, M> kappa_;
};

template <ExtFrobAlgebra A>
Matrix<typename A::scalar_type> evaluate_diagram(const Diagram& d, const A& alg, std::size_t max_entries = kDefaultMaxEntries) {
  return Evaluator<A>(alg, max_entries).evaluate(d);
}

// ---------------------------------------------------------------------------
// Axioms

struct AxiomResult {
  std::string id;
  bool passed = true;
  std::vector<std::string> witnesses;  // input basis vectors on which the two sides differ
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
  }
  const AxiomResult& operator[](const std::string& id) const {
    for (const auto& r : results)
      if (r.id == id) return r;
    throw Error("unknown-axiom", id);
  }
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    for (const auto& r : results) {
      nlohmann::ordered_json e;
      e["passed"] = r.passed;
      if (!r.passed) {
        e["witnesses"] = r.witnesses;
        e["detail"] = r.detail;
      }
      j[r.id] = e;
    }
    j["all_passed"] = all_passed();
    return j;
  }
};

inline const std::vector<std::string>& axiom_ids() {
  static const std::vector<std::string> ids = {"F1", "F2", "F3", "F4", "F5", "FS", "F6",
                                               "F7", "F8", "F9", "F10", "F11", "F12"};
  return ids;
}

/// Units 1 + p^r c for c in {1, 2, p+1}: three distinct units of each level.
inline std::vector<PadicUnit> default_sample_units(u64 p, unsigned precision, const std::vector<Level>& levels) {
  std::vector<PadicUnit> out;
  for (Level r : levels) {
    if (r.is_inf()) {
      out.push_back(PadicUnit::one(p, precision));
      continue;
    }
    if (r.value() >= precision) throw Error("precision-exhausted", "level " + r.str() + " needs precision above " + r.str());
    const u64 pr = checked_pow(p, r.value());
    const u64 mod = checked_pow(p, precision);
    for (u64 c : {u64{1}, u64{2}, p + 1}) out.emplace_back(p, precision, (1 + mulmod(pr, c, mod)) % mod);
  }
  return out;
}

template <ExtFrobAlgebra A>
AxiomReport check_axioms(const A& alg, const std::vector<Level>& levels, const std::vector<PadicUnit>& sample_units) {
  using M = Matrix<typename A::scalar_type>;
  Evaluator<A> ev(alg);
  const std::size_t n = alg.dim();
  const auto labels = alg.basis_labels();
  const M I = ev.id(), m = ev.mul(), d = ev.comul(), iota = ev.unit(), eps = ev.counit(), sw = ev.swap();

  auto label_of = [&](std::size_t col, std::size_t width) {
    if (width == 0) return std::string("1");
    std::string s;
    for (std::size_t k = width; k-- > 0;) {
      std::size_t digit = (col / ipow(n, k)) % n;
      s += (s.empty() ? "" : "(x)") + labels[digit];
    }
    return s;
  };

  AxiomReport rep;
  std::map<std::string, std::size_t> index;
  for (const auto& id : axiom_ids()) {
    index[id] = rep.results.size();
    rep.results.push_back({id, true, {}, ""});
  }
  auto expect = [&](const std::string& id, const M& lhs, const M& rhs, std::size_t in_width, const std::string& what) {
    AxiomResult& r = rep.results[index[id]];
    if (lhs == rhs) return;
    r.passed = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += what;
    for (std::size_t c = 0; c < lhs.cols(); ++c) {
      bool differ = false;
      for (std::size_t i = 0; i < lhs.rows() && !differ; ++i) differ = !(lhs(i, c) == rhs(i, c));
      if (differ) {
        auto w = label_of(c, in_width);
        if (std::find(r.witnesses.begin(), r.witnesses.end(), w) == r.witnesses.end()) r.witnesses.push_back(w);
      }
    }
  };

  expect("F1", m * kron(I, iota), I, 1, "m(id (x) iota) != id");
  expect("F1", m * kron(iota, I), I, 1, "m(iota (x) id) != id");
  expect("F2", kron(eps, I) * d, I, 1, "(eps (x) id) Delta != id");
  expect("F2", kron(I, eps) * d, I, 1, "(id (x) eps) Delta != id");
  expect("F3", m * kron(m, I), m * kron(I, m), 3, "m not associative");
  expect("F4", kron(d, I) * d, kron(I, d) * d, 1, "Delta not coassociative");
  expect("F5", kron(m, I) * kron(I, d), d * m, 2, "(m (x) id)(id (x) Delta) != Delta m");
  expect("F5", kron(I, m) * kron(d, I), d * m, 2, "(id (x) m)(Delta (x) id) != Delta m");
  expect("FS", m * sw, m, 2, "m not commutative");
  expect("FS", sw * d, d, 1, "Delta not cocommutative");

  for (const auto& u : sample_units) {
    const M f = alg.twist(u);
    const std::string tag = " for alpha = " + u.str();
    expect("F6", f * iota, iota, 0, "phi iota != iota" + tag);
    expect("F7", eps * f, eps, 1, "eps phi != eps" + tag);
    expect("F8", d * f, kron(f, f) * d, 1, "Delta phi != (phi (x) phi) Delta" + tag);
    expect("F9", f * m, m * kron(f, f), 2, "phi m != m (phi (x) phi)" + tag);
  }

  std::vector<Level> lv = levels;
  if (std::find(lv.begin(), lv.end(), Level::inf()) == lv.end()) lv.push_back(Level::inf());
  for (Level r : lv) {
    const M k = ev.kappa(r);
    for (const auto& u : sample_units)
      if (u.level() == r) expect("F10", ev.kappa_with(u), k, 0, "kappa depends on the representative " + u.str() + " of level " + r.str());
  }
  for (Level r : lv)
    for (Level s : lv)
      expect("F11", m * kron(ev.kappa(r), ev.kappa(s)), m * d * ev.kappa(min(r, s)), 0,
             "m(kappa_" + r.str() + " (x) kappa_" + s.str() + ") != m Delta kappa_min");
  for (Level r : lv) {
    const M t = m * kron(ev.kappa(r), I);
    for (const auto& u : sample_units)
      if (u.level() >= r) expect("F12", alg.twist(u) * t, t, 1, "phi_" + u.str() + " does not fix m(kappa_" + r.str() + " (x) id)");
  }
  return rep;
}

template <Scalar S>
nlohmann::ordered_json matrix_to_json(const Matrix<S>& m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (requires { m(i, j).str(); })
        row.push_back(m(i, j).str());
      else
        row.push_back(to_string(m(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace arith_tqft

#endif  // ARITH_TQFT_FROBENIUS_HPP
