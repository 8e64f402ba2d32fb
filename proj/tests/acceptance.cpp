#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "arith_tqft/arith_tqft.hpp"
#include "random_diagrams.hpp"

using namespace arith_tqft;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<Level> levels(unsigned top) {
  std::vector<Level> out;
  for (unsigned r = 1; r <= top; ++r) out.emplace_back(r);
  return out;
}

RelatorSpec dem(unsigned n, Level r) { return RelatorSpec::demushkin(3, n, r); }

struct Outcome {
  bool ok = true;
  std::string detail;
  void need(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

Outcome universal_identities() {
  Outcome o;
  const auto t0 = Clock::now();
  using US = UniversalScalar;
  const US h(BivarPoly::h()), t(BivarPoly::t());
  const UniversalAlgebra alg;
  const auto g3 = evaluate_diagram(parse_diagram("cap; tor(inf); tor(inf); tor(inf); cup"), alg);
  o.need(g3(0, 0) == US(2) * h * h + US(8) * t, "genus 3 gave " + g3(0, 0).str());
  const auto md = alg.mul() * alg.comul();
  o.need(md * md == Matrix<US>::identity(2, US(), US(1)).scaled(h * h + US(4) * t), "(m Delta)^2");
  Evaluator<UniversalAlgebra> ev(alg);
  for (unsigned r = 1; r <= 4; ++r)
    for (unsigned s = 1; s <= 4; ++s) {
      const auto diff = alg.mul() * kron(ev.kappa(Level(r)), ev.kappa(Level(s))) - md * ev.kappa(min(Level(r), Level(s)));
      o.need(diff.is_zero(), "kappa_" + std::to_string(r) + " kappa_" + std::to_string(s));
    }
  const double secs = since(t0);
  o.need(secs < 1.0, "took " + std::to_string(secs) + " s");
  o.detail = o.ok ? "genus 3 = " + g3(0, 0).str() + ", " + std::to_string(secs) + " s" : o.detail;
  return o;
}

Outcome axiom_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto lv = levels(4);
  const auto units = default_sample_units(3, kDefaultPrecision, lv);
  for (Level r : lv)
    o.need(std::count_if(units.begin(), units.end(), [&](const PadicUnit& u) { return u.level() == r; }) >= 3, "units per level");
  const auto rep = check_axioms(UniversalAlgebra(3, kDefaultPrecision), lv, units);
  o.need(rep.all_passed(), "universal: " + rep.to_json().dump());
  int checked = 1;
  for (const FiniteGroup& g : {cyclic(3), cyclic(9), elementary_abelian(3, 2), heisenberg(3)}) {
    const DwContext ctx(g);
    o.need(ctx.table(0).l() != ctx.table(1).l(), "primes coincide");
    for (std::size_t i = 0; i < 2; ++i) {
      const DwAlgebraMod alg(ctx.table(i), 3);
      const auto r = check_axioms(alg, lv, units);
      o.need(r.all_passed(), "|G|=" + std::to_string(g.order()) + " l=" + std::to_string(ctx.table(i).l()) + ": " + r.to_json().dump());
      ++checked;
    }
  }
  const double secs = since(t0);
  o.need(secs < 60, "took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = std::to_string(checked) + " algebras, " + std::to_string(secs) + " s";
  return o;
}

Outcome counting_grid() {
  Outcome o;
  const auto t0 = Clock::now();
  int cells = 0;
  for (const FiniteGroup& g : {cyclic(3), cyclic(9), elementary_abelian(3, 2), heisenberg(3), extraspecial_exp_p2(3)}) {
    const DwContext ctx(g);
    for (unsigned n : {1u, 2u})
      for (Level r : {Level(1), Level(2), Level::inf()}) {
        const Integer f = hom_count(dem(n, r), ctx).count;
        EnumerationTask task;
        task.spec = dem(n, r);
        const u64 e = count_solutions(task, g).count;
        o.need(f == Integer(e), "|G|=" + std::to_string(g.order()) + " n=" + std::to_string(n) + " r=" + r.str() + ": " + f.str() +
                                    " vs " + std::to_string(e));
        ++cells;
      }
  }
  o.need(hom_count(dem(1, Level(1)), cyclic(3)).count == 9, "C3 n=1 r=1");
  o.need(hom_count(dem(2, Level(1)), cyclic(3)).count == 81, "C3 n=2 r=1");
  o.need(hom_count(dem(1, Level::inf()), heisenberg(3)).count == 297, "heisenberg n=1 r=inf");
  const double secs = since(t0);
  o.need(secs < 600, "took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = std::to_string(cells) + " cells, " + std::to_string(secs) + " s";
  return o;
}

Outcome gl2_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = general_gauge_count(gl2(3), 3, dem(1, Level(1)));
  const u64 p = 3;
  const Rational closed(Integer(p * p + p - 1), Integer((p - 1) * (p - 1) * (p + 1)));
  o.need(r.count == 33, "count " + r.count.str());
  o.need(r.homotopy_cardinality == Rational(11, 16), "cardinality " + to_string(r.homotopy_cardinality));
  o.need(r.homotopy_cardinality == closed, "closed form");
  EnumerationTask task;
  task.spec = dem(1, Level(1));
  task.p_image = true;
  o.need(count_solutions(task, gl2(3)).count == 33, "oracle");
  const double secs = since(t0);
  o.need(secs < 5, "took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = "33 and 11/16, " + std::to_string(secs) + " s";
  return o;
}

Outcome extensions() {
  Outcome o;
  const auto a = extension_count(RelatorSpec::free_group(3, 2), cyclic(3)).extensions;
  const auto b = extension_count(dem(2, Level(1)), cyclic(3)).extensions;
  o.need(a == 4, "Q_3 gave " + to_string(a));
  o.need(b == 40, "Q_3(zeta_3) gave " + to_string(b));
  o.need(b == Rational(80, 2), "hyperplane count");
  if (o.ok) o.detail = "4 and 40";
  return o;
}

Outcome generator_fidelity() {
  Outcome o;
  std::size_t entries = 0;
  for (const FiniteGroup& g : {cyclic(3), heisenberg(3)}) {
    const DwContext ctx(g);
    const DwAlgebraExact exact(g, 3);
    Evaluator<DwAlgebraExact> ev(exact);
    const std::size_t k = g.classes().count();
    for (std::size_t ti = 0; ti < 2; ++ti) {
      const auto& t = ctx.table(ti);
      const auto m = dw_generator_map(t, 3, Token::p21()), d = dw_generator_map(t, 3, Token::p12());
      const auto t1 = dw_generator_map(t, 3, Token::torus(Level(1))), ti_ = dw_generator_map(t, 3, Token::torus(Level::inf()));
      const auto em = exact.mul(), ed = exact.comul(), et1 = ev.torus(Level(1)), eti = ev.torus(Level::inf());
      auto check = [&](const Matrix<ModInt>& mod, const Matrix<Rational>& ex, std::size_t row, std::size_t col, const Rational& q,
                       const char* what) {
        o.need(ex(row, col) == q, std::string(what) + " exact entry");
        o.need(mod(row, col) == ModInt::from_rational(q, t.l()), std::string(what) + " mod entry");
        ++entries;
      };
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            check(m, em, c, i * k + j, decorated_generator_count(g, 3, Token::p21(), {i, j}, {c}), "P21");
            check(d, ed, i * k + j, c, decorated_generator_count(g, 3, Token::p12(), {c}, {i, j}), "P12");
          }
          check(t1, et1, c, i, decorated_generator_count(g, 3, Token::torus(Level(1)), {i}, {c}), "TORUS(1)");
          check(ti_, eti, c, i, decorated_generator_count(g, 3, Token::torus(Level::inf()), {i}, {c}), "TORUS(INF)");
        }
    }
  }
  if (o.ok) o.detail = std::to_string(entries) + " entries";
  return o;
}

Outcome relation_soundness() {
  Outcome o;
  std::mt19937_64 rng(20240917);
  const UniversalAlgebra uni(3, 4);
  std::vector<DwContext> ctx{DwContext(cyclic(3)), DwContext(cyclic(9)), DwContext(heisenberg(3))};
  const auto& rules = all_rules();
  std::size_t dw_checks = 0;
  const int kInstances = 200;
  for (int i = 0; i < kInstances; ++i) {
    const Rule rule = rules[i % rules.size()];
    const auto inst = testing::random_relation_instance(rng, rule);
    const std::string tag = rule_name(rule) + " on " + print_diagram(inst.lhs);
    o.need(invariant_of(inst.lhs) == invariant_of(inst.rhs), "invariant: " + tag);
    o.need(evaluate_diagram(inst.lhs, uni) == evaluate_diagram(inst.rhs, uni), "universal: " + tag);
    for (const auto& c : ctx) {
      if (!testing::fits(inst, c.group().classes().count())) continue;
      for (std::size_t k = 0; k < 2; ++k) {
        o.need(evaluate_dw(inst.lhs, c.table(k), 3) == evaluate_dw(inst.rhs, c.table(k), 3),
               "dw |G|=" + std::to_string(c.group().order()) + ": " + tag);
        ++dw_checks;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(kInstances) + " instances, " + std::to_string(dw_checks) + " modular comparisons";
  return o;
}

Outcome character_tables() {
  Outcome o;
  int tables = 0;
  for (const FiniteGroup& g : {cyclic(3), cyclic(9), elementary_abelian(3, 2), heisenberg(3), extraspecial_exp_p2(3), gl2(3)}) {
    const DwContext ctx(g);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& t = ctx.table(i);
      const auto rep = check_orthogonality(t);
      const std::string tag = "|G|=" + std::to_string(g.order()) + " l=" + std::to_string(t.l());
      o.need(rep.rows_ok, tag + " rows");
      o.need(rep.columns_ok, tag + " columns");
      o.need(rep.degrees_ok, tag + " degrees");
      ++tables;
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    auto d = DwContext(heisenberg(3)).table(i).degrees();
    std::sort(d.begin(), d.end());
    o.need(d == std::vector<u64>{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3}, "heisenberg degrees");
  }
  if (o.ok) o.detail = std::to_string(tables) + " tables";
  return o;
}

Outcome performance() {
  Outcome o;
  const std::string cmd = std::string("'") + ARITH_TQFT_CLI_PATH + "' bench";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    o.need(false, "cannot run bench");
    return o;
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  o.need(status == 0, "bench exit status " + std::to_string(status));
  std::istringstream lines(out);
  std::string line;
  bool found = false;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j["group"] != "named:heisenberg:3" || j["n"] != 2 || j["r"] != 1) continue;
    found = true;
    const double f = j["formula_seconds"], s = j["speedup"];
    o.need(j["agree"] == true, "formula and oracle disagree");
    o.need(j["oracle_scanned"] == 531441, "scan size " + j["oracle_scanned"].dump());
    o.need(f < 1.0, "formula took " + std::to_string(f) + " s");
    o.need(s >= 100, "speedup " + std::to_string(s));
    if (o.ok)
      o.detail = "formula " + std::to_string(f * 1e6) + " us, oracle " + std::to_string(j["oracle_seconds"].get<double>()) +
                 " s, speedup " + std::to_string(s);
  }
  o.need(found, "no heisenberg n=2 r=1 row");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"universal-algebra identities", universal_identities},
      {"axiom suite", axiom_suite},
      {"counting grid", counting_grid},
      {"GL2(F_3) example", gl2_example},
      {"Galois extension counts", extensions},
      {"generator-matrix fidelity", generator_fidelity},
      {"relation soundness", relation_soundness},
      {"character-table properties", character_tables},
      {"performance contrast", performance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
