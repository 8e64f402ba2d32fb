#include <gtest/gtest.h>

#include <cstdlib>

#include "arith_tqft/oracle.hpp"

using namespace arith_tqft;

namespace {

EnumerationTask task(unsigned n, Level r) {
  EnumerationTask t;
  t.spec = RelatorSpec::demushkin(3, n, r);
  return t;
}

EnumerationTask free_task(unsigned rank) {
  EnumerationTask t;
  t.spec = RelatorSpec::free_group(3, rank);
  return t;
}

}  // namespace

TEST(Oracle, Examples) {
  EXPECT_EQ(count_solutions(task(1, Level(1)), cyclic(3)).count, 9u);
  EXPECT_EQ(count_solutions(task(1, Level::inf()), heisenberg(3)).count, 297u);
  auto gl = task(1, Level(1));
  gl.p_image = true;
  EXPECT_EQ(count_solutions(gl, gl2(3)).count, 33u);
  gl.symmetry = false;
  const auto full = count_solutions(gl, gl2(3));
  EXPECT_EQ(full.count, 33u);
  EXPECT_EQ(full.scanned, 48u * 48u);
}

TEST(Oracle, Epis) {
  EXPECT_EQ(count_epis(task(1, Level(1)), cyclic(3)).count, 8u);
  EXPECT_EQ(count_epis(free_task(2), elementary_abelian(3, 2)).count, 48u);
  EXPECT_EQ(count_epis(free_task(0), cyclic(3)).count, 0u);
  EXPECT_EQ(count_epis(free_task(0), cyclic(1)).count, 1u);
}

TEST(Oracle, CommutingPairs) {
  for (const FiniteGroup& g : {heisenberg(3), gl2(3), extraspecial_exp_p2(3)}) {
    u64 sum = 0;
    for (Elem x = 0; x < g.order(); ++x) sum += g.classes().centralizer_orders[g.classes().class_of[x]];
    EXPECT_EQ(count_solutions(task(1, Level::inf()), g).count, sum);
    EXPECT_EQ(sum, g.classes().count() * g.order());
  }
}

TEST(Oracle, SymmetryQuotientPreservesCounts) {
  for (const FiniteGroup& g : {heisenberg(3), extraspecial_exp_p2(3), gl2(3)})
    for (Level r : {Level(1), Level(2), Level::inf()})
      for (bool p_image : {false, true}) {
        auto a = task(1, r);
        a.p_image = p_image;
        auto b = a;
        b.symmetry = false;
        EXPECT_EQ(count_solutions(a, g).count, count_solutions(b, g).count);
      }
}

TEST(Oracle, HallConsistency) {
  for (const FiniteGroup& g : {cyclic(3), cyclic(9), elementary_abelian(3, 2), heisenberg(3), extraspecial_exp_p2(3),
                               product(cyclic(3), cyclic(9))}) {
    for (const auto& t : {task(1, Level(1)), task(1, Level::inf()), free_task(2)})
      EXPECT_EQ(Integer(count_epis(t, g).count), hall_epi_count(t, g)) << g.order();
  }
  EXPECT_EQ(Integer(count_epis(free_task(2), elementary_abelian(3, 3)).count), 0);
}

TEST(Oracle, ConstraintsPartitionTheCount) {
  const FiniteGroup g = heisenberg(3);
  const u64 total = count_solutions(task(1, Level(1)), g).count;
  for (std::size_t letter : {0u, 1u}) {
    u64 sum = 0;
    for (std::size_t c = 0; c < g.classes().count(); ++c) {
      auto t = task(1, Level(1));
      t.constraints.push_back({letter, c});
      sum += count_solutions(t, g).count;
    }
    EXPECT_EQ(sum, total);
  }
  auto bad = task(1, Level(1));
  bad.constraints.push_back({5, 0});
  EXPECT_THROW(count_solutions(bad, g), Error);
}

TEST(Oracle, ConjugationInvariance) {
  // Counts with x1 pinned to an element are constant along its class.
  const FiniteGroup g = extraspecial_exp_p2(3);
  const auto& cd = g.classes();
  const Elem e = g.identity();
  for (Elem x = 0; x < g.order(); ++x) {
    u64 here = 0, there = 0;
    const Elem h = static_cast<Elem>((x * 7 + 3) % g.order());
    const Elem xc = g.conj(x, h);
    ASSERT_EQ(cd.class_of[xc], cd.class_of[x]);
    for (Elem y = 0; y < g.order(); ++y) {
      here += g.mul(g.power(x, 3), g.commutator(x, y)) == e;
      there += g.mul(g.power(xc, 3), g.commutator(xc, y)) == e;
    }
    EXPECT_EQ(here, there);
  }
}

TEST(Oracle, BudgetFailsFast) {
  auto t = task(2, Level(1));
  t.budget = 1000;
  try {
    count_solutions(t, heisenberg(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "budget-exceeded");
    EXPECT_NE(std::string(e.what()).find("needs"), std::string::npos);
  }
  ::setenv("ARITH_TQFT_BUDGET", "100", 1);
  EXPECT_EQ(oracle_budget(), 100u);
  EXPECT_THROW(count_solutions(task(1, Level(1)), heisenberg(3)), Error);
  ::unsetenv("ARITH_TQFT_BUDGET");
  EXPECT_EQ(oracle_budget(), kDefaultBudget);
}

TEST(Oracle, DecoratedExamples) {
  const FiniteGroup g = cyclic(3);
  const auto& cd = g.classes();
  const Elem x = 1;
  const std::size_t c = cd.class_of[x], c2 = cd.class_of[g.mul(x, x)];
  EXPECT_EQ(decorated_generator_count(g, 3, Token::p21(), {c, c}, {c2}), Rational(1));
  EXPECT_EQ(decorated_generator_count(g, 3, Token::p21(), {c, c}, {c}), Rational(0));
  EXPECT_THROW(decorated_generator_count(g, 3, Token::cup(), {c}, {}), Error);
}

TEST(Oracle, JsonTask) {
  const auto r = run_oracle_task(nlohmann::json::parse(R"({"group":"named:gl2:3","n":1,"r":1,"p_image":true})"));
  EXPECT_EQ(r.count, 33u);
  EXPECT_EQ(run_oracle_task(nlohmann::json::parse(R"({"group":"named:cyclic:3","free":2,"epi":true})")).count, 8u);
  EXPECT_THROW(run_oracle_task(nlohmann::json::parse(R"({"n":1})")), Error);
  EXPECT_EQ(r.to_json()["count"], 33);
}
