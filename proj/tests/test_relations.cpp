#include <gtest/gtest.h>

#include "arith_tqft/dw.hpp"
#include "arith_tqft/universal.hpp"
#include "random_diagrams.hpp"

using namespace arith_tqft;
using namespace arith_tqft::testing;

namespace {

// Rewrites drop slices that are all identities; matching needs them back.
Diagram with_id_slice(const Diagram& d) {
  if (!d.slices().empty()) return d;
  return Diagram(d.in_arity(), d.out_arity(), {Slice(d.in_arity(), Token::cyl())});
}

}  // namespace

TEST(Relations, RuleNamesRoundTrip) {
  for (Rule r : all_rules()) EXPECT_EQ(parse_rule(rule_name(r)), r);
  EXPECT_THROW(parse_rule("R99"), Error);
}

TEST(Relations, CapAbsorbedByMultiplication) {
  const Diagram d = parse_diagram("cap, id ; m");
  EXPECT_EQ(apply_relation(d, Rule::R1a, {0, 0}), Diagram::identity(1));
}

TEST(Relations, CapEatsTwist) {
  const Diagram d = parse_diagram("cap ; tw(7 mod 3^4)");
  EXPECT_EQ(apply_relation(d, Rule::R6, {0, 0}), Diagram::of(Token::cap()));
}

TEST(Relations, TorusAbsorbsDeepTwist) {
  const Diagram ok = parse_diagram("tw(10 mod 3^4) ; tor(2)");
  EXPECT_EQ(apply_relation(ok, Rule::R12a, {0, 0}), Diagram::of(Token::torus(Level(2))));
  EXPECT_THROW(apply_relation(parse_diagram("tw(4 mod 3^4) ; tor(2)"), Rule::R12a, {0, 0}), Error);
}

TEST(Relations, KleinBecomesTwistedTorus) {
  const Diagram d = parse_diagram("d ; tw(4 mod 3^4), tw(10 mod 3^4) ; m");
  const Diagram e = apply_relation(d, Rule::R10, {0, 0});
  EXPECT_EQ(e, parse_diagram("tw(10 mod 3^4) ; tor(1)"));
  EXPECT_TRUE(diagrams_equal(d, e));
}

TEST(Relations, TorusPair) {
  const Diagram d = parse_diagram("tor(2) ; tor(3)");
  const Diagram e = apply_relation(d, Rule::R11, {0, 0});
  EXPECT_EQ(e, parse_diagram("tor(inf) ; tor(2)"));
  EXPECT_TRUE(diagrams_equal(d, e));
}

TEST(Relations, MismatchIsDiagnosed) {
  try {
    apply_relation(parse_diagram("m"), Rule::R1a, {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "pattern-mismatch");
    EXPECT_NE(std::string(e.what()).find("R1a"), std::string::npos);
  }
}

TEST(Relations, FindMatches) {
  const Diagram d = parse_diagram("swap ; swap ; swap ; swap");
  EXPECT_EQ(find_matches(d, Rule::RS_inv, Direction::Forward).size(), 3u);
  EXPECT_TRUE(find_matches(d, Rule::R3, Direction::Forward).empty());
}

TEST(Relations, EveryRulePreservesInvariant) {
  std::mt19937_64 rng(101);
  for (Rule rule : all_rules())
    for (int i = 0; i < 40; ++i) {
      const auto inst = random_relation_instance(rng, rule);
      EXPECT_EQ(invariant_of(inst.lhs), invariant_of(inst.rhs)) << rule_name(rule) << ": " << print_diagram(inst.lhs);
      EXPECT_EQ(canonicalize(inst.lhs), canonicalize(inst.rhs)) << rule_name(rule);
      EXPECT_EQ(inst.lhs.in_arity(), inst.rhs.in_arity());
      EXPECT_EQ(inst.lhs.out_arity(), inst.rhs.out_arity());
    }
}

TEST(Relations, BackwardUndoesForward) {
  std::mt19937_64 rng(102);
  for (Rule rule : all_rules())
    for (int i = 0; i < 10; ++i) {
      const RuleParams ps = random_params(rule, rng);
      const Diagram lhs = rule_lhs(rule, ps);
      const Diagram rhs = with_id_slice(apply_relation(lhs, rule, {0, 0}));
      const auto back = find_matches(rhs, rule, Direction::Backward);
      ASSERT_FALSE(back.empty()) << rule_name(rule);
      const Diagram again = apply_relation(rhs, rule, back.front(), Direction::Backward, ps);
      EXPECT_TRUE(diagrams_equal(again, lhs)) << rule_name(rule) << ": " << print_diagram(lhs) << " -> " << print_diagram(again);
    }
}

TEST(Relations, SoundInUniversalAlgebra) {
  std::mt19937_64 rng(103);
  const UniversalAlgebra alg(3, 4);
  for (Rule rule : all_rules()) {
    if (rule == Rule::R10) continue;
    for (int i = 0; i < 15; ++i) {
      const auto inst = random_relation_instance(rng, rule);
      EXPECT_EQ(evaluate_diagram(inst.lhs, alg), evaluate_diagram(inst.rhs, alg)) << rule_name(rule) << ": " << print_diagram(inst.lhs);
    }
  }
}

TEST(Relations, KleinWithOneTwistSoundInUniversalAlgebra) {
  const UniversalAlgebra alg(3, 4);
  for (u64 a : {1, 4, 7, 10, 19, 28, 55, 70}) {
    const Diagram lhs = parse_diagram("d ; tw(" + std::to_string(a) + " mod 3^4), id ; m");
    const Diagram rhs = apply_relation(lhs, Rule::R10, {0, 0});
    EXPECT_EQ(evaluate_diagram(lhs, alg), evaluate_diagram(rhs, alg)) << a;
  }
}

// The universal twist sees only the level, so it cannot see the level of a
// quotient of two twists of equal level: both sides of this instance differ.
TEST(Relations, KleinWithTwoTwistsBreaksUniversalAlgebra) {
  const UniversalAlgebra alg(3, 4);
  const Diagram lhs = parse_diagram("d ; tw(70 mod 3^4), tw(67 mod 3^4) ; m");
  const Diagram rhs = apply_relation(lhs, Rule::R10, {0, 0});
  EXPECT_EQ(invariant_of(lhs), invariant_of(rhs));
  const auto l = evaluate_diagram(lhs, alg), r = evaluate_diagram(rhs, alg);
  EXPECT_EQ(l(0, 0), -UniversalScalar(BivarPoly::h()));
  EXPECT_EQ(r(0, 0), -UniversalScalar(BivarPoly::h()) + UniversalScalar::symbol(Level(1)));
  EXPECT_NE(l, r);
}

TEST(Relations, SoundInDwTheory) {
  std::mt19937_64 rng(104);
  std::vector<DwContext> ctx{DwContext(cyclic(3)), DwContext(cyclic(9)), DwContext(heisenberg(3))};
  for (Rule rule : all_rules())
    for (int i = 0; i < 10; ++i) {
      const auto inst = random_relation_instance(rng, rule);
      for (const auto& c : ctx) {
        if (!fits(inst, c.group().classes().count())) continue;
        for (std::size_t k = 0; k < 2; ++k) {
          EXPECT_EQ(evaluate_dw(inst.lhs, c.table(k), 3), evaluate_dw(inst.rhs, c.table(k), 3))
              << rule_name(rule) << " |G|=" << c.group().order() << ": " << print_diagram(inst.lhs);
        }
      }
    }
}
