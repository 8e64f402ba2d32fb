#include <gtest/gtest.h>

#include <set>

#include "arith_tqft/relations.hpp"
#include "random_diagrams.hpp"

using namespace arith_tqft;
using arith_tqft::testing::random_diagram;
using arith_tqft::testing::random_unit;

namespace {

ComponentInvariant only(const Diagram& d) {
  auto inv = invariant_of(d);
  EXPECT_EQ(inv.size(), 1u);
  return inv.front();
}

void expect_shape(const ComponentInvariant& c, unsigned g, Level r, unsigned n, unsigned u) {
  EXPECT_EQ(c.g, g);
  EXPECT_EQ(c.r, r);
  EXPECT_EQ(c.n, n);
  EXPECT_EQ(c.u, u);
}

const Diagram kCyl = Diagram::of(Token::cyl());

}  // namespace

TEST(Dsl, ParsesSingleGenerator) {
  const Diagram d = parse_diagram("m");
  EXPECT_EQ(d, Diagram(2, 1, {{Token::p21()}}));
}

TEST(Dsl, ArityErrorNamesSlice) {
  try {
    parse_diagram("d ; id , m");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "arity-mismatch");
    EXPECT_NE(std::string(e.what()).find("slice 1"), std::string::npos);
  }
}

TEST(Dsl, TwistTorusCup) {
  const Diagram d = parse_diagram("tw(4 mod 3^4) ; tor(1) ; cup");
  EXPECT_EQ(d.in_arity(), 1u);
  EXPECT_EQ(d.out_arity(), 0u);
  EXPECT_EQ(d.slices()[0][0].unit(), PadicUnit(3, 4, 4));
  EXPECT_EQ(d.slices()[1][0].level(), Level(1));
}

TEST(Dsl, SyntaxErrorsCarryPosition) {
  for (const char* bad : {"m ;", "tw(2 mod 3^4)", "tor(0)", "foo", "tw(4 mod 3)"}) {
    try {
      parse_diagram(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "parse-error") << bad;
      EXPECT_NE(std::string(e.what()).find("column"), std::string::npos) << bad;
    }
  }
}

TEST(Dsl, RoundTripRandom) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Diagram d = random_diagram(rng, static_cast<unsigned>(rng() % 3) + 1, 5);
    EXPECT_EQ(parse_diagram(print_diagram(d)), d) << print_diagram(d);
  }
}

TEST(Compose, Sphere) {
  const Diagram s = compose(Diagram::of(Token::cap()), Diagram::of(Token::cup()));
  EXPECT_EQ(s.in_arity(), 0u);
  EXPECT_EQ(s.out_arity(), 0u);
  expect_shape(only(s), 0, Level::inf(), 0, 0);
}

TEST(Compose, HandleIsPuncturedTorus) {
  expect_shape(only(compose(Diagram::of(Token::p12()), Diagram::of(Token::p21()))), 1, Level::inf(), 1, 1);
}

TEST(Compose, IdentityIsNeutral) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Diagram d = random_diagram(rng, 2, 4);
    EXPECT_TRUE(diagrams_equal(compose(Diagram::identity(2), d), d));
    EXPECT_TRUE(diagrams_equal(compose(d, Diagram::identity(d.out_arity())), d));
  }
  EXPECT_THROW(compose(Diagram::of(Token::p21()), Diagram::of(Token::p21())), Error);
}

TEST(Tensor, Arities) {
  EXPECT_TRUE(diagrams_equal(tensor(kCyl, kCyl), Diagram::identity(2)));
  const Diagram t = tensor(Diagram::of(Token::p21()), Diagram::of(Token::cup()));
  EXPECT_EQ(t.in_arity(), 3u);
  EXPECT_EQ(t.out_arity(), 1u);
}

TEST(Tensor, InvariantIsUnion) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Diagram a = random_diagram(rng, 1, 3), b = random_diagram(rng, 1, 3);
    EXPECT_EQ(invariant_of(tensor(a, b)).size(), invariant_of(a).size() + invariant_of(b).size());
    unsigned genus = 0;
    for (const auto& c : invariant_of(tensor(a, b))) genus += c.g;
    for (const auto& c : invariant_of(a)) genus -= c.g;
    for (const auto& c : invariant_of(b)) genus -= c.g;
    EXPECT_EQ(genus, 0u);
  }
}

TEST(Invariant, Generators) {
  const auto c = only(kCyl);
  expect_shape(c, 0, Level::inf(), 1, 1);
  for (u64 t : c.twists) EXPECT_TRUE(c.twist_modulus == 0 || t == 1);
  for (Level r : {Level(1), Level(3), Level::inf()}) expect_shape(only(Diagram::of(Token::torus(r))), 1, r, 1, 1);
}

TEST(Invariant, KleinGluing) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const PadicUnit a = random_unit(rng), b = random_unit(rng);
    const Diagram d = Diagram(1, 1, {{Token::p12()}, {Token::twist(a), Token::twist(b)}, {Token::p21()}});
    expect_shape(only(d), 1, ratio_level(a, b), 1, 1);
  }
}

TEST(Invariant, TorusStackingTakesMinimum) {
  for (Level r : {Level(1), Level(2), Level::inf()})
    for (Level s : {Level(1), Level(3), Level::inf()})
      expect_shape(only(Diagram(1, 1, {{Token::torus(r)}, {Token::torus(s)}})), 2, min(r, s), 1, 1);
}

TEST(Invariant, GeneratorConstructionReproducesInvariant) {
  for (unsigned g = 0; g <= 3; ++g)
    for (Level r : {Level(1), Level(2), Level::inf()}) {
      if (g == 0 && !r.is_inf()) continue;
      for (unsigned n = 0; n <= 3; ++n)
        for (unsigned u = 0; u <= 3; ++u) expect_shape(only(generator_construction(g, r, n, u)), g, r, n, u);
    }
}

TEST(Invariant, GenusZeroIsOrientable) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i)
    for (const auto& c : invariant_of(random_diagram(rng, 2, 6)))
      if (c.g == 0) {
        EXPECT_TRUE(c.r.is_inf());
      }
}

TEST(Canonical, TwistInverse) {
  const PadicUnit a(3, 4, 10);
  EXPECT_TRUE(diagrams_equal(Diagram(1, 1, {{Token::twist(a)}, {Token::twist(a.inverse())}}), kCyl));
}

TEST(Canonical, TorusAbsorption) {
  const Diagram x = Diagram(1, 1, {{Token::torus(Level(2))}, {Token::torus(Level(1))}});
  const Diagram y = Diagram(1, 1, {{Token::torus(Level::inf())}, {Token::torus(Level(1))}});
  EXPECT_TRUE(diagrams_equal(x, y));
}

TEST(Canonical, IdempotentThroughRealize) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const Diagram d = random_diagram(rng, static_cast<unsigned>(rng() % 3), 5);
    const CanonicalForm cf = canonicalize(d);
    EXPECT_EQ(canonicalize(realize(cf)), cf) << print_diagram(d);
  }
}

TEST(Canonical, CompositionRespectsRewrites) {
  std::mt19937_64 rng(23);
  int rewrites = 0;
  for (int i = 0; i < 400; ++i) {
    const Diagram d1 = random_diagram(rng, 1, 4), d2 = random_diagram(rng, d1.out_arity(), 3);
    for (Rule rule : all_rules()) {
      const auto pos = find_matches(d1, rule, Direction::Forward);
      if (pos.empty()) continue;
      const Diagram e1 = apply_relation(d1, rule, pos.front());
      EXPECT_EQ(canonicalize(compose(e1, d2)), canonicalize(compose(d1, d2))) << rule_name(rule) << " " << print_diagram(d1);
      ++rewrites;
    }
  }
  EXPECT_GT(rewrites, 50);
}

TEST(Canonical, TwistOnOpenCylinderIsNotIdentity) {
  const Diagram start = Diagram::of(Token::twist(PadicUnit(3, 4, 4)));
  EXPECT_FALSE(diagrams_equal(start, kCyl));
  std::set<std::string> seen{print_diagram(start)};
  std::vector<Diagram> frontier{start};
  for (int depth = 0; depth < 4 && seen.size() < 20000; ++depth) {
    std::vector<Diagram> next;
    for (const Diagram& d : frontier)
      for (Rule rule : all_rules())
        for (Direction dir : {Direction::Forward, Direction::Backward})
          for (const Position& pos : find_matches(d, rule, dir)) {
            const Diagram e = apply_relation(d, rule, pos, dir);
            if (seen.insert(print_diagram(e)).second) next.push_back(e);
          }
    frontier = std::move(next);
  }
  EXPECT_FALSE(seen.count(print_diagram(kCyl)));
  EXPECT_FALSE(seen.count(print_diagram(Diagram::identity(1))));
}

TEST(Canonical, JsonHasStableFields) {
  const auto j = to_json(canonicalize(Diagram::of(Token::torus(Level(2)))));
  EXPECT_EQ(j.dump(), to_json(canonicalize(parse_diagram("tor(2)"))).dump());
  EXPECT_NE(j.dump().find("\"g\":1"), std::string::npos);
}
