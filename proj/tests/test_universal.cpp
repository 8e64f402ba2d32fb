#include <gtest/gtest.h>

#include "arith_tqft/frobenius.hpp"
#include "arith_tqft/universal.hpp"

using namespace arith_tqft;

namespace {

using US = UniversalScalar;
const US h(BivarPoly::h()), t(BivarPoly::t());
const UniversalElem one{US(1), US()}, x{US(), US(1)};

UniversalElem apply(const Matrix<US>& m, const UniversalElem& v) {
  Matrix<US> col(2, 1, US());
  col(0, 0) = v.a;
  col(1, 0) = v.b;
  const Matrix<US> r = m * col;
  return {r(0, 0), r(1, 0)};
}

}  // namespace

TEST(BivarPoly, Arithmetic) {
  const BivarPoly p = BivarPoly::h() * BivarPoly::h() + BivarPoly::monomial(4, 0, 1);
  EXPECT_EQ(p.str(), "h^2+4t");
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(BivarPoly::monomial(3, 1, 0).mod2(), BivarPoly::h());
  EXPECT_TRUE(BivarPoly::monomial(2, 1, 1).mod2().is_zero());
}

TEST(UniversalScalar, LevelSymbols) {
  for (unsigned r = 1; r <= 4; ++r) {
    const US a = US::symbol(Level(r));
    EXPECT_EQ(a * a, h * a);
    EXPECT_TRUE((a + a).is_zero());
    for (unsigned s = 1; s <= 4; ++s) {
      const US b = US::symbol(Level(s));
      EXPECT_EQ(a * b, h * (a + b - US::symbol(min(Level(r), Level(s)))));
    }
  }
  EXPECT_TRUE(US::symbol(Level::inf()).is_zero());
}

TEST(UniversalScalar, RingLaws) {
  std::vector<US> xs{US(3), h, t, US::symbol(Level(1)), US::symbol(Level(2)) * t + h, h * h - US(2) * t + US::symbol(Level(3))};
  for (const auto& a : xs)
    for (const auto& b : xs) {
      EXPECT_EQ(a * b, b * a);
      for (const auto& c : xs) {
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
}

TEST(Universal, Multiplication) {
  EXPECT_EQ(universal_mul(x, x), (UniversalElem{t, h}));
  const UniversalElem w{US(2) + h, t * US::symbol(Level(2))};
  EXPECT_EQ(universal_mul(one, w), w);
  const UniversalElem a{US::symbol(Level(2)), US()};
  EXPECT_EQ(universal_mul(a, a), (UniversalElem{h * US::symbol(Level(2)), US()}));
}

TEST(Universal, StructureMaps) {
  EXPECT_TRUE(universal_eps(universal_iota(US(1))).is_zero());
  EXPECT_EQ(universal_eps(x), US(1));
  EXPECT_EQ(universal_delta(one), (std::vector<US>{-h, US(1), US(1), US()}));
  EXPECT_EQ(universal_delta(x), (std::vector<US>{t, US(), US(), US(1)}));
  const UniversalAlgebra alg;
  EXPECT_EQ(apply(alg.mul() * alg.comul(), x), (UniversalElem{US(2) * t, h}));
  EXPECT_EQ(apply(alg.mul() * alg.comul(), one), (UniversalElem{-h, US(2)}));
}

TEST(Universal, KappaAndTwist) {
  const UniversalAlgebra alg(3, 6);
  Evaluator<UniversalAlgebra> ev(alg);
  for (Level r : {Level(1), Level(2), Level(4), Level::inf()}) {
    const UniversalElem k = universal_kappa(r);
    EXPECT_EQ(k, (UniversalElem{-h + US::symbol(r), US(2)}));
    const auto km = ev.kappa(r);
    EXPECT_EQ(km(0, 0), k.a);
    EXPECT_EQ(km(1, 0), k.b);
    for (Level s : {Level(1), Level(2), Level(4), Level::inf()})
      if (s >= r) {
        EXPECT_EQ(universal_phi(PadicUnit::of_level(3, 6, s), k), k);
      }
  }
  const PadicUnit a(3, 6, 4), b(3, 6, 7);
  EXPECT_EQ(universal_phi(a, x), universal_phi(b, x));
}

TEST(Universal, GenusThree) {
  const UniversalAlgebra alg;
  const auto m = evaluate_diagram(parse_diagram("cap; tor(inf); tor(inf); tor(inf); cup"), alg);
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_EQ(m(0, 0), h * h * US(2) + US(8) * t);
  EXPECT_EQ(m(0, 0).str(), "2h^2+8t");
}

TEST(Universal, HandleSquared) {
  const UniversalAlgebra alg;
  const auto md = alg.mul() * alg.comul();
  const auto expect = Matrix<US>::identity(2, US(), US(1)).scaled(h * h + US(4) * t);
  EXPECT_EQ(md * md, expect);
}

TEST(Universal, KappaProducts) {
  const UniversalAlgebra alg;
  const auto md = alg.mul() * alg.comul();
  for (unsigned r = 1; r <= 4; ++r)
    for (unsigned s = 1; s <= 4; ++s) {
      const auto lhs = universal_mul(universal_kappa(Level(r)), universal_kappa(Level(s)));
      const auto rhs = apply(md, universal_kappa(min(Level(r), Level(s))));
      EXPECT_TRUE((lhs.a - rhs.a).is_zero() && (lhs.b - rhs.b).is_zero()) << r << "," << s;
    }
}

TEST(Universal, FinitePrecisionMatchesLevels) {
  const UniversalAlgebra alg(5, 4);
  EXPECT_EQ(alg.twist(PadicUnit(5, 4, 6)), alg.twist(PadicUnit(5, 4, 11)));
  EXPECT_NE(alg.twist(PadicUnit(5, 4, 6)), alg.twist(PadicUnit(5, 4, 26)));
}
