#include <gtest/gtest.h>

#include "constant.hpp"
#include "util.hpp"

namespace cfm {
namespace {

using test::near_value;
using test::tenth_pow;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(ConstantParse, PiPowers) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  EXPECT_TRUE(pi2.is_pi_squared());
  EXPECT_EQ(pi2.name(), "pi2");
  EXPECT_TRUE(ConstantSpec::parse("pi^4/2").is_pi_squared());
  EXPECT_TRUE(ConstantSpec::parse("pi^2").is_pi_squared());
  EXPECT_FALSE(ConstantSpec::parse("pi3").is_pi_squared());
  EXPECT_FALSE(ConstantSpec::parse("pi").is_rational());
  const ConstantSpec root = ConstantSpec::parse("pi^2/4");
  const auto& half = std::get<PiPower>(root.kind());
  EXPECT_EQ(half.t, 1);
  EXPECT_EQ(half.s, 2);
}

TEST(ConstantParse, NamesRoundTrip) {
  for (const char* text : {"pi", "pi2", "pi3", "pi^1/2", "pi^-1", "sqrt:2", "golden", "surd:3,-2,7,5", "lit:0.5"}) {
    const ConstantSpec a = ConstantSpec::parse(text);
    const ConstantSpec b = ConstantSpec::parse(a.name());
    EXPECT_EQ(a.name(), b.name()) << text;
  }
}

TEST(ConstantParse, SurdsAndGolden) {
  const ConstantSpec g = ConstantSpec::parse("golden");
  ASSERT_TRUE(g.is_surd());
  EXPECT_EQ(g.as_surd().a, 1);
  EXPECT_EQ(g.as_surd().b, 1);
  EXPECT_EQ(g.as_surd().d, 5);
  EXPECT_EQ(g.as_surd().c, 2);
  EXPECT_TRUE(ConstantSpec::parse("sqrt:2").is_surd());
}

TEST(ConstantParse, Literals) {
  EXPECT_EQ(ConstantSpec::parse("lit:1.5e2").exact_value(), 150);
  EXPECT_EQ(ConstantSpec::parse("lit:-0.25").exact_value(), mpq_class(-1, 4));
  EXPECT_EQ(ConstantSpec::parse("lit:7").exact_value(), 7);
  EXPECT_TRUE(ConstantSpec::parse("lit:7").is_rational());
}

TEST(ConstantParse, Errors) {
  EXPECT_EQ(code_of([] { ConstantSpec::parse("bogus"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { ConstantSpec::parse("lit:abc"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { ConstantSpec::parse("lit:1.2.3"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { ConstantSpec::parse("sqrt:x"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { ConstantSpec::parse("sqrt:4"); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { ConstantSpec::parse("surd:1,0,5,2"); }), ErrorCode::kDomain);
  EXPECT_EQ(code_of([] { ConstantSpec::parse("surd:1,1,5,0"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { ConstantSpec::pi_power(0, 1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { ConstantSpec::pi_power(1, 0); }), ErrorCode::kInvalidArgument);
}

TEST(ConstantEval, ReferenceValues) {
  const PrecisionBudget b{50};
  EXPECT_TRUE(near_value(eval_constant(ConstantSpec::parse("pi2"), b),
                         "9.869604401089358618834490999876151135313699407240790626413349", tenth_pow(50)));
  EXPECT_TRUE(near_value(eval_constant(ConstantSpec::parse("pi3"), b),
                         "31.0062766802998201754763150671013952022252885658851076941445", tenth_pow(50)));
  EXPECT_TRUE(near_value(eval_constant(ConstantSpec::parse("golden"), b),
                         "1.61803398874989484820458683436563811772030917980576286213545", tenth_pow(50)));
  EXPECT_TRUE(near_value(eval_constant(ConstantSpec::parse("pi^1/2"), b),
                         "1.77245385090551602729816748334114518279754945612238712821381", tenth_pow(50)));
  EXPECT_TRUE(near_value(eval_constant(ConstantSpec::parse("pi^-1"), b),
                         "0.318309886183790671537767526745028724068919291480912897495335", tenth_pow(50)));
}

TEST(ConstantEval, WidthHonoursBudget) {
  for (int64_t d : {5, 30, 120, 400}) {
    const CertifiedReal x = eval_constant(ConstantSpec::parse("pi2"), PrecisionBudget{d});
    EXPECT_TRUE(x.width_within_digits(d)) << d;
  }
  EXPECT_TRUE(eval_constant(ConstantSpec::parse("lit:0.5"), PrecisionBudget{5}).is_exact());
}

TEST(ConstantEval, NarrowerBudgetsNest) {
  const ConstantSpec s = ConstantSpec::parse("surd:3,-2,7,5");
  const CertifiedReal coarse = eval_constant(s, PrecisionBudget{10});
  const CertifiedReal fine = eval_constant(s, PrecisionBudget{80});
  EXPECT_TRUE(coarse.intersects(fine));
  EXPECT_LT(fine.width(), coarse.width());
}

}  // namespace
}  // namespace cfm
