#include <gtest/gtest.h>

#include "cf.hpp"
#include "probe.hpp"
#include "util.hpp"

namespace cfm {
namespace {

using test::near_value;
using test::tenth_pow;

std::vector<Convergent> pi2_convergents(size_t count) {
  const PartialQuotients pq = expand(ConstantSpec::parse("pi2"), count, PrecisionBudget{40});
  return convergents_iter(pq, count - 1);
}

TEST(Residual, PiSquaredValues) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  const auto c = pi2_convergents(6);
  // pi^2 - 10, 7 pi^2 - 69, 23 pi^2 - 227
  EXPECT_TRUE(near_value(residual(pi2, c[1], PrecisionBudget{40}),
                         "-0.130395598910641381165509000123848864686300592759209373586651", tenth_pow(38)));
  EXPECT_TRUE(near_value(residual(pi2, c[2], PrecisionBudget{40}), "0.0872308076255103318414369991330579471958958507",
                         tenth_pow(38)));
  EXPECT_TRUE(near_value(residual(pi2, c[4], PrecisionBudget{40}), "0.000901225055248233193292997151476112215086366538", tenth_pow(38)));
}

TEST(Residual, ExactZeroForRationalEndpoint) {
  const CertifiedReal r = residual(ConstantSpec::parse("lit:0.5"), Convergent{1, 1, 2}, PrecisionBudget{10});
  EXPECT_TRUE(r.is_exact());
  EXPECT_EQ(r.lo(), 0);
}

TEST(SineProbe, DirectAndReducedFormsAgree) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  const auto convs = pi2_convergents(21);
  for (size_t n = 2; n < 20; ++n) {
    const ProbeRow r = sine_probe(pi2, convs[n], PrecisionBudget{80});
    ASSERT_TRUE(r.sin_direct);
    EXPECT_TRUE(r.sin_direct->intersects(r.sin_reduced)) << n;
    mpq_class diff = r.sin_direct->midpoint() - r.sin_reduced.midpoint();
    if (diff < 0) diff = -diff;
    EXPECT_LT(diff, tenth_pow(50)) << n;
    EXPECT_LE(r.sin_reduced.width(), tenth_pow(78)) << n;
    EXPECT_TRUE(r.envelope_ok) << n;
  }
}

TEST(SineProbe, RowThreeValues) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  const ProbeRow r = sine_probe(pi2, pi2_convergents(3)[2], PrecisionBudget{30});
  EXPECT_EQ(r.display_n, 3u);
  EXPECT_TRUE(near_value(r.sin_reduced, "0.270626411445088025956753370116286", tenth_pow(27)));
  EXPECT_EQ(format_scientific(r.epsilon.midpoint(), 12), "8.72308076255e-02");
}

TEST(SineProbe, DirectFormOnlyForPiSquared) {
  const ConstantSpec s = ConstantSpec::parse("sqrt:2");
  const PartialQuotients pq = expand(s, 5, PrecisionBudget{20});
  const ProbeRow r = sine_probe(s, convergents_iter(pq, 4)[3], PrecisionBudget{20});
  EXPECT_FALSE(r.sin_direct);
  EXPECT_TRUE(r.envelope_ok);
}

TEST(Envelope, InsideQuarterTurn) {
  EXPECT_TRUE(envelope_check(CertifiedReal(mpq_class(1))));
  EXPECT_TRUE(envelope_check(CertifiedReal(mpq_class(-1, 3))));
  EXPECT_TRUE(envelope_check(CertifiedReal(mpq_class(0))));
  EXPECT_TRUE(envelope_check(CertifiedReal(mpq_class(1, 1000), mpq_class(3, 2))));
  EXPECT_TRUE(envelope_check(CertifiedReal(tenth_pow(40))));
}

TEST(Envelope, StraddlingHalfPiIsClipped) {
  const CertifiedReal half_pi = pi_enclosure(300) * mpq_class(1, 2);
  EXPECT_TRUE(envelope_check(half_pi));
  EXPECT_TRUE(envelope_check(CertifiedReal(mpq_class(3, 2), mpq_class(8, 5))));
}

TEST(Envelope, BeyondHalfPiIsDomainError) {
  try {
    envelope_check(CertifiedReal(mpq_class(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
}

TEST(BoundCheck, ClassicalBoundsOnPiSquared) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  const auto convs = pi2_convergents(31);
  for (size_t n = 2; n <= 28; ++n) {
    const ProbeRow r = sine_probe(pi2, convs[n], PrecisionBudget{40});
    const auto f = bound_check(pi2, std::span(&r, 1), std::span(convs).subspan(n, 2));
    ASSERT_EQ(f.size(), 1u);
    EXPECT_TRUE(f[0].upper_ok) << n;
    EXPECT_TRUE(f[0].lower_ok) << n;
    ASSERT_TRUE(f[0].mu);
    // |alpha - p/q| < 1/q^2 follows, so mu_n > 2.
    EXPECT_GT(f[0].mu->value(), 2);
  }
}

TEST(BoundCheck, MissingSuccessorAndMisalignment) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  const auto convs = pi2_convergents(6);
  const ProbeRow r = sine_probe(pi2, convs[3], PrecisionBudget{20});
  try {
    bound_check(pi2, std::span(&r, 1), std::span(convs).subspan(3, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  EXPECT_THROW(bound_check(pi2, std::span(&r, 1), std::span(convs).subspan(1, 2)), Error);
}

TEST(ProbeTable, FlagsAndMu) {
  const auto t = probe_table(ConstantSpec::parse("pi2"), 10, PrecisionBudget{40});
  ASSERT_EQ(t.size(), 10u);
  for (const ProbeRow& r : t) {
    EXPECT_TRUE(r.bounds_checked);
    EXPECT_TRUE(r.upper_bound_ok && r.lower_bound_ok) << r.display_n;
    EXPECT_TRUE(r.envelope_ok) << r.display_n;
    EXPECT_EQ(r.mu.has_value(), r.q > 1) << r.display_n;
  }
  EXPECT_EQ(t[2].mu->str(), "2.253500");
}

}  // namespace
}  // namespace cfm
