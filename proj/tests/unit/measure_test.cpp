#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cf.hpp"
#include "measure.hpp"
#include "probe.hpp"
#include "util.hpp"

namespace cfm {
namespace {

using test::dec;

struct GoldenRow {
  size_t n;
  std::string p, q, mu, lagrange;
};

std::vector<GoldenRow> golden_table() {
  std::ifstream in(std::string(CFM_TEST_DATA_DIR) + "/pi2_measure30.csv");
  std::vector<GoldenRow> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    GoldenRow r;
    std::string n;
    std::getline(ss, n, ',');
    std::getline(ss, r.p, ',');
    std::getline(ss, r.q, ',');
    std::getline(ss, r.mu, ',');
    std::getline(ss, r.lagrange, ',');
    r.n = std::stoul(n);
    rows.push_back(r);
  }
  return rows;
}

TEST(Decimal6, ParseAndFormat) {
  EXPECT_EQ(Decimal6::parse("2.253500").str(), "2.253500");
  EXPECT_EQ(Decimal6::parse("48.243646").micros, 48243646);
  EXPECT_EQ(Decimal6::parse("1.5").str(), "1.500000");
  EXPECT_THROW(Decimal6::parse("1.0000001"), Error);
  EXPECT_LT(Decimal6::parse("2.0"), Decimal6::parse("2.000001"));
}

TEST(MeasureTable, ReproducesPiSquaredTable) {
  const auto golden = golden_table();
  ASSERT_EQ(golden.size(), 30u);
  const auto table = measure_table(ConstantSpec::parse("pi2"), 30, PrecisionBudget{60});
  ASSERT_EQ(table.size(), 30u);
  for (size_t i = 0; i < 30; ++i) {
    const MeasureRow& r = table[i];
    const GoldenRow& g = golden[i];
    EXPECT_EQ(r.display_n, g.n);
    EXPECT_EQ(r.p.get_str(), g.p) << g.n;
    EXPECT_EQ(r.q.get_str(), g.q) << g.n;
    EXPECT_EQ(r.mu ? r.mu->str() : "", g.mu) << g.n;
    EXPECT_EQ(r.lagrange.str(), g.lagrange) << g.n;
  }
}

TEST(MeasureTable, IndependentOfStartingBudget) {
  const auto a = measure_table(ConstantSpec::parse("pi2"), 30, PrecisionBudget{8});
  const auto b = measure_table(ConstantSpec::parse("pi2"), 30, PrecisionBudget{200});
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mu, b[i].mu) << i;
    EXPECT_EQ(a[i].lagrange, b[i].lagrange) << i;
  }
}

// Displayed mu is the upward rounding of a certified enclosure: it sits at or
// above the true value and less than one display unit above it.
TEST(MeasureTable, DisplayedMuIsUpwardRounding) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  const auto table = measure_table(pi2, 30, PrecisionBudget{60});
  const CertifiedReal alpha = eval_constant(pi2, PrecisionBudget{80});
  for (const MeasureRow& r : table) {
    if (!r.mu) continue;
    const CertifiedReal mu = mu_enclosure(alpha, Convergent{r.display_n - 1, r.p, r.q}, 300);
    EXPECT_GE(r.mu->value(), mu.hi()) << r.display_n;
    EXPECT_LT(r.mu->value() - mu.lo(), mpq_class(1, 1'000'000)) << r.display_n;
  }
}

TEST(MeasureTable, RationalOmitsExactFinalRow) {
  // 3.3 = [3; 3, 3]: rows 3/1 and 10/3; 33/10 itself has no mu.
  const auto t = measure_table(ConstantSpec::parse("lit:3.3"), 10, PrecisionBudget{10});
  ASSERT_EQ(t.size(), 2u);
  EXPECT_FALSE(t[0].mu);
  EXPECT_EQ(t[1].q, 3);
  EXPECT_TRUE(t[1].mu);
}

TEST(MeasureTable, ZeroRowsRejected) {
  EXPECT_THROW(measure_table(ConstantSpec::parse("pi2"), 0, PrecisionBudget{10}), Error);
}

TEST(MuN, UndefinedForUnitDenominator) {
  const Convergent c{0, 9, 1};
  EXPECT_FALSE(mu_n(ConstantSpec::parse("pi2"), c, PrecisionBudget{20}));
  EXPECT_THROW(mu_enclosure(CertifiedReal(mpq_class(9)), c, 64), Error);
}

TEST(MuN, ErrorCodes) {
  const Convergent half{1, 1, 2};
  try {
    mu_enclosure(CertifiedReal(mpq_class(1, 2)), half, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
  try {
    mu_enclosure(CertifiedReal(mpq_class(0), mpq_class(1)), half, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUncertified);
  }
}

// For the golden ratio |phi - p_n/q_n| = 1 / (q_n (phi q_n + q_(n-1))), which
// gives mu_n in closed form without any cancellation.
TEST(MuN, GoldenRatioClosedForm) {
  const ConstantSpec g = ConstantSpec::parse("golden");
  const PartialQuotients pq = surd_expand(g, 40).quotients;
  const auto convs = convergents_iter(pq, 39);
  const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
  for (size_t n = 2; n < 40; ++n) {
    const long double q = convs[n].q.get_d();
    const long double qm = convs[n - 1].q.get_d();
    const long double mu = std::log(q * (phi * q + qm)) / std::log(q);
    const auto ours = mu_n(g, convs[n], PrecisionBudget{30});
    ASSERT_TRUE(ours);
    const long double shown = static_cast<long double>(ours->micros.get_si()) / 1e6L;
    EXPECT_GE(shown, mu - 1e-12L) << n;
    EXPECT_LT(shown, mu + 1e-6L + 1e-12L) << n;
  }
}

TEST(Lagrange, UnitDenominatorAndTableValues) {
  EXPECT_EQ(lagrange(1, Decimal6::parse("5.0")).str(), "1.000000");
  EXPECT_EQ(lagrange(7, Decimal6::parse("2.253500")).str(), "1.637692");
  EXPECT_EQ(lagrange(mpz_class("81391306836"), Decimal6::parse("2.110031")).str(), "15.867255");
  EXPECT_EQ(lagrange(23, Decimal6::parse("2.000000")).str(), "1.000000");
  EXPECT_THROW(lagrange(0, Decimal6::parse("2.0")), Error);
}

// q^(mu-2) tracks 1/(q^2 |alpha - p/q|) = 1/(q |eps|) up to the effect of
// the displayed mu's rounding: q^delta with 0 <= delta < 1e-6, plus the
// 5e-7 display rounding of the column itself.
TEST(Lagrange, ConsistentWithResidualWithinRoundingEffect) {
  const ConstantSpec pi2 = ConstantSpec::parse("pi2");
  const auto table = measure_table(pi2, 30, PrecisionBudget{60});
  for (const MeasureRow& r : table) {
    if (!r.mu) continue;
    const CertifiedReal eps = residual(pi2, Convergent{r.display_n - 1, r.p, r.q}, PrecisionBudget{60});
    const long double direct = 1.0L / (r.q.get_d() * std::fabs(eps.midpoint().get_d()));
    const long double shown = r.lagrange.micros.get_d() / 1e6L;
    const long double slack = direct * std::expm1(1e-6L * std::log(r.q.get_d())) + 5e-7L + 1e-9L;
    EXPECT_GE(shown, direct - 5e-7L - 1e-9L) << r.display_n;
    EXPECT_LE(shown, direct + slack) << r.display_n;
  }
}

}  // namespace
}  // namespace cfm
