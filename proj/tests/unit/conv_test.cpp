#include <gtest/gtest.h>

#include <random>

#include "conv.hpp"
#include "util.hpp"

namespace cfm {
namespace {

PartialQuotients random_quotients(std::mt19937_64& rng, size_t n, unsigned long max_a) {
  std::vector<mpz_class> t;
  t.emplace_back(static_cast<long>(rng() % 21) - 10);
  for (size_t i = 1; i < n; ++i) t.emplace_back(1 + rng() % max_a);
  return PartialQuotients::from_terms(std::move(t));
}

PartialQuotients pi2_quotients() {
  return PartialQuotients::from_terms({9, 1, 6, 1, 2, 47, 1, 8, 1, 1, 2, 2, 1, 1, 8, 3,
                                       1, 10, 5, 1, 3, 1, 2, 1, 1, 3, 15, 1, 1, 2, 2});
}

TEST(Convergents, PiSquaredTableValues) {
  const auto c = convergents_iter(pi2_quotients(), 29);
  ASSERT_EQ(c.size(), 30u);
  EXPECT_EQ(c[0].p, 9);
  EXPECT_EQ(c[0].q, 1);
  EXPECT_EQ(c[2].p, 69);
  EXPECT_EQ(c[2].q, 7);
  EXPECT_EQ(c[25].p, mpz_class("803300000159"));
  EXPECT_EQ(c[25].q, mpz_class("81391306836"));
  EXPECT_EQ(c[29].p, mpz_class("63780609438742"));
  EXPECT_EQ(c[29].q, mpz_class("6462326841763"));
  EXPECT_EQ(c[29].n, 29u);
}

TEST(Convergents, OutOfRange) {
  try {
    convergents_iter(pi2_quotients(), 31);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  EXPECT_THROW(convergents_matrix(pi2_quotients(), 31), Error);
  EXPECT_THROW(convergents_fast(pi2_quotients(), 31), Error);
}

TEST(Convergents, EnginesAgreeOnRandomLists) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng() % 60;
    const PartialQuotients pq = random_quotients(rng, n, trial % 2 ? 9 : 1000);
    const auto iter = convergents_iter(pq, n - 1);
    EXPECT_EQ(iter, convergents_matrix(pq, n - 1)) << trial;
    for (size_t k = 0; k < n; ++k) EXPECT_EQ(iter[k], convergents_fast(pq, k)) << trial << " " << k;
  }
}

TEST(Convergents, ProductTreeMatchesSequentialProduct) {
  std::mt19937_64 rng(11);
  for (size_t n : {1u, 2u, 3u, 7u, 64u, 65u, 1000u}) {
    const PartialQuotients pq = random_quotients(rng, n, 50);
    Mat2 seq = Mat2::identity();
    for (const auto& a : pq.terms) seq = multiply(seq, Mat2::quotient(a));
    EXPECT_EQ(product_tree(pq.terms), seq) << n;
  }
  EXPECT_EQ(product_tree({}), Mat2::identity());
}

TEST(Convergents, DeterminantIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const PartialQuotients pq = random_quotients(rng, 40, 20);
    const auto c = convergents_iter(pq, 39);
    EXPECT_TRUE(check_determinant(c));
    for (size_t k = 1; k < c.size(); ++k) {
      const mpz_class det = c[k].p * c[k - 1].q - c[k - 1].p * c[k].q;
      EXPECT_EQ(det, (k % 2 == 1) ? 1 : -1);
    }
  }
}

TEST(Convergents, DeterminantCheckDetectsTampering) {
  auto c = convergents_iter(pi2_quotients(), 10);
  c[5].p += 1;
  EXPECT_FALSE(check_determinant(c));
}

TEST(Convergents, TelescopingIdentity) {
  const PartialQuotients pq = pi2_quotients();
  const auto c = convergents_iter(pq, 30);
  for (size_t n = 0; n <= 30; ++n) EXPECT_EQ(telescoping_sum(pq, n), ratio(c[n].p, c[n].q)) << n;
}

TEST(Convergents, ConvergentsAreReduced) {
  std::mt19937_64 rng(5);
  const PartialQuotients pq = random_quotients(rng, 200, 100);
  for (const auto& c : convergents_iter(pq, 199)) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.p.get_mpz_t(), c.q.get_mpz_t());
    EXPECT_EQ(g, 1);
  }
}

TEST(Fibonacci, PowerOfQMatrix) {
  const Mat2 m = fib_power(10);
  EXPECT_EQ(m, (Mat2{89, 55, 55, 34}));
  EXPECT_EQ(fib_power(0), Mat2::identity());
  EXPECT_EQ(fib_power(1), (Mat2{1, 1, 1, 0}));
  const Mat2 big = fib_power(300);
  EXPECT_EQ(big.m01, mpz_class("222232244629420445529739893461909967206666939096499764990979600"));
  EXPECT_EQ(big.determinant(), 1);
}

TEST(Fibonacci, AllOnesConvergentsAreFibonacciRatios) {
  const PartialQuotients ones = PartialQuotients::from_terms(std::vector<mpz_class>(90, 1));
  const auto c = convergents_iter(ones, 89);
  for (size_t n = 0; n < 90; ++n) {
    const Mat2 f = fib_power(n + 1);  // [[F(n+2), F(n+1)], [F(n+1), F(n)]]
    EXPECT_EQ(c[n].p, f.m00) << n;
    EXPECT_EQ(c[n].q, f.m01) << n;
  }
}

TEST(WorkCounter, TreeDoesLessBitWorkThanRecurrence) {
  std::vector<mpz_class> ones(20000, 1);
  WorkCounter iter, fast;
  const Convergent a = convergent_at(Engine::kIter, ones, ones.size() - 1, &iter);
  const Convergent b = convergent_at(Engine::kFast, ones, ones.size() - 1, &fast);
  EXPECT_EQ(a, b);
  EXPECT_GT(iter.multiplications, 0u);
  EXPECT_LT(fast.bits * 10, iter.bits);
}

TEST(WorkCounter, Records) {
  WorkCounter w;
  w.record(mpz_class(255), mpz_class(1));
  EXPECT_EQ(w.multiplications, 1u);
  EXPECT_EQ(w.bits, 9u);
}

TEST(Engine, Names) {
  EXPECT_EQ(engine_name(Engine::kIter), "iter");
  EXPECT_EQ(engine_name(Engine::kMatrix), "matrix");
  EXPECT_EQ(engine_name(Engine::kFast), "fast");
}

}  // namespace
}  // namespace cfm
