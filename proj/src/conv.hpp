#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cf.hpp"

namespace cfm {

// p_n / q_n in lowest terms. n is 0-based; Table-style display uses n + 1.
struct Convergent {
  size_t n = 0;
  mpz_class p;
  mpz_class q;

  friend bool operator==(const Convergent&, const Convergent&) = default;
};

struct Mat2 {
  mpz_class m00 = 1;
  mpz_class m01 = 0;
  mpz_class m10 = 0;
  mpz_class m11 = 1;

  static Mat2 identity() { return {}; }
  // [[a, 1], [1, 0]]
  static Mat2 quotient(const mpz_class& a) { return {a, 1, 1, 0}; }

  mpz_class determinant() const { return m00 * m11 - m01 * m10; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Big-integer multiplication tally. bits sums the operand bit lengths of
// every multiplication, which tracks cost under quasi-linear multiplication.
struct WorkCounter {
  uint64_t multiplications = 0;
  uint64_t bits = 0;

  void record(const mpz_class& a, const mpz_class& b);
};

Mat2 multiply(const Mat2& a, const Mat2& b, WorkCounter* work = nullptr);

enum class Engine { kIter, kMatrix, kFast };

std::string_view engine_name(Engine engine);

// Convergents 0..upto by p_n = a_n p_{n-1} + p_{n-2} (and likewise q_n) with
// seeds p_{-2}=0, p_{-1}=1, q_{-2}=1, q_{-1}=0. Throws kOutOfRange unless
// upto < certified_count.
std::vector<Convergent> convergents_iter(const PartialQuotients& pq, size_t upto);

// Convergents 0..upto from the running left-to-right product of M(a_i).
std::vector<Convergent> convergents_matrix(const PartialQuotients& pq, size_t upto);

// Single convergent from a balanced product tree over M(a_0) ... M(a_n).
Convergent convergents_fast(const PartialQuotients& pq, size_t n, WorkCounter* work = nullptr);

std::vector<Convergent> convergents(Engine engine, const PartialQuotients& pq, size_t upto);

// Final convergent only, without materializing the sequence.
Convergent convergent_at(Engine engine, std::span<const mpz_class> terms, size_t n,
                         WorkCounter* work = nullptr);

// Product M(a_0) ... M(a_{k-1}) by pairing neighbours level by level.
Mat2 product_tree(std::span<const mpz_class> terms, WorkCounter* work = nullptr);

// p_n q_{n-1} - p_{n-1} q_n == (-1)^(n-1) for each consecutive pair.
bool check_determinant(std::span<const Convergent> seq);

// a_0 + sum_{0 <= k < n} (-1)^k / (q_k q_{k+1}), exactly.
mpq_class telescoping_sum(const PartialQuotients& pq, size_t n);

// [[1,1],[1,0]]^n = [[F_{n+1}, F_n], [F_n, F_{n-1}]] by repeated squaring.
Mat2 fib_power(uint64_t n);

}  // namespace cfm
