#include "conv.hpp"

#include <utility>

namespace cfm {
namespace {

void check_range(const PartialQuotients& pq, size_t n) {
  if (n >= pq.certified_count || n >= pq.terms.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "convergent index " + std::to_string(n) + " needs more than the " +
                    std::to_string(pq.certified_count) + " certified quotients");
  }
}

mpz_class mul(const mpz_class& a, const mpz_class& b, WorkCounter* work) {
  if (work != nullptr) work->record(a, b);
  return a * b;
}

Convergent iter_at(std::span<const mpz_class> terms, size_t n, WorkCounter* work) {
  mpz_class p_prev = 1, p_prev2 = 0;
  mpz_class q_prev = 0, q_prev2 = 1;
  for (size_t i = 0; i <= n; ++i) {
    mpz_class p = mul(terms[i], p_prev, work) + p_prev2;
    mpz_class q = mul(terms[i], q_prev, work) + q_prev2;
    p_prev2 = std::move(p_prev);
    q_prev2 = std::move(q_prev);
    p_prev = std::move(p);
    q_prev = std::move(q);
  }
  return {n, std::move(p_prev), std::move(q_prev)};
}

Convergent matrix_at(std::span<const mpz_class> terms, size_t n, WorkCounter* work) {
  Mat2 product;
  for (size_t i = 0; i <= n; ++i) product = multiply(product, Mat2::quotient(terms[i]), work);
  return {n, std::move(product.m00), std::move(product.m10)};
}

}  // namespace

void WorkCounter::record(const mpz_class& a, const mpz_class& b) {
  ++multiplications;
  bits += mpz_sizeinbase(a.get_mpz_t(), 2) + mpz_sizeinbase(b.get_mpz_t(), 2);
}

Mat2 multiply(const Mat2& a, const Mat2& b, WorkCounter* work) {
  return {mul(a.m00, b.m00, work) + mul(a.m01, b.m10, work),
          mul(a.m00, b.m01, work) + mul(a.m01, b.m11, work),
          mul(a.m10, b.m00, work) + mul(a.m11, b.m10, work),
          mul(a.m10, b.m01, work) + mul(a.m11, b.m11, work)};
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::kIter: return "iter";
    case Engine::kMatrix: return "matrix";
    case Engine::kFast: return "fast";
  }
  return "?";
}

std::vector<Convergent> convergents_iter(const PartialQuotients& pq, size_t upto) {
  check_range(pq, upto);
  std::vector<Convergent> out;
  out.reserve(upto + 1);
  mpz_class p_prev = 1, p_prev2 = 0;
  mpz_class q_prev = 0, q_prev2 = 1;
  for (size_t n = 0; n <= upto; ++n) {
    const mpz_class& a = pq.terms[n];
    mpz_class p = a * p_prev + p_prev2;
    mpz_class q = a * q_prev + q_prev2;
    out.push_back({n, p, q});
    p_prev2 = std::move(p_prev);
    q_prev2 = std::move(q_prev);
    p_prev = std::move(p);
    q_prev = std::move(q);
  }
  return out;
}

std::vector<Convergent> convergents_matrix(const PartialQuotients& pq, size_t upto) {
  check_range(pq, upto);
  std::vector<Convergent> out;
  out.reserve(upto + 1);
  Mat2 product;
  for (size_t n = 0; n <= upto; ++n) {
    product = multiply(product, Mat2::quotient(pq.terms[n]));
    // Columns: (p_n, q_n) and (p_{n-1}, q_{n-1}).
    out.push_back({n, product.m00, product.m10});
  }
  return out;
}

Mat2 product_tree(std::span<const mpz_class> terms, WorkCounter* work) {
  if (terms.empty()) return Mat2::identity();
  std::vector<Mat2> level;
  level.reserve(terms.size());
  for (const mpz_class& a : terms) level.push_back(Mat2::quotient(a));
  while (level.size() > 1) {
    std::vector<Mat2> next;
    next.reserve((level.size() + 1) / 2);
    for (size_t i = 0; i < level.size(); i += 2) {
      if (i + 1 < level.size()) {
        next.push_back(multiply(level[i], level[i + 1], work));
      } else {
        next.push_back(std::move(level[i]));
      }
    }
    level = std::move(next);
  }
  return std::move(level.front());
}

Convergent convergents_fast(const PartialQuotients& pq, size_t n, WorkCounter* work) {
  check_range(pq, n);
  Mat2 product = product_tree(std::span(pq.terms).first(n + 1), work);
  return {n, std::move(product.m00), std::move(product.m10)};
}

std::vector<Convergent> convergents(Engine engine, const PartialQuotients& pq, size_t upto) {
  switch (engine) {
    case Engine::kIter: return convergents_iter(pq, upto);
    case Engine::kMatrix: return convergents_matrix(pq, upto);
    case Engine::kFast: break;
  }
  check_range(pq, upto);
  std::vector<Convergent> out;
  out.reserve(upto + 1);
  for (size_t n = 0; n <= upto; ++n) out.push_back(convergents_fast(pq, n));
  return out;
}

Convergent convergent_at(Engine engine, std::span<const mpz_class> terms, size_t n, WorkCounter* work) {
  if (n >= terms.size()) throw Error(ErrorCode::kOutOfRange, "convergent index beyond the quotient list");
  switch (engine) {
    case Engine::kIter: return iter_at(terms, n, work);
    case Engine::kMatrix: return matrix_at(terms, n, work);
    case Engine::kFast: break;
  }
  Mat2 product = product_tree(terms.first(n + 1), work);
  return {n, std::move(product.m00), std::move(product.m10)};
}

bool check_determinant(std::span<const Convergent> seq) {
  for (size_t i = 1; i < seq.size(); ++i) {
    const Convergent& prev = seq[i - 1];
    const Convergent& cur = seq[i];
    if (cur.n != prev.n + 1) return false;
    const mpz_class expected = ((cur.n - 1) % 2 == 0) ? 1 : -1;
    if (cur.p * prev.q - prev.p * cur.q != expected) return false;
  }
  return true;
}

mpq_class telescoping_sum(const PartialQuotients& pq, size_t n) {
  check_range(pq, n);
  mpq_class sum{pq.terms[0]};
  if (n == 0) return sum;
  const std::vector<Convergent> seq = convergents_iter(pq, n);
  for (size_t k = 0; k < n; ++k) {
    const mpq_class term(mpz_class(1), seq[k].q * seq[k + 1].q);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

Mat2 fib_power(uint64_t n) {
  Mat2 result;
  Mat2 base = Mat2::quotient(1);
  for (; n != 0; n >>= 1) {
    if (n & 1) result = multiply(result, base);
    if (n > 1) base = multiply(base, base);
  }
  return result;
}

}  // namespace cfm
