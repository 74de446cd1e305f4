#include "cfm/cfm.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "bench.hpp"
#include "cf.hpp"
#include "constant.hpp"
#include "conv.hpp"
#include "kernel.hpp"
#include "measure.hpp"
#include "probe.hpp"
#include "verify.hpp"

struct cfm_constant {
  cfm::ConstantSpec spec;
  std::string name;
};

struct cfm_real {
  cfm::CertifiedReal value;
  std::string lo, hi, mid;
};

struct cfm_quotients {
  cfm::PartialQuotients pq;
  std::vector<std::string> text;
};

struct cfm_convergents {
  std::vector<cfm::Convergent> seq;
  std::vector<std::string> p, q;
};

struct cfm_table {
  struct Row {
    size_t n;
    std::string p, q, lagrange;
    std::optional<std::string> mu;
  };
  std::vector<Row> rows;
};

struct cfm_probe {
  struct Row {
    cfm::ProbeRow raw;
    std::string p, q, epsilon, sin_reduced, sin_unscaled;
    std::optional<std::string> sin_direct, mu;
    int64_t width_exponent;
    int sines_intersect;
  };
  std::vector<Row> rows;
};

struct cfm_report {
  cfm::VerifyReport report;
};

struct cfm_bench {
  cfm::BenchReport report;
  std::string source;
};

namespace {

thread_local std::string g_last_error;

cfm_status to_status(cfm::ErrorCode code) {
  switch (code) {
    case cfm::ErrorCode::kInvalidArgument: return CFM_ERR_INVALID_ARGUMENT;
    case cfm::ErrorCode::kParse: return CFM_ERR_PARSE;
    case cfm::ErrorCode::kPrecisionCap: return CFM_ERR_PRECISION_CAP;
    case cfm::ErrorCode::kUncertified: return CFM_ERR_UNCERTIFIED;
    case cfm::ErrorCode::kOutOfRange: return CFM_ERR_OUT_OF_RANGE;
    case cfm::ErrorCode::kDomain: return CFM_ERR_DOMAIN;
  }
  return CFM_ERR_INTERNAL;
}

cfm_status fail(cfm_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename F>
cfm_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return CFM_OK;
  } catch (const cfm::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CFM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CFM_ERR_INTERNAL, e.what());
  }
}

#define CFM_REQUIRE(ptr)                                                   \
  do {                                                                     \
    if ((ptr) == nullptr) return fail(CFM_ERR_NULL_POINTER, #ptr " is NULL"); \
  } while (0)

cfm::PrecisionBudget to_budget(const cfm_budget& b) {
  cfm::PrecisionBudget out;
  out.digits = b.digits;
  out.guard = b.guard;
  out.max_digits = static_cast<int64_t>(b.max_digits);
  out.validate();
  return out;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cfm::Engine to_engine(cfm_engine e) {
  switch (e) {
    case CFM_ENGINE_ITER: return cfm::Engine::kIter;
    case CFM_ENGINE_MATRIX: return cfm::Engine::kMatrix;
    case CFM_ENGINE_FAST: return cfm::Engine::kFast;
  }
  throw cfm::Error(cfm::ErrorCode::kInvalidArgument, "unknown engine");
}

cfm_engine from_engine(cfm::Engine e) {
  switch (e) {
    case cfm::Engine::kIter: return CFM_ENGINE_ITER;
    case cfm::Engine::kMatrix: return CFM_ENGINE_MATRIX;
    case cfm::Engine::kFast: return CFM_ENGINE_FAST;
  }
  return CFM_ENGINE_ITER;
}

mpz_class parse_integer(const char* text, const char* what) {
  mpz_class v;
  if (v.set_str(text, 10) != 0) {
    throw cfm::Error(cfm::ErrorCode::kParse, std::string("not an integer for ") + what + ": " + text);
  }
  return v;
}

std::unique_ptr<cfm_constant> wrap(cfm::ConstantSpec spec) {
  auto out = std::make_unique<cfm_constant>(cfm_constant{spec, spec.name()});
  return out;
}

std::unique_ptr<cfm_quotients> wrap(cfm::PartialQuotients pq) {
  auto out = std::make_unique<cfm_quotients>();
  out->pq = std::move(pq);
  for (const auto& t : out->pq.terms) out->text.push_back(t.get_str());
  return out;
}

std::unique_ptr<cfm_convergents> wrap(std::vector<cfm::Convergent> seq) {
  auto out = std::make_unique<cfm_convergents>();
  out->seq = std::move(seq);
  for (const auto& c : out->seq) {
    out->p.push_back(c.p.get_str());
    out->q.push_back(c.q.get_str());
  }
  return out;
}

constexpr int kScientificDigits = 12;

}  // namespace

extern "C" {

const char* cfm_version(void) { return "0.1.0"; }

const char* cfm_status_string(cfm_status status) {
  switch (status) {
    case CFM_OK: return "ok";
    case CFM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CFM_ERR_PARSE: return "parse error";
    case CFM_ERR_PRECISION_CAP: return "precision cap reached";
    case CFM_ERR_UNCERTIFIED: return "uncertified";
    case CFM_ERR_OUT_OF_RANGE: return "out of range";
    case CFM_ERR_DOMAIN: return "domain error";
    case CFM_ERR_NULL_POINTER: return "null pointer";
    case CFM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cfm_last_error(void) { return g_last_error.c_str(); }

cfm_budget cfm_budget_default(uint32_t digits) {
  return cfm_budget{digits, static_cast<uint32_t>(cfm::PrecisionBudget::kDefaultGuard),
                    static_cast<uint64_t>(cfm::PrecisionBudget::kDefaultMaxDigits)};
}

void cfm_string_free(char* s) { std::free(s); }

// ---- constants

cfm_status cfm_constant_parse(const char* text, cfm_constant** out) {
  CFM_REQUIRE(text);
  CFM_REQUIRE(out);
  return guarded([&] { *out = wrap(cfm::ConstantSpec::parse(text)).release(); });
}

cfm_status cfm_constant_pi_power(int64_t t, int64_t s, cfm_constant** out) {
  CFM_REQUIRE(out);
  return guarded([&] { *out = wrap(cfm::ConstantSpec::pi_power(t, s)).release(); });
}

cfm_status cfm_constant_surd(int64_t a, int64_t b, int64_t d, int64_t c, cfm_constant** out) {
  CFM_REQUIRE(out);
  return guarded([&] {
    auto z = [](int64_t v) { return mpz_class(std::to_string(v)); };
    *out = wrap(cfm::ConstantSpec::surd(z(a), z(b), z(d), z(c))).release();
  });
}

cfm_status cfm_constant_literal(const char* decimal, cfm_constant** out) {
  CFM_REQUIRE(decimal);
  CFM_REQUIRE(out);
  return guarded([&] { *out = wrap(cfm::ConstantSpec::decimal_literal(decimal)).release(); });
}

const char* cfm_constant_name(const cfm_constant* c) { return c ? c->name.c_str() : ""; }

int cfm_constant_is_rational(const cfm_constant* c) { return c && c->spec.is_rational() ? 1 : 0; }

void cfm_constant_free(cfm_constant* c) { delete c; }

// ---- certified reals

static cfm_real* make_real(cfm::CertifiedReal v) {
  auto* r = new cfm_real{std::move(v), {}, {}, {}};
  r->lo = r->value.lo().get_str();
  r->hi = r->value.hi().get_str();
  return r;
}

cfm_status cfm_constant_eval(const cfm_constant* c, cfm_budget budget, cfm_real** out) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(out);
  return guarded([&] { *out = make_real(cfm::eval_constant(c->spec, to_budget(budget))); });
}

cfm_status cfm_real_sin(const cfm_real* x, cfm_budget budget, cfm_real** out) {
  CFM_REQUIRE(x);
  CFM_REQUIRE(out);
  return guarded([&] { *out = make_real(cfm::sin_certified(x->value, to_budget(budget))); });
}

const char* cfm_real_lo(const cfm_real* x) { return x ? x->lo.c_str() : ""; }
const char* cfm_real_hi(const cfm_real* x) { return x ? x->hi.c_str() : ""; }

const char* cfm_real_midpoint(cfm_real* x, int significant) {
  if (x == nullptr) return "";
  if (significant < 1) significant = 1;
  if (significant > 1000) significant = 1000;
  x->mid = cfm::format_scientific(x->value.midpoint(), significant);
  return x->mid.c_str();
}

int cfm_real_width_within(const cfm_real* x, int64_t digits) {
  return x && x->value.width_within_digits(digits) ? 1 : 0;
}

void cfm_real_free(cfm_real* x) { delete x; }

// ---- continued fractions

cfm_status cfm_expand(const cfm_constant* c, size_t want_terms, cfm_budget budget, cfm_quotients** out) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(out);
  return guarded([&] { *out = wrap(cfm::expand(c->spec, want_terms, to_budget(budget))).release(); });
}

cfm_status cfm_certify(const cfm_constant* c, size_t want_terms, cfm_budget budget, size_t* certified_count) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(certified_count);
  return guarded([&] { *certified_count = cfm::certify(c->spec, want_terms, to_budget(budget)); });
}

cfm_status cfm_surd_expand(const cfm_constant* c, size_t want_terms, cfm_quotients** out, size_t* preperiod,
                           size_t* period) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(out);
  return guarded([&] {
    cfm::SurdExpansion e = cfm::surd_expand(c->spec, want_terms);
    if (preperiod) *preperiod = e.period.preperiod;
    if (period) *period = e.period.length;
    *out = wrap(std::move(e.quotients)).release();
  });
}

cfm_status cfm_quotients_from_int64(const int64_t* terms, size_t count, cfm_quotients** out) {
  CFM_REQUIRE(out);
  if (count > 0) CFM_REQUIRE(terms);
  return guarded([&] {
    std::vector<mpz_class> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) v.emplace_back(std::to_string(terms[i]));
    *out = wrap(cfm::PartialQuotients::from_terms(std::move(v))).release();
  });
}

size_t cfm_quotients_count(const cfm_quotients* q) { return q ? q->text.size() : 0; }

const char* cfm_quotients_term(const cfm_quotients* q, size_t index) {
  if (q == nullptr || index >= q->text.size()) return nullptr;
  return q->text[index].c_str();
}

int cfm_quotients_terminated(const cfm_quotients* q) { return q && q->pq.terminated ? 1 : 0; }

void cfm_quotients_free(cfm_quotients* q) { delete q; }

// ---- convergents

cfm_status cfm_convergents_compute(const cfm_quotients* q, size_t upto, cfm_engine engine, cfm_convergents** out) {
  CFM_REQUIRE(q);
  CFM_REQUIRE(out);
  return guarded([&] { *out = wrap(cfm::convergents(to_engine(engine), q->pq, upto)).release(); });
}

cfm_status cfm_convergent_fast(const cfm_quotients* q, size_t n, cfm_convergents** out) {
  CFM_REQUIRE(q);
  CFM_REQUIRE(out);
  return guarded([&] { *out = wrap(std::vector<cfm::Convergent>{cfm::convergents_fast(q->pq, n)}).release(); });
}

size_t cfm_convergents_count(const cfm_convergents* c) { return c ? c->seq.size() : 0; }

cfm_status cfm_convergents_get(const cfm_convergents* c, size_t i, size_t* n, const char** p, const char** q) {
  CFM_REQUIRE(c);
  if (i >= c->seq.size()) return fail(CFM_ERR_OUT_OF_RANGE, "convergent index out of range");
  if (n) *n = c->seq[i].n;
  if (p) *p = c->p[i].c_str();
  if (q) *q = c->q[i].c_str();
  return CFM_OK;
}

int cfm_convergents_check_determinant(const cfm_convergents* c) {
  if (c == nullptr) return 0;
  try {
    return cfm::check_determinant(c->seq) ? 1 : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

void cfm_convergents_free(cfm_convergents* c) { delete c; }

cfm_status cfm_telescoping_sum(const cfm_quotients* q, size_t n, char** numerator, char** denominator) {
  CFM_REQUIRE(q);
  CFM_REQUIRE(numerator);
  CFM_REQUIRE(denominator);
  return guarded([&] {
    const mpq_class s = cfm::telescoping_sum(q->pq, n);
    char* num = dup(s.get_num().get_str());
    try {
      *denominator = dup(s.get_den().get_str());
    } catch (...) {
      std::free(num);
      throw;
    }
    *numerator = num;
  });
}

cfm_status cfm_fib_power(uint64_t n, char* entries[4]) {
  CFM_REQUIRE(entries);
  return guarded([&] {
    const cfm::Mat2 m = cfm::fib_power(n);
    const mpz_class* src[4] = {&m.m00, &m.m01, &m.m10, &m.m11};
    char* tmp[4] = {nullptr, nullptr, nullptr, nullptr};
    try {
      for (int i = 0; i < 4; ++i) tmp[i] = dup(src[i]->get_str());
    } catch (...) {
      for (char* t : tmp) std::free(t);
      throw;
    }
    for (int i = 0; i < 4; ++i) entries[i] = tmp[i];
  });
}

// ---- measure table

cfm_status cfm_measure_table(const cfm_constant* c, size_t rows, cfm_budget budget, cfm_table** out) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(out);
  return guarded([&] {
    auto t = std::make_unique<cfm_table>();
    for (const cfm::MeasureRow& r : cfm::measure_table(c->spec, rows, to_budget(budget))) {
      cfm_table::Row row{r.display_n, r.p.get_str(), r.q.get_str(), r.lagrange.str(), std::nullopt};
      if (r.mu) row.mu = r.mu->str();
      t->rows.push_back(std::move(row));
    }
    *out = t.release();
  });
}

size_t cfm_table_rows(const cfm_table* t) { return t ? t->rows.size() : 0; }

cfm_status cfm_table_row(const cfm_table* t, size_t i, cfm_measure_row* out) {
  CFM_REQUIRE(t);
  CFM_REQUIRE(out);
  if (i >= t->rows.size()) return fail(CFM_ERR_OUT_OF_RANGE, "table row out of range");
  const auto& r = t->rows[i];
  *out = cfm_measure_row{r.n, r.p.c_str(), r.q.c_str(), r.mu ? r.mu->c_str() : nullptr, r.lagrange.c_str()};
  return CFM_OK;
}

void cfm_table_free(cfm_table* t) { delete t; }

cfm_status cfm_mu_n(const cfm_constant* c, const char* p, const char* q, cfm_budget budget, char** mu) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(p);
  CFM_REQUIRE(q);
  CFM_REQUIRE(mu);
  return guarded([&] {
    const cfm::Convergent conv{0, parse_integer(p, "p"), parse_integer(q, "q")};
    if (conv.q < 1) throw cfm::Error(cfm::ErrorCode::kDomain, "q must be positive");
    const auto v = cfm::mu_n(c->spec, conv, to_budget(budget));
    *mu = v ? dup(v->str()) : nullptr;
  });
}

cfm_status cfm_mu_enclosure(const cfm_constant* c, const char* p, const char* q, cfm_budget budget, char** lo,
                            char** hi) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(p);
  CFM_REQUIRE(q);
  CFM_REQUIRE(lo);
  CFM_REQUIRE(hi);
  return guarded([&] {
    const cfm::Convergent conv{0, parse_integer(p, "p"), parse_integer(q, "q")};
    const cfm::PrecisionBudget b = to_budget(budget);
    const cfm::CertifiedReal alpha = cfm::eval_constant(c->spec, b);
    const cfm::CertifiedReal mu = cfm::mu_enclosure(alpha, conv, cfm::bits_for_digits(b.working_digits()));
    char* l = dup(mu.lo().get_str());
    try {
      *hi = dup(mu.hi().get_str());
    } catch (...) {
      std::free(l);
      throw;
    }
    *lo = l;
  });
}

cfm_status cfm_lagrange(const char* q, const char* mu, char** out) {
  CFM_REQUIRE(q);
  CFM_REQUIRE(mu);
  CFM_REQUIRE(out);
  return guarded([&] {
    const mpz_class qq = parse_integer(q, "q");
    if (qq < 1) throw cfm::Error(cfm::ErrorCode::kDomain, "q must be positive");
    *out = dup(cfm::lagrange(qq, cfm::Decimal6::parse(mu)).str());
  });
}

// ---- sine probes

cfm_status cfm_probe_table(const cfm_constant* c, size_t rows, cfm_budget budget, cfm_probe** out) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(out);
  return guarded([&] {
    auto t = std::make_unique<cfm_probe>();
    for (cfm::ProbeRow& r : cfm::probe_table(c->spec, rows, to_budget(budget))) {
      cfm_probe::Row row;
      row.p = r.p.get_str();
      row.q = r.q.get_str();
      row.epsilon = cfm::format_scientific(r.epsilon.midpoint(), kScientificDigits);
      row.sin_reduced = cfm::format_scientific(r.sin_reduced.midpoint(), kScientificDigits);
      row.sin_unscaled = cfm::format_scientific(r.sin_unscaled.midpoint(), kScientificDigits);
      mpq_class widest = std::max(r.sin_reduced.width(), r.sin_unscaled.width());
      row.sines_intersect = -1;
      if (r.sin_direct) {
        row.sin_direct = cfm::format_scientific(r.sin_direct->midpoint(), kScientificDigits);
        widest = std::max(widest, r.sin_direct->width());
        row.sines_intersect = r.sin_direct->intersects(r.sin_reduced) ? 1 : 0;
      }
      // Smallest e with widest < 10^e.
      row.width_exponent = widest == 0 ? INT64_MIN : cfm::floor_log10(widest) + 1;
      if (r.mu) row.mu = r.mu->str();
      row.raw = std::move(r);
      t->rows.push_back(std::move(row));
    }
    *out = t.release();
  });
}

size_t cfm_probe_rows(const cfm_probe* p) { return p ? p->rows.size() : 0; }

cfm_status cfm_probe_row_get(const cfm_probe* p, size_t i, cfm_probe_row* out) {
  CFM_REQUIRE(p);
  CFM_REQUIRE(out);
  if (i >= p->rows.size()) return fail(CFM_ERR_OUT_OF_RANGE, "probe row out of range");
  const auto& r = p->rows[i];
  *out = cfm_probe_row{r.raw.display_n,
                       r.p.c_str(),
                       r.q.c_str(),
                       r.epsilon.c_str(),
                       r.sin_direct ? r.sin_direct->c_str() : nullptr,
                       r.sin_reduced.c_str(),
                       r.sin_unscaled.c_str(),
                       r.width_exponent,
                       r.sines_intersect,
                       r.raw.bounds_checked ? 1 : 0,
                       r.raw.upper_bound_ok ? 1 : 0,
                       r.raw.lower_bound_ok ? 1 : 0,
                       r.raw.envelope_ok ? 1 : 0,
                       r.mu ? r.mu->c_str() : nullptr};
  return CFM_OK;
}

int cfm_probe_sines_agree(const cfm_probe* p, size_t i, int64_t digits) {
  if (p == nullptr || i >= p->rows.size() || !p->rows[i].raw.sin_direct || digits < 0) return 0;
  const auto& r = p->rows[i].raw;
  mpq_class diff = r.sin_direct->midpoint() - r.sin_reduced.midpoint();
  if (diff < 0) diff = -diff;
  return diff < mpq_class(1, cfm::pow10(static_cast<unsigned long>(digits))) ? 1 : 0;
}

void cfm_probe_free(cfm_probe* p) { delete p; }

// ---- verification

cfm_status cfm_verify(const cfm_constant* c, size_t terms, cfm_budget budget, cfm_report** out) {
  CFM_REQUIRE(c);
  CFM_REQUIRE(out);
  return guarded([&] { *out = new cfm_report{cfm::verify(c->spec, terms, to_budget(budget))}; });
}

size_t cfm_report_checks(const cfm_report* r) { return r ? r->report.checks.size() : 0; }

cfm_status cfm_report_check(const cfm_report* r, size_t i, const char** name, int* passed, const char** detail) {
  CFM_REQUIRE(r);
  if (i >= r->report.checks.size()) return fail(CFM_ERR_OUT_OF_RANGE, "check index out of range");
  const auto& c = r->report.checks[i];
  if (name) *name = c.name.c_str();
  if (passed) *passed = c.passed ? 1 : 0;
  if (detail) *detail = c.counterexample.c_str();
  return CFM_OK;
}

size_t cfm_report_notes(const cfm_report* r) { return r ? r->report.notes.size() : 0; }

const char* cfm_report_note(const cfm_report* r, size_t i) {
  if (r == nullptr || i >= r->report.notes.size()) return nullptr;
  return r->report.notes[i].c_str();
}

int cfm_report_all_passed(const cfm_report* r) { return r && r->report.all_passed() ? 1 : 0; }

void cfm_report_free(cfm_report* r) { delete r; }

// ---- benchmark

cfm_status cfm_bench_run_all(const char* source, uint64_t seed, size_t max_terms, cfm_bench** out) {
  CFM_REQUIRE(source);
  CFM_REQUIRE(out);
  return guarded([&] {
    const cfm::QuotientSource src = cfm::QuotientSource::parse(source, seed);
    *out = new cfm_bench{cfm::bench(src, max_terms), src.name()};
  });
}

const char* cfm_bench_source(const cfm_bench* b) { return b ? b->source.c_str() : ""; }

size_t cfm_bench_sizes(const cfm_bench* b) { return b ? b->report.sizes.size() : 0; }

cfm_status cfm_bench_get(const cfm_bench* b, size_t size_index, size_t engine_index, cfm_bench_run* out) {
  CFM_REQUIRE(b);
  CFM_REQUIRE(out);
  if (size_index >= b->report.sizes.size()) return fail(CFM_ERR_OUT_OF_RANGE, "bench size out of range");
  const auto& size = b->report.sizes[size_index];
  if (engine_index >= size.runs.size()) return fail(CFM_ERR_OUT_OF_RANGE, "engine index out of range");
  const auto& run = size.runs[engine_index];
  *out = cfm_bench_run{size.terms, from_engine(run.engine), run.wall_ms, run.work.multiplications, run.work.bits};
  return CFM_OK;
}

cfm_status cfm_bench_size_info(const cfm_bench* b, size_t size_index, size_t* terms, size_t* p_bits,
                               size_t* q_bits, int* engines_agree) {
  CFM_REQUIRE(b);
  if (size_index >= b->report.sizes.size()) return fail(CFM_ERR_OUT_OF_RANGE, "bench size out of range");
  const auto& s = b->report.sizes[size_index];
  if (terms) *terms = s.terms;
  if (p_bits) *p_bits = s.p_bits;
  if (q_bits) *q_bits = s.q_bits;
  if (engines_agree) *engines_agree = s.engines_agree ? 1 : 0;
  return CFM_OK;
}

void cfm_bench_free(cfm_bench* b) { delete b; }

}  // extern "C"
