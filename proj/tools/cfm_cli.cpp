// cfm: continued fractions, convergents, measure tables and sine probes.
//
//   cfm expand pi2 --terms 27
//   cfm measure pi2 --terms 30 --format csv
//   cfm bench golden --terms 100000

#include <cfm/cfm.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string constant;
  size_t terms = 30;
  uint32_t digits = 60;
  std::string engine = "iter";
  std::string format = "text";
  uint64_t seed = 1;
  uint64_t max_digits = 1'000'000;
};

// Failure carrying the exit code it maps to.
struct Failure {
  int exit_code;
  std::string message;
};

[[noreturn]] void raise(cfm_status s) {
  std::string msg = cfm_last_error();
  if (msg.empty()) msg = cfm_status_string(s);
  const bool usage = s == CFM_ERR_PARSE || s == CFM_ERR_INVALID_ARGUMENT;
  throw Failure{usage ? kExitUsage : kExitDomain, msg};
}

void check(cfm_status s) {
  if (s != CFM_OK) raise(s);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Constant = Handle<cfm_constant, cfm_constant_free>;
using Quotients = Handle<cfm_quotients, cfm_quotients_free>;
using Convergents = Handle<cfm_convergents, cfm_convergents_free>;
using Table = Handle<cfm_table, cfm_table_free>;
using Probe = Handle<cfm_probe, cfm_probe_free>;
using Report = Handle<cfm_report, cfm_report_free>;
using Bench = Handle<cfm_bench, cfm_bench_free>;

Constant parse_constant(const std::string& text) {
  cfm_constant* c = nullptr;
  check(cfm_constant_parse(text.c_str(), &c));
  return Constant(c);
}

cfm_budget budget(const RunConfig& cfg) {
  cfm_budget b = cfm_budget_default(cfg.digits);
  b.max_digits = cfg.max_digits;
  return b;
}

cfm_engine engine(const std::string& name) {
  if (name == "matrix") return CFM_ENGINE_MATRIX;
  if (name == "fast") return CFM_ENGINE_FAST;
  return CFM_ENGINE_ITER;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed, const char* cmd) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw Failure{kExitUsage, std::string("--format ") + cfg.format + " is not supported by " + cmd};
}

// Right-aligned columns, two spaces apart.
void print_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) line += "  ";
      line += std::string(width[i] - r[i].size(), ' ') + r[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << '\n';
  }
}

void print_csv(const std::vector<std::vector<std::string>>& rows) {
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i];
    std::cout << '\n';
  }
}

const char* orempty(const char* s) { return s ? s : ""; }

int cmd_expand(const RunConfig& cfg) {
  require_format(cfg, {"text", "csv"}, "expand");
  const Constant c = parse_constant(cfg.constant);
  cfm_quotients* raw = nullptr;
  check(cfm_expand(c.get(), cfg.terms, budget(cfg), &raw));
  const Quotients q(raw);
  const size_t n = cfm_quotients_count(q.get());
  const char* sep = cfg.format == "csv" ? "," : " ";
  for (size_t i = 0; i < n; ++i) std::cout << (i ? sep : "") << cfm_quotients_term(q.get(), i);
  std::cout << '\n';
  if (cfm_quotients_terminated(q.get()) && n < cfg.terms)
    std::cerr << "note: expansion terminates after " << n << " terms\n";
  return kExitOk;
}

int cmd_convergents(const RunConfig& cfg) {
  require_format(cfg, {"text", "csv"}, "convergents");
  const Constant c = parse_constant(cfg.constant);
  cfm_quotients* rq = nullptr;
  check(cfm_expand(c.get(), cfg.terms, budget(cfg), &rq));
  const Quotients q(rq);
  const size_t n = cfm_quotients_count(q.get());
  cfm_convergents* rc = nullptr;
  check(cfm_convergents_compute(q.get(), std::min(n, cfg.terms) - 1, engine(cfg.engine), &rc));
  const Convergents conv(rc);
  std::vector<std::vector<std::string>> rows{{"n", "p", "q"}};
  for (size_t i = 0; i < cfm_convergents_count(conv.get()); ++i) {
    size_t idx = 0;
    const char *p = nullptr, *qq = nullptr;
    check(cfm_convergents_get(conv.get(), i, &idx, &p, &qq));
    rows.push_back({std::to_string(idx + 1), p, qq});
  }
  cfg.format == "csv" ? print_csv(rows) : print_aligned(rows);
  return kExitOk;
}

int cmd_measure(const RunConfig& cfg) {
  require_format(cfg, {"text", "csv", "plot"}, "measure");
  const Constant c = parse_constant(cfg.constant);
  cfm_table* rt = nullptr;
  check(cfm_measure_table(c.get(), cfg.terms, budget(cfg), &rt));
  const Table t(rt);
  std::vector<std::vector<std::string>> rows;
  if (cfg.format == "csv") rows.push_back({"n", "p", "q", "mu", "lagrange"});
  if (cfg.format == "text") rows.push_back({"n", "p_n", "q_n", "mu_n", "q^(mu-2)"});
  for (size_t i = 0; i < cfm_table_rows(t.get()); ++i) {
    cfm_measure_row r{};
    check(cfm_table_row(t.get(), i, &r));
    if (cfg.format == "plot") {
      // Rows 1-2 are left out, as in the published plot.
      if (r.n >= 3 && r.mu) std::cout << '(' << r.n << ',' << r.mu << ")\n";
      continue;
    }
    rows.push_back({std::to_string(r.n), r.p, r.q, orempty(r.mu), r.lagrange});
  }
  if (cfg.format == "csv") print_csv(rows);
  if (cfg.format == "text") print_aligned(rows);
  return kExitOk;
}

int cmd_probe(const RunConfig& cfg) {
  require_format(cfg, {"text", "csv", "plot"}, "probe");
  const Constant c = parse_constant(cfg.constant);
  cfm_probe* rp = nullptr;
  check(cfm_probe_table(c.get(), cfg.terms, budget(cfg), &rp));
  const Probe p(rp);
  auto flag = [](int checked, int ok) -> std::string { return checked ? (ok ? "ok" : "FAIL") : "-"; };
  std::vector<std::vector<std::string>> rows;
  if (cfg.format == "csv")
    rows.push_back({"n", "p", "q", "epsilon", "sin_direct", "sin_reduced", "sin_unscaled", "upper_ok", "lower_ok",
                    "envelope_ok", "mu"});
  if (cfg.format == "text")
    rows.push_back({"n", "q_n", "eps_n", "|sin(pi^3 q)|", "|sin(pi eps)|", "|sin eps|", "upper", "lower", "envelope",
                    "mu_n"});
  for (size_t i = 0; i < cfm_probe_rows(p.get()); ++i) {
    cfm_probe_row r{};
    check(cfm_probe_row_get(p.get(), i, &r));
    if (cfg.format == "plot") {
      std::cout << '(' << r.n << ',' << r.sin_reduced << ")\n";
      continue;
    }
    if (cfg.format == "csv") {
      auto b = [&](int v) -> std::string { return r.bounds_checked ? std::to_string(v) : ""; };
      rows.push_back({std::to_string(r.n), r.p, r.q, r.epsilon, orempty(r.sin_direct), r.sin_reduced, r.sin_unscaled,
                      b(r.upper_ok), b(r.lower_ok), std::to_string(r.envelope_ok), orempty(r.mu)});
    } else {
      rows.push_back({std::to_string(r.n), r.q, r.epsilon, r.sin_direct ? r.sin_direct : "-", r.sin_reduced,
                      r.sin_unscaled, flag(r.bounds_checked, r.upper_ok), flag(r.bounds_checked, r.lower_ok),
                      flag(1, r.envelope_ok), r.mu ? r.mu : ""});
    }
  }
  if (cfg.format == "csv") print_csv(rows);
  if (cfg.format == "text") print_aligned(rows);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  require_format(cfg, {"text"}, "verify");
  const Constant c = parse_constant(cfg.constant);
  cfm_report* rr = nullptr;
  check(cfm_verify(c.get(), cfg.terms, budget(cfg), &rr));
  const Report r(rr);
  std::cout << "verify " << cfm_constant_name(c.get()) << " terms=" << cfg.terms << '\n';
  for (size_t i = 0; i < cfm_report_notes(r.get()); ++i) std::cout << "note: " << cfm_report_note(r.get(), i) << '\n';
  for (size_t i = 0; i < cfm_report_checks(r.get()); ++i) {
    const char *name = nullptr, *detail = nullptr;
    int passed = 0;
    check(cfm_report_check(r.get(), i, &name, &passed, &detail));
    std::cout << (passed ? "PASS " : "FAIL ") << name;
    if (!passed && detail && *detail) std::cout << " -- " << detail;
    std::cout << '\n';
  }
  return cfm_report_all_passed(r.get()) ? kExitOk : kExitDomain;
}

int cmd_bench(const RunConfig& cfg) {
  require_format(cfg, {"text", "csv"}, "bench");
  cfm_bench* rb = nullptr;
  check(cfm_bench_run_all(cfg.constant.c_str(), cfg.seed, cfg.terms, &rb));
  const Bench b(rb);
  static const char* kEngines[] = {"iter", "matrix", "fast"};
  std::vector<std::vector<std::string>> rows;
  if (cfg.format == "csv") rows.push_back({"terms", "engine", "wall_ms", "multiplications", "work_bits", "agree"});
  if (cfg.format == "text") {
    std::cout << "quotients: " << cfm_bench_source(b.get()) << '\n';
    rows.push_back({"terms", "engine", "wall_ms", "mults", "work_bits", "q_bits", "agree"});
  }
  bool all = true;
  for (size_t s = 0; s < cfm_bench_sizes(b.get()); ++s) {
    size_t terms = 0, p_bits = 0, q_bits = 0;
    int agree = 0;
    check(cfm_bench_size_info(b.get(), s, &terms, &p_bits, &q_bits, &agree));
    all = all && agree;
    for (size_t e = 0; e < 3; ++e) {
      cfm_bench_run run{};
      check(cfm_bench_get(b.get(), s, e, &run));
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", run.wall_ms);
      rows.push_back({std::to_string(terms), kEngines[e], ms, std::to_string(run.multiplications),
                      std::to_string(run.work_bits)});
      if (cfg.format == "text") rows.back().push_back(std::to_string(q_bits));
      rows.back().push_back(agree ? "yes" : "no");
    }
  }
  if (cfg.format == "csv") {
    print_csv(rows);
  } else {
    print_aligned(rows);
    std::cout << (all ? "engines agree at every size\n" : "ENGINE MISMATCH\n");
  }
  return all ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified continued fractions, convergents and irrationality-measure tables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cfm_version());

  RunConfig cfg;
  const CLI::Validator positive(
      [](std::string& v) {
        return v.find_first_not_of("0123456789") == std::string::npos && v.find_first_not_of('0') != std::string::npos
                   ? std::string()
                   : "must be a positive integer, got '" + v + "'";
      },
      "POSITIVE");
  const char* kConstantHelp = "pi, pi2, pi3, pi^t/s, sqrt:d, surd:a,b,d,c, lit:<decimal>, golden";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("constant", cfg.constant, kConstantHelp)->required();
    sub->add_option("--terms,--rows", cfg.terms, "number of terms / rows")->check(positive);
    sub->add_option("--digits", cfg.digits, "certified decimal digits")->check(CLI::Range(1u, 1000000u));
    sub->add_option("--format", cfg.format, "text, csv or plot")
        ->check(CLI::IsMember({"text", "csv", "plot"}));
    // Only convergents switches engines; bench always runs all three.
    sub->add_option("--engine", cfg.engine, "iter, matrix or fast")->check(CLI::IsMember({"iter", "matrix", "fast"}));
    sub->add_option("--max-digits", cfg.max_digits, "cap on working digits")->check(positive);
    sub->add_option("--seed", cfg.seed, "seed for randomized quotients");
  };

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  };
  const Sub subs[] = {
      {"expand", "certified partial quotients", cmd_expand},
      {"convergents", "convergents p_n/q_n", cmd_convergents},
      {"measure", "mu_n and q^(mu_n - 2) table", cmd_measure},
      {"probe", "residuals and sine probes", cmd_probe},
      {"verify", "identity, engine, bound and envelope checks", cmd_verify},
      {"bench", "time all engines on surd or random quotients", cmd_bench},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> registered;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    registered.emplace_back(sub, &s);
  }
  bool terms_given = false;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (auto& [sub, s] : registered) {
      if (!sub->parsed()) continue;
      terms_given = sub->count("--terms") > 0;
      if (std::string(s->name) == "bench" && !terms_given) cfg.terms = 100000;
      return s->run(cfg);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
