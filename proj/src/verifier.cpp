#include "qseries/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qseries/lambert.hpp"
#include "qseries/partitions.hpp"
#include "qseries/qproducts.hpp"

#ifndef QSERIES_DATA_DIR
#define QSERIES_DATA_DIR "data/identities"
#endif

namespace qseries {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// F(b)

namespace {

std::mutex f_mutex;
std::map<Exponent, LaurentSeries> f_memo;

fs::path cache_file(Exponent b) {
  const char* dir = std::getenv("QSERIES_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  return fs::path(dir) / ("F" + std::to_string(b) + ".txt");
}

std::optional<LaurentSeries> read_cached(Exponent b, Exponent prec) {
  const fs::path path = cache_file(b);
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  Exponent lo = 0;
  Exponent have = 0;
  if (!(in >> lo >> have) || have < prec) return std::nullopt;
  std::vector<Rational> coeffs;
  std::string token;
  for (Exponent n = lo; n < have && in >> token; ++n) coeffs.push_back(Rational(token));
  if (static_cast<Exponent>(coeffs.size()) != have - lo) return std::nullopt;
  return LaurentSeries(lo, have, std::move(coeffs));
}

void write_cached(Exponent b, const LaurentSeries& s) {
  const fs::path path = cache_file(b);
  if (path.empty()) return;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp" +
                       std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << s.lo() << ' ' << s.prec() << '\n';
    for (const auto& c : s.coeffs()) out << c.get_str() << '\n';
  }
  fs::rename(tmp, path, ec);
}

LaurentSeries compute_f(Exponent b, Exponent prec) {
  const LaurentSeries j1 = euler_product(1, prec);
  const LaurentSeries two = s_sum(b - 1, 11, 1, 2, prec) - s_sum(b, 11, 1, 2, prec);
  const LaurentSeries one = s_sum(b - 1, 11, 1, 1, prec) - s_sum(b, 11, 1, 1, prec);
  const LaurentSeries numerator = Rational(11) * two - Rational(11 - b) * one;
  return divide(numerator, j1).truncated(prec);
}

}  // namespace

LaurentSeries mathcal_f(Exponent b, Exponent prec) {
  if (b < 1 || b > 10) throw DomainError("F(b) needs 1 <= b <= 10");
  {
    std::lock_guard lock(f_mutex);
    auto it = f_memo.find(b);
    if (it != f_memo.end() && it->second.prec() >= prec) {
      return it->second.truncated(prec);
    }
  }
  std::optional<LaurentSeries> s = read_cached(b, prec);
  if (!s) {
    s = compute_f(b, prec);
    write_cached(b, *s);
  }
  std::lock_guard lock(f_mutex);
  auto& slot = f_memo[b];
  if (slot.prec() < s->prec()) slot = *s;
  return s->truncated(prec);
}

// ---------------------------------------------------------------------------
// Records

VerificationReport verify(const IdentityRecord& record, Evaluator& evaluator,
                          std::optional<Exponent> order) {
  VerificationReport report;
  report.id = record.id;
  report.checked_order = order.value_or(record.order);
  try {
    const Expr lhs = parse(record.lhs);
    const Expr rhs = parse(record.rhs);
    const LaurentSeries l = evaluator.eval(lhs, report.checked_order);
    const LaurentSeries r = evaluator.eval(rhs, report.checked_order);
    report.first_failure = first_mismatch(l, r, report.checked_order);
    if (report.first_failure) {
      const Exponent n = *report.first_failure;
      report.lhs_coeff = rational_to_string(l.coeff_or_zero(n));
      report.rhs_coeff = rational_to_string(r.coeff_or_zero(n));
      report.message = "coefficients of q^" + std::to_string(n) + " differ";
    } else {
      report.pass = true;
    }
  } catch (const ParseError& e) {
    report.message = "parse error: " + std::string(e.what());
  } catch (const std::exception& e) {
    report.message = e.what();
  }
  return report;
}

std::string data_directory() {
  const char* env = std::getenv("QSERIES_DATA_DIR");
  if (env != nullptr && *env != '\0') return env;
  return QSERIES_DATA_DIR;
}

std::vector<IdentityRecord> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open identity file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
  if (doc.is_object()) doc = nlohmann::json::array({doc});
  std::vector<IdentityRecord> out;
  for (const auto& row : doc) {
    IdentityRecord r;
    r.id = row.at("id").get<std::string>();
    r.lhs = row.at("lhs").get<std::string>();
    r.rhs = row.at("rhs").get<std::string>();
    r.order = row.value("order", Exponent{600});
    r.paper_ref = row.value("paperRef", std::string{});
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<IdentityRecord> load_suite_records(const std::string& suite) {
  return load_corpus((fs::path(data_directory()) / (suite + ".json")).string());
}

std::vector<VerificationReport> verify_all(const std::vector<IdentityRecord>& records,
                                           const SuiteOptions& options) {
  std::vector<VerificationReport> out(records.size());
  Evaluator evaluator;
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      out[i] = verify(records[i], evaluator, options.order);
      if (options.progress) {
        std::lock_guard lock(log_mutex);
        std::cerr << (out[i].pass ? "pass " : "FAIL ") << out[i].id << '\n';
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    // Every key is always present so the schema does not depend on the outcome.
    nlohmann::json j = {{"id", r.id},
                        {"status", r.pass ? "pass" : "fail"},
                        {"checkedOrder", r.checked_order},
                        {"firstFailure", nullptr},
                        {"lhsCoeff", nullptr},
                        {"rhsCoeff", nullptr},
                        {"message", r.message}};
    if (r.first_failure) {
      j["firstFailure"] = *r.first_failure;
      j["lhsCoeff"] = r.lhs_coeff;
      j["rhsCoeff"] = r.rhs_coeff;
    }
    arr.push_back(j);
  }
  return arr.dump(2);
}

// ---------------------------------------------------------------------------
// Weight split

namespace {

const IdentityRecord& find_record(const std::vector<IdentityRecord>& records,
                                  const std::string& id) {
  for (const auto& r : records) {
    if (r.id == id) return r;
  }
  throw DomainError("missing record " + id);
}

// The ".alt" reading when the corpus has one: it is the version that
// survives the series check.
const IdentityRecord& preferred_record(const std::vector<IdentityRecord>& records,
                                       const std::string& id) {
  for (const auto& r : records) {
    if (r.id == id + ".alt") return r;
  }
  return find_record(records, id);
}

Polynomial scaled_by_11_times_q(const Polynomial& p, Exponent m) {
  Polynomial out;
  for (const auto& [mono, c] : p) {
    Monomial s;
    s.q = 11 * mono.q + m;
    for (const auto& [key, e] : mono.j) s.j[{key.first * 11, key.second * 11}] = e;
    for (const auto& [k, e] : mono.sigma) s.sigma[k * 11] = e;
    out.emplace(s, c);
  }
  return out;
}

Polynomial constant_poly(const Rational& c) {
  Polynomial p;
  if (sgn(c) != 0) p.emplace(Monomial{}, c);
  return p;
}

}  // namespace

WeightSplit build_weight_split(Exponent b) {
  if (b < 1 || b > 5) throw DomainError("weight split needs 1 <= b <= 5");
  const auto lemma = load_suite_records("lemma-3");
  const auto appendix = load_suite_records("appendix");
  auto s_display = [&](int j, Exponent a) -> Polynomial {
    const std::string id = "lemma3." + std::string(j == 1 ? "one" : "two") + ".a" +
                           std::to_string(a);
    return expand_symbolic(parse(preferred_record(lemma, id).rhs));
  };
  Monomial inv_j1;
  inv_j1.j[{1, 0}] = -1;
  Polynomial over_j1;
  over_j1.emplace(inv_j1, Rational(1));

  WeightSplit w;
  w.f = over_j1 * (constant_poly(11) * (s_display(2, b - 1) - s_display(2, b)) -
                   constant_poly(11 - b) * (s_display(1, b - 1) - s_display(1, b)));
  for (const auto& [m, c] : w.f) {
    const Exponent tw = weight_twice(m);
    if (tw == 1) w.h_half.emplace(m, c);
    else if (tw == 3) w.h_threehalf.emplace(m, c);
    else w.stray.emplace(m, c);
  }
  for (Exponent m = 0; m <= 10; ++m) {
    const std::string id = "appendix.m" + std::to_string(m) + ".b" + std::to_string(b);
    const Polynomial f = expand_symbolic(parse(find_record(appendix, id).rhs));
    w.g_half = w.g_half + scaled_by_11_times_q(weight_part(f, 1), m);
    w.g_threehalf = w.g_threehalf + scaled_by_11_times_q(weight_part(f, 3), m);
  }
  return w;
}

std::pair<IdentityRecord, IdentityRecord> build_b1_certification_inputs() {
  const fs::path dir(data_directory());
  return {find_record(load_corpus((dir / "b1-half.json").string()), "certification.b1-half"),
          find_record(load_corpus((dir / "b1-threehalf.json").string()),
                      "certification.b1-threehalf")};
}

std::vector<BoundRecord> load_expected_bounds() {
  const fs::path path = fs::path(data_directory()) / "bounds.json";
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  const nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<BoundRecord> out;
  for (const auto& row : doc) {
    BoundRecord r;
    r.id = row.at("id").get<std::string>();
    r.b = row.at("b").get<Exponent>();
    r.twice_weight = row.at("weight").get<std::string>() == "1/2" ? 1 : 3;
    r.expected = parse_rational(row.at("B").get<std::string>());
    out.push_back(r);
  }
  return out;
}

Rational recipe_bound(Exponent b, Exponent twice_weight, const CertifyOptions& options) {
  const WeightSplit w = build_weight_split(b);
  const Polynomial& h = twice_weight == 1 ? w.h_half : w.h_threehalf;
  const Polynomial& g = twice_weight == 1 ? w.g_half : w.g_threehalf;
  return bound_for(to_expr(h), to_expr(g), 121, options);
}

// ---------------------------------------------------------------------------
// Suites

namespace {

VerificationReport combinatorial_report(Exponent b, const std::vector<PartitionStats>& stats) {
  VerificationReport r;
  r.id = "combinatorial.b" + std::to_string(b);
  const Exponent top = static_cast<Exponent>(stats.size());
  r.checked_order = top;
  const LaurentSeries f = mathcal_f(b, top);
  r.pass = true;
  for (Exponent n = 2; n < top; ++n) {
    const auto& s = stats[static_cast<std::size_t>(n)];
    const std::int64_t brute = s.M_omega[static_cast<std::size_t>(b)] -
                               s.M_omega[static_cast<std::size_t>(11 - b)];
    const Rational analytic = f.coeff_or_zero(n);
    if (analytic != brute) {
      r.pass = false;
      r.first_failure = n;
      r.lhs_coeff = rational_to_string(analytic);
      r.rhs_coeff = std::to_string(brute);
      r.message = "analytic and enumerated values differ";
      break;
    }
  }
  return r;
}

VerificationReport anomaly_report(Exponent b, const std::vector<PartitionStats>& stats) {
  VerificationReport r;
  r.id = "combinatorial.b" + std::to_string(b) + ".small-n";
  r.checked_order = 2;
  r.pass = true;  // measured, not asserted
  const LaurentSeries f = mathcal_f(b, 2);
  std::ostringstream msg;
  for (Exponent n = 0; n < 2; ++n) {
    const auto& s = stats[static_cast<std::size_t>(n)];
    const std::int64_t brute = s.M_omega[static_cast<std::size_t>(b)] -
                               s.M_omega[static_cast<std::size_t>(11 - b)];
    const Rational analytic = f.coeff_or_zero(n);
    if (n > 0) msg << "; ";
    msg << "n=" << n << ": series " << rational_to_string(analytic) << ", enumeration "
        << brute << (analytic == brute ? " (agree)" : " (differ)");
  }
  r.message = msg.str();
  return r;
}

std::vector<VerificationReport> combinatorial_suite() {
  std::vector<PartitionStats> stats;
  for (int n = 0; n <= 45; ++n) stats.push_back(stats_table(n, 11));
  std::vector<VerificationReport> out;
  for (Exponent b = 1; b <= 5; ++b) {
    out.push_back(combinatorial_report(b, stats));
    out.push_back(anomaly_report(b, stats));
  }
  return out;
}

std::vector<VerificationReport> theorem1_suite(const SuiteOptions& options) {
  std::vector<IdentityRecord> records = load_suite_records("theorem1");
  const auto appendix = load_suite_records("appendix");
  std::string combo;
  for (Exponent b = 1; b <= 5; ++b) {
    const std::string rhs = find_record(appendix, "appendix.m6.b" + std::to_string(b)).rhs;
    if (!combo.empty()) combo += "+";
    combo += std::to_string(b) + "*(" + rhs + ")";
  }
  records.push_back({"theorem1.appendix-series", combo, "0", 600, ""});
  SuiteOptions opts = options;
  opts.order.reset();
  std::vector<VerificationReport> out = verify_all(records, opts);

  VerificationReport symbolic;
  symbolic.id = "theorem1.appendix-symbolic";
  const Polynomial p = expand_symbolic(parse(combo));
  symbolic.pass = p.empty();
  symbolic.message = p.empty() ? "all V6, T, t terms cancel"
                               : std::to_string(p.size()) + " products survive";
  out.push_back(symbolic);

  VerificationReport comb;
  comb.id = "theorem1.combinatorial";
  comb.pass = true;
  for (int n = 0; 11 * n + 6 <= 61; ++n) {
    const std::int64_t v = weighted_mw_difference(stats_table(11 * n + 6, 11));
    comb.checked_order = 11 * n + 7;
    if (v != 0) {
      comb.pass = false;
      comb.first_failure = 11 * n + 6;
      comb.lhs_coeff = std::to_string(v);
      comb.rhs_coeff = "0";
      break;
    }
  }
  out.push_back(comb);
  return out;
}

bool same_polynomial(const Polynomial& a, const Polynomial& b, std::string& why) {
  const Polynomial d = a - b;
  if (d.empty()) return true;
  why = std::to_string(d.size()) + " products differ, first " +
        print(to_expr(Polynomial{*d.begin()}));
  return false;
}

std::vector<VerificationReport> certification_suite(const SuiteOptions& options) {
  std::vector<VerificationReport> out = verify_all(load_suite_records("certification"), options);
  const auto [half, threehalf] = build_b1_certification_inputs();
  const auto expected = load_expected_bounds();
  auto expected_for = [&](Exponent b, Exponent tw) -> std::optional<Rational> {
    for (const auto& e : expected) {
      if (e.b == b && e.twice_weight == tw) return e.expected;
    }
    return std::nullopt;
  };

  Evaluator evaluator;
  for (const auto& [record, tw] : {std::pair{half, Exponent{1}}, std::pair{threehalf, Exponent{3}}}) {
    VerificationReport r;
    r.id = record.id;
    try {
      const Certificate c = certify(record.id, parse(record.lhs), parse(record.rhs), 121, evaluator);
      r.checked_order = c.verified_to;
      r.first_failure = c.first_nonzero;
      const auto want = expected_for(1, tw);
      r.pass = c.status == "certified" && want && c.B == *want;
      r.message = "B = " + rational_to_string(c.B) + ", verified below q^" +
                  std::to_string(c.verified_to) + ", status " + c.status;
      if (!c.reason.empty()) r.message += ": " + c.reason;
    } catch (const std::exception& e) {
      r.message = e.what();
    }
    out.push_back(r);
  }

  // Recipe split of F(1) against the printed displays.
  try {
    const WeightSplit w = build_weight_split(1);
    const Polynomial printed_h_half = expand_symbolic(parse(half.lhs));
    const Polynomial printed_h_three = expand_symbolic(parse(threehalf.lhs));
    const Polynomial printed_g_half = expand_symbolic(parse(half.rhs));
    const Polynomial printed_g_three = expand_symbolic(parse(threehalf.rhs));
    const std::vector<std::tuple<std::string, const Polynomial*, const Polynomial*>> checks = {
        {"split.b1.h-half", &w.h_half, &printed_h_half},
        {"split.b1.h-threehalf", &w.h_threehalf, &printed_h_three},
        {"split.b1.g-half", &w.g_half, &printed_g_half},
        {"split.b1.g-threehalf", &w.g_threehalf, &printed_g_three},
    };
    for (const auto& [id, recipe, printed] : checks) {
      VerificationReport r;
      r.id = id;
      r.pass = same_polynomial(*recipe, *printed, r.message);
      out.push_back(r);
    }
  } catch (const std::exception& e) {
    VerificationReport r;
    r.id = "split.b1";
    r.message = e.what();
    out.push_back(r);
  }

  for (const auto& e : expected) {
    VerificationReport r;
    r.id = e.id;
    try {
      const WeightSplit w = build_weight_split(e.b);
      if (!w.stray.empty()) {
        r.message = "F(" + std::to_string(e.b) + ") has terms outside weights 1/2 and 3/2";
      } else {
        const Rational B = recipe_bound(e.b, e.twice_weight);
        r.pass = B == e.expected;
        r.lhs_coeff = rational_to_string(B);
        r.rhs_coeff = rational_to_string(e.expected);
        r.message = "B = " + r.lhs_coeff + ", expected " + r.rhs_coeff;
      }
    } catch (const std::exception& ex) {
      r.message = ex.what();
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"lemma-2", "lemma-3", "appendix", "corollary", "theorem1", "combinatorial",
          "certification"};
}

std::vector<VerificationReport> run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "combinatorial") return combinatorial_suite();
  if (name == "theorem1") return theorem1_suite(options);
  if (name == "certification") return certification_suite(options);
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw DomainError("unknown suite " + name);
  }
  return verify_all(load_suite_records(name), options);
}

}  // namespace qseries
