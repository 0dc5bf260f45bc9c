// Command-line front end for the q-series toolkit.
#include <CLI11.hpp>

#include <iostream>
#include <string>

#include <nlohmann/json.hpp>

#include "qseries/modular.hpp"
#include "qseries/partitions.hpp"
#include "qseries/qexpr.hpp"
#include "qseries/verifier.hpp"

using namespace qseries;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Config {
  std::string expression;
  std::string suite;
  std::string identity;
  std::string id;
  std::string normalizer = "lowest";
  Exponent order = 0;
  Exponent level = 121;
  Exponent modulus = 11;
  Exponent residue = 0;
  Exponent b = 0;
  std::string weight = "1/2";
  int n = 0;
  int jobs = 1;
  bool json = false;
  bool allow_large = false;
};

std::string coefficient_list(const LaurentSeries& s, Exponent from) {
  std::string out;
  for (Exponent n = from; n < s.prec(); ++n) {
    if (n > from) out += ",";
    out += rational_to_string(s.coeff_or_zero(n));
  }
  return out;
}

void print_series(const std::string& label, const LaurentSeries& s, bool json) {
  const Exponent from = std::min<Exponent>(s.lo(), 0);
  if (json) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (Exponent n = from; n < s.prec(); ++n) {
      coeffs.push_back(rational_to_string(s.coeff_or_zero(n)));
    }
    nlohmann::json j = {{"expr", label}, {"lo", from}, {"order", s.prec()}, {"coefficients", coeffs}};
    std::cout << j.dump(2) << '\n';
    return;
  }
  if (from < 0) std::cout << "from q^" << from << ": ";
  std::cout << coefficient_list(s, from) << '\n';
}

Expr parse_or_report(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    std::cerr << e.diagnostic(text) << '\n';
    throw;
  }
}

int cmd_expand(const Config& c) {
  const Expr e = parse_or_report(c.expression);
  print_series(c.expression, eval(e, c.order > 0 ? c.order : 20), c.json);
  return kOk;
}

int cmd_dissect(const Config& c) {
  const Expr e = parse_or_report(c.expression);
  const Exponent order = c.order > 0 ? c.order : 20;
  const Expr d = expr::dissect(e, c.modulus, c.residue);
  print_series(print(d), eval(d, order), c.json);
  return kOk;
}

int cmd_mw(const Config& c) {
  const PartitionStats s = stats_table(c.n, static_cast<int>(c.modulus), c.allow_large);
  if (c.json) {
    std::cout << stats_to_json(s) << '\n';
    return kOk;
  }
  std::cout << "n=" << s.n << " m=" << s.m << " p(n)=" << s.p << '\n';
  if (s.n == 0) {
    std::cout << "crank and rank are undefined for the empty partition; no class table\n";
    return kOk;
  }
  std::cout << "class\tM\tN\tM_omega\tNT\n";
  for (int r = 0; r < s.m; ++r) {
    const auto i = static_cast<std::size_t>(r);
    std::cout << r << '\t' << s.M[i] << '\t' << s.N[i] << '\t' << s.M_omega[i] << '\t'
              << s.NT[i] << '\n';
  }
  if (s.m % 2 == 1) {
    std::cout << "weighted M_omega difference: " << weighted_mw_difference(s) << '\n';
  }
  return kOk;
}

int report_and_status(const std::vector<VerificationReport>& reports, bool json) {
  std::size_t passed = 0;
  for (const auto& r : reports) {
    if (r.pass) {
      ++passed;
    } else {
      std::cerr << "FAIL " << r.id;
      if (r.first_failure) {
        std::cerr << " at q^" << *r.first_failure << ": lhs " << r.lhs_coeff << ", rhs "
                  << r.rhs_coeff;
      }
      if (!r.message.empty()) std::cerr << " (" << r.message << ")";
      std::cerr << '\n';
    }
  }
  if (json) {
    std::cout << reports_to_json(reports) << '\n';
  } else {
    for (const auto& r : reports) {
      std::cout << (r.pass ? "pass " : "fail ") << r.id << "  order " << r.checked_order;
      if (!r.message.empty()) std::cout << "  " << r.message;
      std::cout << '\n';
    }
    std::cout << passed << "/" << reports.size() << " passed\n";
  }
  return passed == reports.size() ? kOk : kFailure;
}

int cmd_verify(const Config& c) {
  SuiteOptions options;
  options.jobs = c.jobs;
  options.progress = true;
  if (c.order > 0) options.order = c.order;
  if (!c.suite.empty() == !c.identity.empty()) {
    std::cerr << "verify: give exactly one of --suite or --identity\n";
    return kUsage;
  }
  std::vector<VerificationReport> reports;
  if (!c.suite.empty()) {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
      std::cerr << "verify: unknown suite " << c.suite << '\n';
      return kUsage;
    }
    reports = run_suite(c.suite, options);
  } else {
    reports = verify_all(load_corpus(c.identity), options);
  }
  return report_and_status(reports, c.json);
}

int cmd_cusps(const Config& c) {
  const auto cusps = cusp_set(c.level);
  if (c.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : cusps) {
      arr.push_back({{"a", s.a}, {"c", s.c}, {"width", s.width}});
    }
    nlohmann::json j = {{"level", c.level}, {"count", cusps.size()}, {"cusps", arr}};
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << cusps.size() << " cusps of Gamma_1(" << c.level << ")\n";
  for (const auto& s : cusps) {
    if (s.is_infinity()) std::cout << "1/0\twidth 1\n";
    else std::cout << s.a << "/" << s.c << "\twidth " << s.width << '\n';
  }
  return kOk;
}

CertifyOptions certify_options(const Config& c) {
  CertifyOptions o;
  if (c.normalizer == "lowest") {
    o.normalization = Normalization::LowestOrderAtInfinity;
  } else if (c.normalizer == "first") {
    o.normalization = Normalization::FirstTerm;
  } else {
    o.normalization = Normalization::Index;
    o.index = std::stoul(c.normalizer);
  }
  return o;
}

IdentityRecord pick_record(const Config& c) {
  const auto records = load_corpus(c.identity);
  if (records.empty()) throw DomainError("no records in " + c.identity);
  if (c.id.empty()) return records.front();
  for (const auto& r : records) {
    if (r.id == c.id) return r;
  }
  throw DomainError("no record " + c.id + " in " + c.identity);
}

int cmd_bound(const Config& c) {
  Rational B;
  std::string label;
  std::vector<CuspOrder> per;
  const CertifyOptions options = certify_options(c);
  if (c.b > 0) {
    const Exponent tw = c.weight == "3/2" ? 3 : 1;
    B = recipe_bound(c.b, tw, options);
    label = "F(" + std::to_string(c.b) + ") weight " + c.weight;
  } else if (!c.identity.empty()) {
    const IdentityRecord r = pick_record(c);
    B = bound_for(parse_or_report(r.lhs), parse_or_report(r.rhs), c.level, options, &per);
    label = r.id;
  } else {
    std::cerr << "bound: give --identity or --b\n";
    return kUsage;
  }
  if (c.json) {
    nlohmann::json j = {{"identity", label}, {"level", c.level}, {"B", rational_to_string(B)}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << label << ": B = " << rational_to_string(B) << '\n';
  }
  return kOk;
}

int cmd_certify(const Config& c) {
  const IdentityRecord r = pick_record(c);
  std::cerr << "certifying " << r.id << " on Gamma_1(" << c.level << ")\n";
  Evaluator evaluator;
  const Certificate cert = certify(r.id, parse_or_report(r.lhs), parse_or_report(r.rhs), c.level,
                                   evaluator, certify_options(c));
  if (c.json) {
    std::cout << certificate_to_json(cert) << '\n';
  } else {
    std::cout << cert.identity << ": " << cert.status << ", B = " << rational_to_string(cert.B)
              << ", checked below q^" << cert.verified_to << '\n';
    if (!cert.reason.empty()) std::cout << cert.reason << '\n';
  }
  if (cert.status != "certified") {
    std::cerr << "not certified: " << cert.reason << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series toolkit for crank statistics weighted by ones"};
  app.require_subcommand(1);
  Config c;
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", c.json, "JSON output");
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--allow-large", c.allow_large, "Lift the enumeration guard");
  };

  auto* expand = app.add_subcommand("expand", "Expand an expression");
  expand->add_option("expression", c.expression)->required();
  expand->add_option("--order", c.order, "Coefficients below q^order")->check(CLI::PositiveNumber);
  common(expand);

  auto* dissect = app.add_subcommand("dissect", "sum_n c(Mn+r) q^n of an expression");
  dissect->add_option("expression", c.expression)->required();
  dissect->add_option("--modulus", c.modulus)->check(CLI::PositiveNumber);
  dissect->add_option("--residue", c.residue)->check(CLI::NonNegativeNumber);
  dissect->add_option("--order", c.order)->check(CLI::PositiveNumber);
  common(dissect);

  auto* mw = app.add_subcommand("mw", "Crank, rank and weighted statistics of partitions of n");
  mw->add_option("n", c.n)->required()->check(CLI::NonNegativeNumber);
  mw->add_option("--modulus", c.modulus)->check(CLI::PositiveNumber);
  common(mw);

  auto* verify = app.add_subcommand("verify", "Verify a suite or an identity file");
  verify->add_option("--suite", c.suite);
  verify->add_option("--identity", c.identity);
  verify->add_option("--order", c.order)->check(CLI::PositiveNumber);
  common(verify);

  auto* cusps = app.add_subcommand("cusps", "Cusps of Gamma_1(N) with widths");
  cusps->add_option("--level", c.level)->check(CLI::PositiveNumber);
  common(cusps);

  auto* bound = app.add_subcommand("bound", "Bound B of an identity of eta quotients");
  bound->add_option("--identity", c.identity);
  bound->add_option("--id", c.id, "Record id within the identity file");
  bound->add_option("--level", c.level)->check(CLI::PositiveNumber);
  bound->add_option("--b", c.b, "Use the weight split of F(b) instead of a file")
      ->check(CLI::Range(1, 5));
  bound->add_option("--weight", c.weight)->check(CLI::IsMember({"1/2", "3/2"}));
  bound->add_option("--normalizer", c.normalizer, "lowest, first or a term index");
  common(bound);

  auto* cert = app.add_subcommand("certify", "Certify an identity of modular functions");
  cert->add_option("--identity", c.identity)->required();
  cert->add_option("--id", c.id, "Record id within the identity file");
  cert->add_option("--level", c.level)->check(CLI::PositiveNumber);
  cert->add_option("--normalizer", c.normalizer, "lowest, first or a term index");
  common(cert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*expand) return cmd_expand(c);
    if (*dissect) return cmd_dissect(c);
    if (*mw) return cmd_mw(c);
    if (*verify) return cmd_verify(c);
    if (*cusps) return cmd_cusps(c);
    if (*bound) return cmd_bound(c);
    if (*cert) return cmd_certify(c);
  } catch (const ParseError&) {
    return kUsage;  // diagnostic already printed
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
