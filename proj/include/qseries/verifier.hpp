#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/modular.hpp"
#include "qseries/qexpr.hpp"
#include "qseries/series.hpp"

namespace qseries {

// Generating function of M_w(b,11,n) - M_w(11-b,11,n), built from the
// bilateral S sums. 1 <= b <= 10.
LaurentSeries mathcal_f(Exponent b, Exponent prec);

struct IdentityRecord {
  std::string id;
  std::string lhs;
  std::string rhs;
  Exponent order = 600;
  std::string paper_ref;
};

struct VerificationReport {
  std::string id;
  bool pass = false;
  Exponent checked_order = 0;
  std::optional<Exponent> first_failure;
  std::string lhs_coeff;
  std::string rhs_coeff;
  std::string message;
};

// Compares both sides exactly below `order` (the record's order if unset).
VerificationReport verify(const IdentityRecord& record, Evaluator& evaluator,
                          std::optional<Exponent> order = {});

// Directory holding the identity corpus: $QSERIES_DATA_DIR if set, else the
// directory configured at build time.
std::string data_directory();
std::vector<IdentityRecord> load_corpus(const std::string& path);
std::vector<IdentityRecord> load_suite_records(const std::string& suite);

struct SuiteOptions {
  std::optional<Exponent> order;  // overrides every record's order
  int jobs = 1;
  bool progress = false;  // one line per record on stderr
};

// Verifies the records on a pool of `jobs` threads; reports keep the
// record order.
std::vector<VerificationReport> verify_all(const std::vector<IdentityRecord>& records,
                                           const SuiteOptions& options = {});

std::vector<std::string> suite_names();
// Throws DomainError for an unknown suite.
std::vector<VerificationReport> run_suite(const std::string& name,
                                          const SuiteOptions& options = {});

std::string reports_to_json(const std::vector<VerificationReport>& reports);

// Symbolic F(b) and its split into weights 1/2 and 3/2, together with the
// g sides assembled from the appendix right sides.
struct WeightSplit {
  Polynomial f;            // full symbolic F(b)
  Polynomial h_half;
  Polynomial h_threehalf;
  Polynomial stray;        // anything of another weight (should be empty)
  Polynomial g_half;
  Polynomial g_threehalf;
};

WeightSplit build_weight_split(Exponent b);

// The printed b = 1 identities h = g of weights 1/2 and 3/2.
std::pair<IdentityRecord, IdentityRecord> build_b1_certification_inputs();

struct BoundRecord {
  std::string id;
  Exponent b = 1;
  Exponent twice_weight = 1;
  Rational expected;
};

std::vector<BoundRecord> load_expected_bounds();

// B for h = g at the given doubled weight, using the recipe split.
Rational recipe_bound(Exponent b, Exponent twice_weight,
                      const CertifyOptions& options = {});

}  // namespace qseries
