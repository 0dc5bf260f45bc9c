#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "qseries/series.hpp"

namespace testing_support {

inline qseries::LaurentSeries from_poly(const oracle::Poly& p) {
  return qseries::LaurentSeries::from_integers(
      0, static_cast<qseries::Exponent>(p.size()), std::vector<qseries::Integer>(p.begin(), p.end()));
}

inline qseries::LaurentSeries from_ints(const std::vector<std::int64_t>& v) {
  std::vector<qseries::Integer> c;
  c.reserve(v.size());
  for (auto x : v) c.emplace_back(static_cast<long>(x));
  return qseries::LaurentSeries::from_integers(0, static_cast<qseries::Exponent>(v.size()),
                                               std::move(c));
}

// True when the two series agree on every exponent below `upto` that both know.
inline bool agree(const qseries::LaurentSeries& a, const qseries::LaurentSeries& b,
                  qseries::Exponent upto) {
  return !qseries::first_mismatch(a, b, upto).has_value() && a.prec() >= upto &&
         b.prec() >= upto;
}

inline std::string test_data(const std::string& name) {
  return std::string(QSERIES_TEST_DATA_DIR) + "/" + name;
}

}  // namespace testing_support
