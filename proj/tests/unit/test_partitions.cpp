#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "qseries/partitions.hpp"
#include "qseries/qproducts.hpp"

using namespace qseries;

TEST_CASE("enumeration counts", "[partitions]") {
  CHECK(enumerate_partitions(0).size() == 1);
  CHECK(enumerate_partitions(0)[0].empty());
  CHECK(enumerate_partitions(4).size() == 5);
  CHECK(enumerate_partitions(6).size() == 11);
  const auto p = oracle::partition_numbers(41);
  for (int n = 0; n <= 40; ++n) {
    CHECK(enumerate_partitions(n).size() == p[n].get_ui());
  }
  // Same set of partitions as the recursive oracle.
  auto mine = enumerate_partitions(12);
  auto theirs = oracle::partitions_of(12);
  std::sort(mine.begin(), mine.end());
  std::sort(theirs.begin(), theirs.end());
  CHECK(mine == theirs);
  for (const auto& part : enumerate_partitions(15)) {
    CHECK(std::is_sorted(part.rbegin(), part.rend()));
    CHECK(std::accumulate(part.begin(), part.end(), 0) == 15);
  }
}

TEST_CASE("enumeration guard", "[partitions]") {
  CHECK_THROWS_AS(enumerate_partitions(kEnumerationGuard + 1), ResourceLimit);
  CHECK_THROWS_AS(stats_table(kEnumerationGuard + 1, 11), ResourceLimit);
  int count = 0;
  for_each_partition(3, [&](const Partition&) { ++count; });
  CHECK(count == 3);
}

TEST_CASE("crank and rank", "[partitions]") {
  CHECK(crank({4}) == 4);
  CHECK(crank({1}) == -1);
  CHECK(crank({4, 1, 1}) == -1);
  CHECK(crank({3, 2}) == 3);
  CHECK(crank({3, 1}) == 0);
  CHECK(rank({4}) == 3);
  CHECK(rank({2, 2}) == 0);
  CHECK(rank({3, 1}) == 1);
  CHECK_THROWS_AS(crank({}), EmptyPartition);
  CHECK_THROWS_AS(rank({}), EmptyPartition);
  for (int n = 1; n <= 18; ++n) {
    for (const auto& part : oracle::partitions_of(n)) {
      CHECK(crank(part) == oracle::crank_of(part));
      CHECK(rank(part) == oracle::rank_of(part));
    }
  }
}

TEST_CASE("stats tables against the oracle", "[partitions]") {
  for (int m : {5, 7, 11}) {
    for (int n = 1; n <= 30; ++n) {
      const auto s = stats_table(n, m);
      const auto o = oracle::class_tables(n, m);
      CHECK(s.M == o.M);
      CHECK(s.N == o.N);
      CHECK(s.M_omega == o.Mw);
      CHECK(s.NT == o.NT);
    }
  }
  const auto six = stats_table(6, 11);
  for (int r = 0; r < 11; ++r) CHECK(six.M[r] == 1);
  CHECK(std::accumulate(six.M_omega.begin(), six.M_omega.end(), std::int64_t{0}) == 19);

  const auto one = stats_table(1, 11);
  for (int r = 0; r < 11; ++r) CHECK(one.M_omega[r] == (r == 10 ? 1 : 0));

  const auto zero = stats_table(0, 11);
  CHECK(zero.p == 1);
  CHECK(std::accumulate(zero.M.begin(), zero.M.end(), std::int64_t{0}) == 0);
}

TEST_CASE("class sums and crank symmetry", "[partitions]") {
  const auto p = oracle::partition_numbers(46);
  for (int m : {5, 7, 11}) {
    for (int n = 1; n <= 45; ++n) {
      const auto s = stats_table(n, m);
      const auto total = [](const std::vector<std::int64_t>& v) {
        return std::accumulate(v.begin(), v.end(), std::int64_t{0});
      };
      CHECK(total(s.M) == p[n].get_si());
      CHECK(total(s.N) == p[n].get_si());
      std::int64_t ones = 0;
      for (int k = 1; k <= n; ++k) ones += p[n - k].get_si();
      CHECK(total(s.M_omega) == ones);
      bool symmetric = true;
      for (int r = 1; r < m; ++r) symmetric = symmetric && s.M[r] == s.M[m - r];
      if (n == 1) {
        // (1) has crank -1 and nothing balances it.
        CHECK_FALSE(symmetric);
      } else {
        CHECK(symmetric);
      }
    }
  }
}

TEST_CASE("Theorem 1 at n = 17 and weighted differences", "[partitions]") {
  for (int n : {6, 17, 28, 39}) CHECK(weighted_mw_difference(stats_table(n, 11)) == 0);
}

TEST_CASE("p(n) from enumeration matches 1/J_1", "[partitions]") {
  const auto inv = invert(euler_product(1, 61));
  for (int n = 0; n <= 60; n += 6) {
    CHECK(inv.coeff(n) == static_cast<long>(enumerate_partitions(n).size()));
  }
}

TEST_CASE("congruence checks", "[partitions]") {
  auto nt1 = beck_congruence_check(CongruenceKind::NTWeighted, 5, 1, 46);
  CHECK(nt1.all_ok);
  CHECK(nt1.values.size() == 10);
  CHECK(beck_congruence_check(CongruenceKind::NTWeighted, 5, 4, 49).all_ok);
  CHECK(beck_congruence_check(CongruenceKind::MwWeighted, 5, 4, 49).all_ok);
  CHECK(beck_congruence_check(CongruenceKind::DeltaP, 5, 0, 60).all_ok);
  CHECK(beck_congruence_check(CongruenceKind::DeltaP, 7, 0, 60).all_ok);
  // A residue the congruence does not cover must not pass by accident.
  CHECK_FALSE(beck_congruence_check(CongruenceKind::NTWeighted, 5, 2, 40).all_ok);
}

TEST_CASE("stats JSON rows", "[partitions]") {
  const auto doc = nlohmann::json::parse(stats_to_json(stats_table(6, 11)));
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 11);
  for (const auto& row : doc) {
    CHECK(row.at("n") == 6);
    CHECK(row.at("m") == 11);
    CHECK(row.at("M") == 1);
    CHECK(row.contains("class"));
    CHECK(row.contains("N"));
    CHECK(row.contains("M_omega"));
    CHECK(row.contains("NT"));
  }
}
