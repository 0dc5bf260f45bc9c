#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qseries/errors.hpp"

namespace qseries {

// Parts in non-increasing order.
using Partition = std::vector<int>;

// Largest n enumerated without an explicit override; p(70) is about 4e6.
constexpr int kEnumerationGuard = 70;

// Calls `visit` once per partition of n (n = 0 yields the empty partition).
// Throws ResourceLimit when n exceeds the guard and allow_large is false.
void for_each_partition(int n, const std::function<void(const Partition&)>& visit,
                        bool allow_large = false);
std::vector<Partition> enumerate_partitions(int n, bool allow_large = false);

int ones(const Partition& p);
// Largest part if there are no ones, else (#parts > #ones) - #ones.
int crank(const Partition& p);
// Largest part minus number of parts.
int rank(const Partition& p);

// Residue-class tables for one n and modulus m; index r is the class r mod m.
struct PartitionStats {
  int n = 0;
  int m = 1;
  std::int64_t p = 0;                  // p(n)
  std::vector<std::int64_t> M;         // partitions with crank = r
  std::vector<std::int64_t> N;         // partitions with rank = r
  std::vector<std::int64_t> M_omega;   // ones summed over crank = r
  std::vector<std::int64_t> NT;        // parts summed over rank = r
};

// For n = 0 the class tables stay zero: crank and rank of the empty
// partition are undefined, and only p(0) = 1 is recorded.
PartitionStats stats_table(int n, int m, bool allow_large = false);

// JSON rows {n, m, class, M, N, M_omega, NT}.
std::string stats_to_json(const PartitionStats& s);

// Sum_{r=1}^{(m-1)/2} r [M_w(r,m,n) - M_w(m-r,m,n)].
std::int64_t weighted_mw_difference(const PartitionStats& s);

enum class CongruenceKind {
  NTWeighted,   // sum_{r=1}^{p-1} r NT(r,p,pn+t) mod p
  MwWeighted,   // sum_{r=1}^{p-1} r M_w(r,p,pn+t) mod p
  DeltaP,       // sum_{r=1}^{(p-1)/2} r [M_w(r,p,pn-d) - M_w(p-r,p,pn-d)], d = (p^2-1)/24
};

struct CongruenceValue {
  int n = 0;         // progression index
  int argument = 0;  // the partition number actually tabulated
  std::int64_t value = 0;
  bool ok = false;
};

struct CongruenceReport {
  CongruenceKind kind = CongruenceKind::NTWeighted;
  int p = 5;
  int residue = 0;
  std::vector<CongruenceValue> values;
  bool all_ok = true;
};

// Evaluates the congruence at every progression argument up to `max_arg`.
// `residue` is t for the weighted kinds and ignored for DeltaP. Values
// pass when they are 0 mod p (weighted kinds) or exactly 0 (DeltaP).
CongruenceReport beck_congruence_check(CongruenceKind kind, int p, int residue,
                                       int max_arg, bool allow_large = false);

}  // namespace qseries
