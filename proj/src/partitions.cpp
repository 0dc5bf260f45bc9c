#include "qseries/partitions.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace qseries {

namespace {

void check_guard(int n, bool allow_large) {
  if (n < 0) throw DomainError("partition size must be nonnegative");
  if (n > kEnumerationGuard && !allow_large) {
    throw ResourceLimit("n = " + std::to_string(n) +
                        " exceeds the enumeration guard of " +
                        std::to_string(kEnumerationGuard));
  }
}

void recurse(int remaining, int max_part, Partition& cur,
             const std::function<void(const Partition&)>& visit) {
  if (remaining == 0) {
    visit(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    recurse(remaining - part, part, cur, visit);
    cur.pop_back();
  }
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

void for_each_partition(int n, const std::function<void(const Partition&)>& visit,
                        bool allow_large) {
  check_guard(n, allow_large);
  Partition cur;
  cur.reserve(static_cast<std::size_t>(n));
  recurse(n, n, cur, visit);
}

std::vector<Partition> enumerate_partitions(int n, bool allow_large) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); }, allow_large);
  return out;
}

int ones(const Partition& p) {
  return static_cast<int>(std::count(p.begin(), p.end(), 1));
}

int crank(const Partition& p) {
  if (p.empty()) throw EmptyPartition("crank of the empty partition is undefined");
  const int w = ones(p);
  if (w == 0) return p.front();
  const int mu = static_cast<int>(
      std::count_if(p.begin(), p.end(), [w](int part) { return part > w; }));
  return mu - w;
}

int rank(const Partition& p) {
  if (p.empty()) throw EmptyPartition("rank of the empty partition is undefined");
  return p.front() - static_cast<int>(p.size());
}

PartitionStats stats_table(int n, int m, bool allow_large) {
  if (m < 1) throw DomainError("modulus must be positive");
  PartitionStats s;
  s.n = n;
  s.m = m;
  const auto size = static_cast<std::size_t>(m);
  s.M.assign(size, 0);
  s.N.assign(size, 0);
  s.M_omega.assign(size, 0);
  s.NT.assign(size, 0);
  for_each_partition(
      n,
      [&](const Partition& p) {
        ++s.p;
        if (p.empty()) return;
        const auto c = static_cast<std::size_t>(mod(crank(p), m));
        const auto r = static_cast<std::size_t>(mod(rank(p), m));
        s.M[c] += 1;
        s.M_omega[c] += ones(p);
        s.N[r] += 1;
        s.NT[r] += static_cast<std::int64_t>(p.size());
      },
      allow_large);
  return s;
}

std::string stats_to_json(const PartitionStats& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < s.m; ++r) {
    const auto i = static_cast<std::size_t>(r);
    rows.push_back({{"n", s.n},
                    {"m", s.m},
                    {"class", r},
                    {"M", s.M[i]},
                    {"N", s.N[i]},
                    {"M_omega", s.M_omega[i]},
                    {"NT", s.NT[i]}});
  }
  return rows.dump();
}

std::int64_t weighted_mw_difference(const PartitionStats& s) {
  std::int64_t total = 0;
  for (int r = 1; 2 * r < s.m; ++r) {
    total += r * (s.M_omega[static_cast<std::size_t>(r)] -
                  s.M_omega[static_cast<std::size_t>(s.m - r)]);
  }
  return total;
}

CongruenceReport beck_congruence_check(CongruenceKind kind, int p, int residue,
                                       int max_arg, bool allow_large) {
  if (p != 5 && p != 7 && p != 11) throw DomainError("p must be 5, 7 or 11");
  CongruenceReport report;
  report.kind = kind;
  report.p = p;
  const int delta = (p * p - 1) / 24;
  report.residue = kind == CongruenceKind::DeltaP ? mod(-delta, p) : residue;
  for (int n = 0;; ++n) {
    const int arg = kind == CongruenceKind::DeltaP ? p * n - delta : p * n + residue;
    if (arg > max_arg) break;
    if (arg < 1) continue;
    const PartitionStats s = stats_table(arg, p, allow_large);
    CongruenceValue v;
    v.n = n;
    v.argument = arg;
    switch (kind) {
      case CongruenceKind::NTWeighted:
        for (int r = 1; r < p; ++r) v.value += r * s.NT[static_cast<std::size_t>(r)];
        v.ok = v.value % p == 0;
        break;
      case CongruenceKind::MwWeighted:
        for (int r = 1; r < p; ++r) {
          v.value += r * s.M_omega[static_cast<std::size_t>(r)];
        }
        v.ok = v.value % p == 0;
        break;
      case CongruenceKind::DeltaP:
        v.value = weighted_mw_difference(s);
        v.ok = v.value == 0;
        break;
    }
    report.all_ok = report.all_ok && v.ok;
    report.values.push_back(v);
  }
  return report;
}

}  // namespace qseries
