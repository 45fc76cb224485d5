#include "platoon/oracle.hpp"

#include <algorithm>
#include <bit>

namespace platoon::oracle {

std::vector<Rational> BenefitHistogram::distinct_values() const {
  std::vector<Rational> values;
  values.reserve(entries.size());
  for (const auto& [benefit, count] : entries) values.push_back(benefit);
  return values;
}

long BenefitHistogram::total_count() const {
  long total = 0;
  for (const auto& [benefit, count] : entries) total += count;
  return total;
}

namespace {

void check_partition_guard(const FleetSpec& fleet, int guard) {
  if (fleet.total() > guard)
    throw ResourceLimitError("fleet size " + std::to_string(fleet.total()) +
                             " exceeds the partition enumeration guard " +
                             std::to_string(guard) + "; pass a larger guard explicitly");
}

// Parts are generated in non-increasing lexicographic order, which makes
// each multiset appear exactly once.
void recurse(int remaining_e, int remaining_f, int cap, CoalitionSignature bound,
             std::vector<CoalitionSignature>& stack,
             std::vector<SignaturePartition>& out) {
  if (remaining_e == 0 && remaining_f == 0) {
    out.push_back({stack});
    return;
  }
  for (int c_e = std::min(remaining_e, bound.c_e); c_e >= 0; --c_e) {
    int cf_high = std::min(remaining_f, cap - c_e);
    if (c_e == bound.c_e) cf_high = std::min(cf_high, bound.c_f);
    const int cf_low = std::max(0, 2 - c_e);
    for (int c_f = cf_high; c_f >= cf_low; --c_f) {
      stack.push_back({c_e, c_f});
      recurse(remaining_e - c_e, remaining_f - c_f, cap, {c_e, c_f}, stack, out);
      stack.pop_back();
    }
  }
}

}  // namespace

std::vector<SignaturePartition> enumerate_signature_partitions(const FleetSpec& fleet,
                                                               int guard) {
  check_partition_guard(fleet, guard);
  const int cap = std::min(fleet.max_size, fleet.total());
  std::vector<SignaturePartition> out;
  std::vector<CoalitionSignature> stack;
  recurse(fleet.n_e, fleet.n_f, cap, {fleet.n_e, fleet.n_f}, stack, out);
  return out;
}

Rational partition_benefit(const SignaturePartition& partition, const FleetSpec& fleet) {
  Rational total = 0;
  for (const CoalitionSignature& part : partition.parts)
    total += coalition_value(part, fleet);
  return total;
}

BruteForceBest brute_force_best(const FleetSpec& fleet, int guard) {
  BruteForceBest best;
  for (SignaturePartition& partition : enumerate_signature_partitions(fleet, guard)) {
    Rational benefit = partition_benefit(partition, fleet);
    if (!best.feasible || benefit > best.max_benefit) {
      best.feasible = true;
      best.max_benefit = std::move(benefit);
      best.argmax.clear();
      best.argmax.push_back(std::move(partition));
    } else if (benefit == best.max_benefit) {
      best.argmax.push_back(std::move(partition));
    }
  }
  return best;
}

Rational brute_force_epsilon(const PayoffVector& payoffs, const FleetSpec& fleet,
                             int guard) {
  const int n = fleet.total();
  if (n > guard)
    throw ResourceLimitError("fleet size " + std::to_string(n) +
                             " exceeds the subset enumeration guard " +
                             std::to_string(guard) + "; pass a larger guard explicitly");
  if (n > 25)
    throw ResourceLimitError("subset enumeration is capped at 25 trucks");
  if (static_cast<int>(payoffs.size()) != n)
    throw std::domain_error("payoff vector length does not match fleet size");

  const int cap = std::min(fleet.max_size, n);
  Rational best = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (size < 2 || size > cap) continue;
    CoalitionSignature sig;
    Rational paid = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      if (i < fleet.n_e) ++sig.c_e;
      else ++sig.c_f;
      paid += payoffs[i];
    }
    best = std::max(best, Rational(coalition_value(sig, fleet) - paid));
  }
  return best;
}

BenefitHistogram benefit_distribution(const FleetSpec& fleet, int guard) {
  BenefitHistogram histogram;
  for (const SignaturePartition& partition : enumerate_signature_partitions(fleet, guard))
    ++histogram.entries[partition_benefit(partition, fleet)];
  return histogram;
}

CoalitionStructure realize(const SignaturePartition& partition, const FleetSpec& fleet) {
  int sum_e = 0, sum_f = 0;
  for (const CoalitionSignature& part : partition.parts) {
    sum_e += part.c_e;
    sum_f += part.c_f;
  }
  if (sum_e != fleet.n_e || sum_f != fleet.n_f)
    throw std::domain_error("signature partition does not match the fleet composition");

  TruckId next_e = 1;
  TruckId next_f = fleet.n_e + 1;
  std::vector<Platoon> platoons;
  platoons.reserve(partition.parts.size());
  for (const CoalitionSignature& part : partition.parts) {
    Platoon platoon;
    for (int i = 0; i < part.c_e; ++i) platoon.members.push_back(next_e++);
    for (int i = 0; i < part.c_f; ++i) platoon.members.push_back(next_f++);
    // Electric ids precede fuel ids, so the first member has the optimal
    // leader type.
    platoon.leader = platoon.members.front();
    platoons.push_back(std::move(platoon));
  }
  return {fleet, std::move(platoons)};
}

}  // namespace platoon::oracle
