#pragma once

#include "platoon/core_model.hpp"

#include <map>

namespace platoon::oracle {

// Hard stops before the combinatorics get out of hand; every entry point
// takes the guard explicitly so callers can raise it on purpose.
inline constexpr int kDefaultPartitionGuard = 16;
inline constexpr int kDefaultSubsetGuard = 12;

class ResourceLimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A coalition structure collapsed to its multiset of type signatures,
// stored in non-increasing lexicographic order. Trucks of a type are
// interchangeable for benefit purposes, so these classes are the unit of
// exhaustive enumeration.
struct SignaturePartition {
  std::vector<CoalitionSignature> parts;
  bool operator==(const SignaturePartition&) const = default;
};

struct BenefitHistogram {
  std::map<Rational, long> entries;  // benefit -> number of signature partitions

  std::vector<Rational> distinct_values() const;
  long total_count() const;
};

struct BruteForceBest {
  bool feasible = false;
  Rational max_benefit;
  std::vector<SignaturePartition> argmax;
};

// Every multiset of signatures with part sizes in [2, min(max_size, N)]
// whose type counts sum to the fleet's, each exactly once. Empty iff no
// feasible structure exists.
std::vector<SignaturePartition> enumerate_signature_partitions(
    const FleetSpec& fleet, int guard = kDefaultPartitionGuard);

Rational partition_benefit(const SignaturePartition& partition, const FleetSpec& fleet);

BruteForceBest brute_force_best(const FleetSpec& fleet, int guard = kDefaultPartitionGuard);

// Minimal relaxation for the payoff vector by explicit subset enumeration
// over all 2^N coalitions of admissible size; the ground truth for the
// type-signature reduction.
Rational brute_force_epsilon(const PayoffVector& payoffs, const FleetSpec& fleet,
                             int guard = kDefaultSubsetGuard);

BenefitHistogram benefit_distribution(const FleetSpec& fleet,
                                      int guard = kDefaultPartitionGuard);

// Deterministic concrete realization: each part takes the lowest unused
// ids of each type, and the lowest id of the optimal leader type leads.
CoalitionStructure realize(const SignaturePartition& partition, const FleetSpec& fleet);

}  // namespace platoon::oracle
