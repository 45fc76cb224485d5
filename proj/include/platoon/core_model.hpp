#pragma once

#include "platoon/rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace platoon {

enum class TruckType { Electric, Fuel };

// Truck ids are 1-based and consecutive; electric trucks come first.
using TruckId = int;

// Fleet composition, per-type follower benefit rates, and the platoon
// size limit. Construction enforces: at least two trucks, positive rates
// with eps_e <= eps_f, and a size limit of at least 2.
struct FleetSpec {
  int n_e;
  int n_f;
  Rational eps_e;  // saving rate of an electric follower, currency per km
  Rational eps_f;  // saving rate of a fuel follower, currency per km
  int max_size;    // platoon size limit

  FleetSpec(int n_e, int n_f, Rational eps_e, Rational eps_f, int max_size);

  int total() const { return n_e + n_f; }
  TruckType type_of(TruckId id) const;
};

// Type-aggregated coalition. Counts are a sufficient statistic for the
// coalition's value, which is what collapses the exponential deviation
// families to O(M^2) candidates.
struct CoalitionSignature {
  int c_e = 0;
  int c_f = 0;

  int size() const { return c_e + c_f; }
  auto operator<=>(const CoalitionSignature&) const = default;
};

struct Platoon {
  std::vector<TruckId> members;  // insertion order matters to the builder
  TruckId leader = 0;
};

struct CoalitionStructure {
  FleetSpec fleet;
  std::vector<Platoon> platoons;
};

// payoffs[i - 1] is the payoff of truck i, currency per km.
using PayoffVector = std::vector<Rational>;

struct Violation {
  enum class Kind {
    UnknownTruck,
    SizeBelowMin,
    SizeAboveMax,
    LeaderNotMember,
    Disjointness,
    Coverage,
  };
  Kind kind;
  int platoon_index = -1;  // -1 for structure-level findings
  std::string detail;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

CoalitionSignature signature_of(const std::vector<TruckId>& members,
                                const FleetSpec& fleet);

// Best benefit the coalition can secure internally: an electric leader is
// optimal whenever one is present, every follower contributes its type
// rate, and coalitions of size <= 1 are worth zero. Rejects signatures
// that exceed the size limit or the fleet composition.
Rational coalition_value(const CoalitionSignature& sig, const FleetSpec& fleet);

// Benefit when the leader's type is imposed instead of optimized over.
Rational leader_fixed_value(const CoalitionSignature& sig, TruckType leader,
                            const FleetSpec& fleet);

TruckType optimal_leader_type(const CoalitionSignature& sig);

// Value of one platoon under its designated leader.
Rational platoon_value(const Platoon& platoon, const FleetSpec& fleet);

// Sum of platoon values under designated leaders. Throws ValidationError
// when the structure is not a valid size-bounded partition.
Rational structure_value(const CoalitionStructure& structure);

// Empty result iff the platoons are pairwise disjoint, cover every truck,
// respect the size bounds [2, max_size], and contain their leaders.
// Violations are data, not errors.
std::vector<Violation> validate_structure(const CoalitionStructure& structure);

std::string format_structure(const CoalitionStructure& structure);
std::string violation_text(const Violation& violation);

}  // namespace platoon
