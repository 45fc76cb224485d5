#pragma once

#include "platoon/core_model.hpp"

#include <optional>
#include <string_view>

namespace platoon {

// Uniform payoff per truck type: every electric truck receives x_e and
// every fuel truck x_f.
struct TypeAllocation {
  Rational x_e;
  Rational x_f;
};

struct LeastCoreSolution {
  TypeAllocation allocation;  // x_e is the midpoint of [x_e_low, x_e_high]
  Rational epsilon_star;      // least-core radius
  Rational x_e_low;           // optimal x_e values form a closed interval
  Rational x_e_high;
  std::vector<CoalitionSignature> binding;  // constraints tight at the returned point
};

struct ExcessReport {
  Rational epsilon;  // max(0, largest deviation excess)
  std::vector<CoalitionSignature> worst;  // argmax signatures, ascending
};

struct StabilityReport {
  Rational epsilon_of_x;
  Rational v_total;
  Rational index_percent;  // (1 - epsilon/v_total) * 100
  std::vector<CoalitionSignature> worst;
};

enum class EfficiencyMode { Strict, Aggregate };

struct CoreViolation {
  enum class Kind { PlatoonEfficiency, FleetEfficiency, Deviation, Negativity };
  Kind kind;
  // Platoon index for PlatoonEfficiency, truck id for Negativity.
  int index = -1;
  CoalitionSignature signature;  // meaningful for Deviation
  Rational slack;                // negative when violated
};

struct CoreMembershipReport {
  bool in_core = false;
  std::vector<CoreViolation> violations;
};

enum class BaselineScheme {
  FleetEqualSplit,    // F-ES
  PlatoonEqualSplit,  // P-ES
  FollowerOnly,       // FO
  TypeProportional,   // TP
  LeaderSubsidy,      // LS
};

std::optional<BaselineScheme> parse_scheme(std::string_view name);
std::string_view scheme_name(BaselineScheme scheme);

// All candidate deviating coalitions, collapsed by type: every (c_e, c_f)
// with 2 <= c_e + c_f <= min(max_size, N) that fits the fleet composition,
// in ascending lexicographic order.
std::vector<CoalitionSignature> deviation_signatures(const FleetSpec& fleet);

// Minimizes the least-core radius over type-based allocations:
//
//   min eps  s.t.  x_e N_e + x_f N_f = v_total,
//                  x_e C_e + x_f C_f >= v(C) - eps   for every signature,
//                  x_e, x_f >= 0.
//
// The efficiency equality eliminates one variable, leaving the minimax of
// finitely many affine functions of x_e alone; the minimum is attained at
// a pairwise intersection or a domain endpoint, so enumerating those
// points solves the program exactly. The optimal x_e set is a closed
// interval; its midpoint is returned along with the interval itself.
LeastCoreSolution solve_type_least_core(const FleetSpec& fleet, const Rational& v_total);

PayoffVector induced_payoffs(const TypeAllocation& allocation, const FleetSpec& fleet);

// Minimal uniform relaxation making every deviation constraint hold for
// the given payoff vector. For each signature the cheapest concrete
// coalition takes the c_e / c_f smallest payoffs per type, so scanning
// signatures reproduces the exact minimum over all concrete subsets.
ExcessReport epsilon_of(const PayoffVector& payoffs, const FleetSpec& fleet);

// Membership check against the structure's core. Strict mode enforces
// per-platoon efficiency; Aggregate mode only requires the fleet-level
// total to be distributed. Both check every deviation constraint and
// individual rationality. `tolerance` bounds the acceptable violation.
CoreMembershipReport cs_core_check(const PayoffVector& payoffs,
                                   const CoalitionStructure& structure,
                                   EfficiencyMode mode,
                                   const Rational& tolerance = Rational(0));

// (1 - epsilon/v_total) * 100; requires v_total > 0.
Rational stability_index(const Rational& epsilon_of_x, const Rational& v_total);

StabilityReport stability_report(const PayoffVector& payoffs, const FleetSpec& fleet,
                                 const Rational& v_total);

// The five reference schemes. `lambda` must be present exactly for
// LeaderSubsidy and lie in (0, 1].
PayoffVector baseline_allocate(BaselineScheme scheme, const std::optional<Rational>& lambda,
                               const CoalitionStructure& structure);

}  // namespace platoon
