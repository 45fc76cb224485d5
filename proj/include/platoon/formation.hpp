#pragma once

#include "platoon/core_model.hpp"

namespace platoon {

struct FeasibilityReport {
  bool feasible = false;
  int p_min = 0;  // smallest admissible platoon count
  int p_max = 0;  // largest admissible platoon count
  std::string reason;  // set when infeasible
};

class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(FeasibilityReport report);
  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

struct FormationCounts {
  int p_star = 0;    // optimal platoon count
  int l_e_star = 0;  // electric leaders
  int l_f_star = 0;  // fuel leaders
  int f_e = 0;       // electric followers
  int f_f = 0;       // fuel followers
  Rational v_star;   // best attainable fleet-wide benefit
};

// A partition into platoons of size 2..m exists iff some platoon count P
// satisfies ceil(n/m) <= P <= floor(n/2). With m >= n the grand coalition
// is admitted instead and the only structure has a single platoon.
FeasibilityReport feasibility(int n, int m);
FeasibilityReport feasibility(const FleetSpec& fleet);

// Closed-form optimum: the fewest feasible platoons, electric trucks
// preferred as leaders. Throws InfeasibleError when no structure exists.
FormationCounts optimal_counts(const FleetSpec& fleet);

// Deterministic constructor of one benefit-maximal structure. The lowest-id
// trucks of each leader type lead; all platoons but the last fill to the
// size limit with the lowest-id unassigned followers; the last platoon
// takes the remainder, borrowing the most recently placed follower of the
// highest-index oversized platoon if it would otherwise stay a singleton.
CoalitionStructure build_optimal_structure(const FleetSpec& fleet);

}  // namespace platoon
