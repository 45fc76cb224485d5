#include "platoon/formation.hpp"

#include <algorithm>

namespace platoon {

namespace {

// Internal consistency checks for conditions the construction proof
// guarantees; a failure indicates a bug, not bad input.
void internal_check(bool condition, const char* message) {
  if (!condition) throw std::logic_error(message);
}

}  // namespace

InfeasibleError::InfeasibleError(FeasibilityReport report)
    : std::runtime_error("infeasible: " + report.reason), report_(std::move(report)) {}

FeasibilityReport feasibility(int n, int m) {
  if (n < 2) throw std::domain_error("fleet size must be at least 2");
  if (m < 2) throw std::domain_error("platoon size limit must be at least 2");

  FeasibilityReport report;
  if (m >= n) {
    report.feasible = true;
    report.p_min = report.p_max = 1;
    return report;
  }
  const int p_min = (n + m - 1) / m;
  const int p_max = n / 2;
  if (p_min <= p_max) {
    report.feasible = true;
    report.p_min = p_min;
    report.p_max = p_max;
    return report;
  }
  report.feasible = false;
  if (m == 2 && n % 2 == 1) {
    report.reason = "M=2 requires even N";
  } else {
    report.reason = "no platoon count fits between ceil(N/M)=" + std::to_string(p_min) +
                    " and floor(N/2)=" + std::to_string(p_max);
  }
  return report;
}

FeasibilityReport feasibility(const FleetSpec& fleet) {
  return feasibility(fleet.total(), fleet.max_size);
}

FormationCounts optimal_counts(const FleetSpec& fleet) {
  FeasibilityReport report = feasibility(fleet);
  if (!report.feasible) throw InfeasibleError(std::move(report));

  FormationCounts counts;
  counts.p_star = report.p_min;  // fewer platoons means fewer zero-benefit leaders
  counts.l_e_star = std::min(fleet.n_e, counts.p_star);
  counts.l_f_star = counts.p_star - counts.l_e_star;
  counts.f_e = fleet.n_e - counts.l_e_star;
  counts.f_f = fleet.n_f - counts.l_f_star;
  internal_check(counts.f_f >= 0, "fuel leader demand exceeds fuel truck count");
  counts.v_star = fleet.eps_e * counts.f_e + fleet.eps_f * counts.f_f;
  return counts;
}

CoalitionStructure build_optimal_structure(const FleetSpec& fleet) {
  const FormationCounts counts = optimal_counts(fleet);
  const int p = counts.p_star;

  std::vector<TruckId> leaders;
  leaders.reserve(p);
  for (TruckId id = 1; id <= counts.l_e_star; ++id) leaders.push_back(id);
  for (TruckId id = fleet.n_e + 1; id <= fleet.n_e + counts.l_f_star; ++id)
    leaders.push_back(id);

  std::vector<TruckId> pool;  // unassigned followers, ascending ids
  pool.reserve(fleet.total() - p);
  for (TruckId id = 1; id <= fleet.total(); ++id)
    if (std::find(leaders.begin(), leaders.end(), id) == leaders.end()) pool.push_back(id);
  std::size_t next = 0;

  std::vector<Platoon> platoons(p);
  for (int m = 0; m < p; ++m) {
    platoons[m].leader = leaders[m];
    platoons[m].members.push_back(leaders[m]);
  }

  for (int m = 0; m + 1 < p; ++m) {
    while (static_cast<int>(platoons[m].members.size()) < fleet.max_size) {
      // Pool sufficiency: (P*-1)(M-1) <= N - P* whenever P* = ceil(N/M).
      internal_check(next < pool.size(), "follower pool exhausted before the last platoon");
      platoons[m].members.push_back(pool[next++]);
    }
  }

  Platoon& last = platoons[p - 1];
  while (static_cast<int>(last.members.size()) < fleet.max_size && next < pool.size())
    last.members.push_back(pool[next++]);

  if (last.members.size() == 1) {
    int donor = -1;
    for (int m = p - 2; m >= 0; --m) {
      if (platoons[m].members.size() > 2) {
        donor = m;
        break;
      }
    }
    internal_check(donor >= 0, "no donor platoon available for the trailing singleton");
    last.members.push_back(platoons[donor].members.back());
    platoons[donor].members.pop_back();
  }

  CoalitionStructure structure{fleet, std::move(platoons)};
  internal_check(validate_structure(structure).empty(),
                 "constructed structure failed validation");
  return structure;
}

}  // namespace platoon
