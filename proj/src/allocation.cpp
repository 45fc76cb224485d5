#include "platoon/allocation.hpp"

#include <algorithm>
#include <limits>

namespace platoon {

std::optional<BaselineScheme> parse_scheme(std::string_view name) {
  if (name == "F-ES") return BaselineScheme::FleetEqualSplit;
  if (name == "P-ES") return BaselineScheme::PlatoonEqualSplit;
  if (name == "FO") return BaselineScheme::FollowerOnly;
  if (name == "TP") return BaselineScheme::TypeProportional;
  if (name == "LS") return BaselineScheme::LeaderSubsidy;
  return std::nullopt;
}

std::string_view scheme_name(BaselineScheme scheme) {
  switch (scheme) {
    case BaselineScheme::FleetEqualSplit: return "F-ES";
    case BaselineScheme::PlatoonEqualSplit: return "P-ES";
    case BaselineScheme::FollowerOnly: return "FO";
    case BaselineScheme::TypeProportional: return "TP";
    case BaselineScheme::LeaderSubsidy: return "LS";
  }
  return "?";
}

std::vector<CoalitionSignature> deviation_signatures(const FleetSpec& fleet) {
  const int cap = std::min(fleet.max_size, fleet.total());
  std::vector<CoalitionSignature> out;
  for (int c_e = 0; c_e <= fleet.n_e; ++c_e) {
    for (int c_f = 0; c_f <= fleet.n_f; ++c_f) {
      const int size = c_e + c_f;
      if (size >= 2 && size <= cap) out.push_back({c_e, c_f});
    }
  }
  return out;
}

namespace {

// Tight constraints at a candidate allocation, in signature order.
std::vector<CoalitionSignature> binding_signatures(
    const std::vector<CoalitionSignature>& sigs, const FleetSpec& fleet,
    const TypeAllocation& allocation, const Rational& epsilon) {
  std::vector<CoalitionSignature> out;
  for (const CoalitionSignature& sig : sigs) {
    Rational excess = coalition_value(sig, fleet) - allocation.x_e * sig.c_e -
                      allocation.x_f * sig.c_f;
    if (excess == epsilon) out.push_back(sig);
  }
  return out;
}

LeastCoreSolution solve_one_type(const FleetSpec& fleet, const Rational& v_total,
                                 const std::vector<CoalitionSignature>& sigs) {
  // The efficiency constraint pins the present type's payoff; the absent
  // type's payoff is reported as zero.
  const bool only_electric = fleet.n_f == 0;
  const Rational share = v_total / (only_electric ? fleet.n_e : fleet.n_f);
  TypeAllocation allocation = only_electric ? TypeAllocation{share, 0}
                                            : TypeAllocation{0, share};
  Rational epsilon = 0;
  for (const CoalitionSignature& sig : sigs) {
    Rational excess = coalition_value(sig, fleet) - allocation.x_e * sig.c_e -
                      allocation.x_f * sig.c_f;
    epsilon = std::max(epsilon, excess);
  }
  LeastCoreSolution solution;
  solution.allocation = allocation;
  solution.epsilon_star = epsilon;
  solution.x_e_low = solution.x_e_high = allocation.x_e;
  solution.binding = binding_signatures(sigs, fleet, allocation, epsilon);
  return solution;
}

}  // namespace

LeastCoreSolution solve_type_least_core(const FleetSpec& fleet, const Rational& v_total) {
  if (v_total < 0) throw std::domain_error("total benefit must be nonnegative");
  const std::vector<CoalitionSignature> sigs = deviation_signatures(fleet);
  if (fleet.n_e == 0 || fleet.n_f == 0) return solve_one_type(fleet, v_total, sigs);

  // Substitute x_f = (v_total - N_e x_e) / N_f. Each deviation constraint
  // becomes eps >= a x_e + b; the x_f >= 0 bound becomes x_e <= v_total/N_e.
  struct Line {
    Rational a;
    Rational b;
  };
  std::vector<Line> lines;
  lines.reserve(sigs.size() + 1);
  for (const CoalitionSignature& sig : sigs) {
    Rational a = Rational(static_cast<long>(sig.c_f) * fleet.n_e, fleet.n_f) - sig.c_e;
    Rational b = coalition_value(sig, fleet) - v_total * sig.c_f / fleet.n_f;
    lines.push_back({std::move(a), std::move(b)});
  }
  lines.push_back({0, 0});  // the eps >= 0 bound joins the envelope

  const Rational lo = 0;
  const Rational hi = v_total / fleet.n_e;

  // The upper envelope of affine functions is convex piecewise linear, so
  // its minimum over [lo, hi] is attained at a breakpoint or an endpoint,
  // and every breakpoint is a pairwise intersection.
  std::vector<Rational> candidates{lo, hi};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].a == lines[j].a) continue;
      Rational x = (lines[j].b - lines[i].b) / (lines[i].a - lines[j].a);
      if (lo <= x && x <= hi) candidates.push_back(std::move(x));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto envelope = [&lines](const Rational& x) {
    Rational best = lines.front().a * x + lines.front().b;
    for (std::size_t k = 1; k < lines.size(); ++k)
      best = std::max(best, Rational(lines[k].a * x + lines[k].b));
    return best;
  };

  Rational epsilon = envelope(candidates.front());
  for (std::size_t k = 1; k < candidates.size(); ++k)
    epsilon = std::min(epsilon, envelope(candidates[k]));

  // The argmin set is a closed interval whose endpoints are candidates.
  Rational x_low, x_high;
  bool found = false;
  for (const Rational& x : candidates) {
    if (envelope(x) != epsilon) continue;
    if (!found) {
      x_low = x;
      found = true;
    }
    x_high = x;
  }

  LeastCoreSolution solution;
  solution.x_e_low = x_low;
  solution.x_e_high = x_high;
  solution.allocation.x_e = (x_low + x_high) / 2;
  solution.allocation.x_f = (v_total - solution.allocation.x_e * fleet.n_e) / fleet.n_f;
  solution.epsilon_star = epsilon;
  solution.binding = binding_signatures(sigs, fleet, solution.allocation, epsilon);
  return solution;
}

PayoffVector induced_payoffs(const TypeAllocation& allocation, const FleetSpec& fleet) {
  PayoffVector payoffs;
  payoffs.reserve(fleet.total());
  payoffs.insert(payoffs.end(), fleet.n_e, allocation.x_e);
  payoffs.insert(payoffs.end(), fleet.n_f, allocation.x_f);
  return payoffs;
}

ExcessReport epsilon_of(const PayoffVector& payoffs, const FleetSpec& fleet) {
  if (static_cast<int>(payoffs.size()) != fleet.total())
    throw std::domain_error("payoff vector length " + std::to_string(payoffs.size()) +
                            " does not match fleet size " + std::to_string(fleet.total()));
  for (const Rational& p : payoffs)
    if (p < 0) throw std::domain_error("payoffs must be nonnegative");

  // Prefix sums of the sorted per-type payoffs: prefix[k] is the cheapest
  // way to recruit k trucks of that type.
  std::vector<Rational> electric(payoffs.begin(), payoffs.begin() + fleet.n_e);
  std::vector<Rational> fuel(payoffs.begin() + fleet.n_e, payoffs.end());
  std::sort(electric.begin(), electric.end());
  std::sort(fuel.begin(), fuel.end());
  std::vector<Rational> prefix_e(electric.size() + 1, Rational(0));
  std::vector<Rational> prefix_f(fuel.size() + 1, Rational(0));
  for (std::size_t i = 0; i < electric.size(); ++i) prefix_e[i + 1] = prefix_e[i] + electric[i];
  for (std::size_t i = 0; i < fuel.size(); ++i) prefix_f[i + 1] = prefix_f[i] + fuel[i];

  ExcessReport report;
  bool first = true;
  Rational best;
  for (const CoalitionSignature& sig : deviation_signatures(fleet)) {
    Rational excess = coalition_value(sig, fleet) - prefix_e[sig.c_e] - prefix_f[sig.c_f];
    if (first || excess > best) {
      best = excess;
      report.worst = {sig};
      first = false;
    } else if (excess == best) {
      report.worst.push_back(sig);
    }
  }
  report.epsilon = std::max(Rational(0), best);
  return report;
}

CoreMembershipReport cs_core_check(const PayoffVector& payoffs,
                                   const CoalitionStructure& structure,
                                   EfficiencyMode mode, const Rational& tolerance) {
  if (auto violations = validate_structure(structure); !violations.empty())
    throw ValidationError(std::move(violations));
  const FleetSpec& fleet = structure.fleet;
  if (static_cast<int>(payoffs.size()) != fleet.total())
    throw std::domain_error("payoff vector length does not match fleet size");

  CoreMembershipReport report;

  for (int id = 1; id <= fleet.total(); ++id) {
    if (payoffs[id - 1] < -tolerance)
      report.violations.push_back({CoreViolation::Kind::Negativity, id, {}, payoffs[id - 1]});
  }

  if (mode == EfficiencyMode::Strict) {
    for (std::size_t m = 0; m < structure.platoons.size(); ++m) {
      Rational sum = 0;
      for (TruckId id : structure.platoons[m].members) sum += payoffs[id - 1];
      Rational slack = sum - coalition_value(signature_of(structure.platoons[m].members, fleet), fleet);
      if (abs(slack) > tolerance)
        report.violations.push_back(
            {CoreViolation::Kind::PlatoonEfficiency, static_cast<int>(m), {}, slack});
    }
  } else {
    Rational sum = 0;
    for (const Rational& p : payoffs) sum += p;
    Rational slack = sum - structure_value(structure);
    if (abs(slack) > tolerance)
      report.violations.push_back({CoreViolation::Kind::FleetEfficiency, -1, {}, slack});
  }

  std::vector<Rational> electric(payoffs.begin(), payoffs.begin() + fleet.n_e);
  std::vector<Rational> fuel(payoffs.begin() + fleet.n_e, payoffs.end());
  std::sort(electric.begin(), electric.end());
  std::sort(fuel.begin(), fuel.end());
  std::vector<Rational> prefix_e(electric.size() + 1, Rational(0));
  std::vector<Rational> prefix_f(fuel.size() + 1, Rational(0));
  for (std::size_t i = 0; i < electric.size(); ++i) prefix_e[i + 1] = prefix_e[i] + electric[i];
  for (std::size_t i = 0; i < fuel.size(); ++i) prefix_f[i + 1] = prefix_f[i] + fuel[i];

  for (const CoalitionSignature& sig : deviation_signatures(fleet)) {
    Rational slack = prefix_e[sig.c_e] + prefix_f[sig.c_f] - coalition_value(sig, fleet);
    if (slack < -tolerance)
      report.violations.push_back({CoreViolation::Kind::Deviation, -1, sig, slack});
  }

  report.in_core = report.violations.empty();
  return report;
}

Rational stability_index(const Rational& epsilon_of_x, const Rational& v_total) {
  if (!(v_total > 0)) throw std::domain_error("stability index needs a positive total benefit");
  if (epsilon_of_x < 0) throw std::domain_error("relaxation must be nonnegative");
  return (1 - epsilon_of_x / v_total) * 100;
}

StabilityReport stability_report(const PayoffVector& payoffs, const FleetSpec& fleet,
                                 const Rational& v_total) {
  ExcessReport excess = epsilon_of(payoffs, fleet);
  StabilityReport report;
  report.epsilon_of_x = excess.epsilon;
  report.v_total = v_total;
  report.index_percent = stability_index(excess.epsilon, v_total);
  report.worst = std::move(excess.worst);
  return report;
}

PayoffVector baseline_allocate(BaselineScheme scheme, const std::optional<Rational>& lambda,
                               const CoalitionStructure& structure) {
  if (scheme == BaselineScheme::LeaderSubsidy) {
    if (!lambda) throw std::domain_error("the LS scheme requires a subsidy fraction lambda");
    if (!(*lambda > 0 && *lambda <= 1))
      throw std::domain_error("lambda must lie in (0, 1]");
  } else if (lambda) {
    throw std::domain_error("lambda is only meaningful for the LS scheme");
  }
  if (auto violations = validate_structure(structure); !violations.empty())
    throw ValidationError(std::move(violations));

  const FleetSpec& fleet = structure.fleet;
  PayoffVector payoffs(fleet.total(), Rational(0));

  if (scheme == BaselineScheme::FleetEqualSplit) {
    const Rational share = structure_value(structure) / fleet.total();
    for (Rational& p : payoffs) p = share;
    return payoffs;
  }

  for (const Platoon& platoon : structure.platoons) {
    const Rational value = platoon_value(platoon, fleet);
    const int size = static_cast<int>(platoon.members.size());

    switch (scheme) {
      case BaselineScheme::PlatoonEqualSplit: {
        const Rational share = value / size;
        for (TruckId id : platoon.members) payoffs[id - 1] = share;
        break;
      }
      case BaselineScheme::FollowerOnly: {
        const Rational share = value / (size - 1);
        for (TruckId id : platoon.members)
          payoffs[id - 1] = id == platoon.leader ? Rational(0) : share;
        break;
      }
      case BaselineScheme::TypeProportional:
      case BaselineScheme::LeaderSubsidy: {
        Rational weight_sum = 0;
        for (TruckId id : platoon.members) {
          if (id == platoon.leader) continue;
          weight_sum += fleet.type_of(id) == TruckType::Electric ? fleet.eps_e : fleet.eps_f;
        }
        const Rational follower_pool =
            scheme == BaselineScheme::LeaderSubsidy ? (1 - *lambda) * value : value;
        for (TruckId id : platoon.members) {
          if (id == platoon.leader) {
            payoffs[id - 1] =
                scheme == BaselineScheme::LeaderSubsidy ? *lambda * value : Rational(0);
          } else {
            const Rational weight =
                fleet.type_of(id) == TruckType::Electric ? fleet.eps_e : fleet.eps_f;
            payoffs[id - 1] = follower_pool * weight / weight_sum;
          }
        }
        break;
      }
      case BaselineScheme::FleetEqualSplit:
        break;  // handled above
    }
  }
  return payoffs;
}

}  // namespace platoon
