#include "platoon/core_model.hpp"

#include <algorithm>
#include <sstream>

namespace platoon {

namespace {

std::string kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::UnknownTruck: return "unknown-truck";
    case Violation::Kind::SizeBelowMin: return "size-below-2";
    case Violation::Kind::SizeAboveMax: return "size-above-limit";
    case Violation::Kind::LeaderNotMember: return "leader-not-member";
    case Violation::Kind::Disjointness: return "disjointness";
    case Violation::Kind::Coverage: return "coverage";
  }
  return "unknown";
}

}  // namespace

FleetSpec::FleetSpec(int n_e, int n_f, Rational eps_e, Rational eps_f, int max_size)
    : n_e(n_e), n_f(n_f), eps_e(std::move(eps_e)), eps_f(std::move(eps_f)), max_size(max_size) {
  if (n_e < 0 || n_f < 0) throw std::domain_error("truck counts must be nonnegative");
  if (n_e + n_f < 2) throw std::domain_error("fleet must contain at least two trucks");
  if (!(this->eps_e > 0)) throw std::domain_error("electric benefit rate must be positive");
  if (this->eps_e > this->eps_f)
    throw std::domain_error("benefit rates must satisfy eps_e <= eps_f");
  if (max_size < 2) throw std::domain_error("platoon size limit must be at least 2");
}

TruckType FleetSpec::type_of(TruckId id) const {
  if (id < 1 || id > total()) throw std::domain_error("truck id out of range");
  return id <= n_e ? TruckType::Electric : TruckType::Fuel;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error("invalid coalition structure (" +
                         std::to_string(violations.size()) + " violation(s))"),
      violations_(std::move(violations)) {}

CoalitionSignature signature_of(const std::vector<TruckId>& members,
                                const FleetSpec& fleet) {
  CoalitionSignature sig;
  for (TruckId id : members) {
    if (fleet.type_of(id) == TruckType::Electric) ++sig.c_e;
    else ++sig.c_f;
  }
  return sig;
}

namespace {

void check_signature(const CoalitionSignature& sig, const FleetSpec& fleet) {
  if (sig.c_e < 0 || sig.c_f < 0) throw std::domain_error("signature counts must be nonnegative");
  if (sig.c_e > fleet.n_e)
    throw std::domain_error("signature has " + std::to_string(sig.c_e) +
                            " electric trucks but the fleet only has " +
                            std::to_string(fleet.n_e));
  if (sig.c_f > fleet.n_f)
    throw std::domain_error("signature has " + std::to_string(sig.c_f) +
                            " fuel trucks but the fleet only has " +
                            std::to_string(fleet.n_f));
  if (sig.size() > fleet.max_size)
    throw std::domain_error("coalition size " + std::to_string(sig.size()) +
                            " exceeds the platoon size limit " +
                            std::to_string(fleet.max_size));
}

}  // namespace

Rational coalition_value(const CoalitionSignature& sig, const FleetSpec& fleet) {
  check_signature(sig, fleet);
  if (sig.size() <= 1) return 0;
  if (sig.c_e >= 1) return fleet.eps_e * (sig.c_e - 1) + fleet.eps_f * sig.c_f;
  return fleet.eps_f * (sig.c_f - 1);
}

Rational leader_fixed_value(const CoalitionSignature& sig, TruckType leader,
                            const FleetSpec& fleet) {
  check_signature(sig, fleet);
  if (leader == TruckType::Electric && sig.c_e < 1)
    throw std::domain_error("no electric truck available to lead");
  if (leader == TruckType::Fuel && sig.c_f < 1)
    throw std::domain_error("no fuel truck available to lead");
  if (sig.size() <= 1) return 0;
  if (leader == TruckType::Electric)
    return fleet.eps_e * (sig.c_e - 1) + fleet.eps_f * sig.c_f;
  return fleet.eps_e * sig.c_e + fleet.eps_f * (sig.c_f - 1);
}

TruckType optimal_leader_type(const CoalitionSignature& sig) {
  if (sig.size() < 1) throw std::domain_error("empty coalition has no leader");
  return sig.c_e >= 1 ? TruckType::Electric : TruckType::Fuel;
}

Rational platoon_value(const Platoon& platoon, const FleetSpec& fleet) {
  return leader_fixed_value(signature_of(platoon.members, fleet),
                            fleet.type_of(platoon.leader), fleet);
}

Rational structure_value(const CoalitionStructure& structure) {
  if (auto violations = validate_structure(structure); !violations.empty())
    throw ValidationError(std::move(violations));
  Rational total = 0;
  for (const Platoon& p : structure.platoons) total += platoon_value(p, structure.fleet);
  return total;
}

std::vector<Violation> validate_structure(const CoalitionStructure& structure) {
  const FleetSpec& fleet = structure.fleet;
  const int n = fleet.total();
  std::vector<Violation> out;
  std::vector<int> seen(n + 1, 0);

  for (std::size_t idx = 0; idx < structure.platoons.size(); ++idx) {
    const Platoon& p = structure.platoons[idx];
    const int i = static_cast<int>(idx);

    std::vector<TruckId> unknown;
    for (TruckId id : p.members) {
      if (id < 1 || id > n) unknown.push_back(id);
      else ++seen[id];
    }
    if (!unknown.empty()) {
      std::ostringstream os;
      os << "platoon " << i << " references unknown truck id(s):";
      for (TruckId id : unknown) os << ' ' << id;
      out.push_back({Violation::Kind::UnknownTruck, i, os.str()});
    }

    const int size = static_cast<int>(p.members.size());
    if (size < 2)
      out.push_back({Violation::Kind::SizeBelowMin, i,
                     "platoon " + std::to_string(i) + " has size " + std::to_string(size)});
    if (size > fleet.max_size)
      out.push_back({Violation::Kind::SizeAboveMax, i,
                     "platoon " + std::to_string(i) + " has size " + std::to_string(size) +
                         " above the limit " + std::to_string(fleet.max_size)});
    if (std::find(p.members.begin(), p.members.end(), p.leader) == p.members.end())
      out.push_back({Violation::Kind::LeaderNotMember, i,
                     "leader " + std::to_string(p.leader) + " is not a member of platoon " +
                         std::to_string(i)});
  }

  std::vector<TruckId> duplicated, missing;
  for (TruckId id = 1; id <= n; ++id) {
    if (seen[id] > 1) duplicated.push_back(id);
    if (seen[id] == 0) missing.push_back(id);
  }
  if (!duplicated.empty()) {
    std::ostringstream os;
    os << "truck id(s) assigned to more than one platoon:";
    for (TruckId id : duplicated) os << ' ' << id;
    out.push_back({Violation::Kind::Disjointness, -1, os.str()});
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << "truck id(s) not covered by any platoon:";
    for (TruckId id : missing) os << ' ' << id;
    out.push_back({Violation::Kind::Coverage, -1, os.str()});
  }
  return out;
}

std::string format_structure(const CoalitionStructure& structure) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < structure.platoons.size(); ++i) {
    if (i > 0) os << ',';
    os << '{';
    const auto& members = structure.platoons[i].members;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j > 0) os << ',';
      os << members[j];
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

std::string violation_text(const Violation& violation) {
  return kind_name(violation.kind) + ": " + violation.detail;
}

}  // namespace platoon
