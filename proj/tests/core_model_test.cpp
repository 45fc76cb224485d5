#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "platoon/core_model.hpp"
#include "platoon/oracle.hpp"

#include "test_support.hpp"

#include <algorithm>

using namespace platoon;
using platoon::testing::nine_truck_fleet;
using platoon::testing::random_feasible_fleet;
using platoon::testing::rat;

namespace {

// Independent route: value a signature by trying both leader types and
// keeping the better one.
Rational best_over_leaders(const CoalitionSignature& sig, const FleetSpec& fleet) {
  Rational best = 0;
  bool any = false;
  if (sig.c_e >= 1) {
    best = leader_fixed_value(sig, TruckType::Electric, fleet);
    any = true;
  }
  if (sig.c_f >= 1) {
    Rational fuel_led = leader_fixed_value(sig, TruckType::Fuel, fleet);
    best = any ? std::max(best, fuel_led) : fuel_led;
  }
  return best;
}

CoalitionStructure reference_structure(int max_size) {
  FleetSpec fleet = nine_truck_fleet(max_size);
  return {fleet, {{{1, 4, 5, 6}, 1}, {{2, 7, 8}, 2}, {{3, 9}, 3}}};
}

}  // namespace

TEST_CASE("rational parsing accepts decimals, exponents, and fractions") {
  CHECK(rat("0.048") == Rational(6, 125));
  CHECK(rat("-1.2e-3") == Rational(-3, 2500));
  CHECK(rat("48/1000") == Rational(6, 125));
  CHECK(rat(".5") == Rational(1, 2));
  CHECK(rat("5.") == 5);
  CHECK(rat("2e3") == 2000);
  CHECK_THROWS_AS(rat(""), std::invalid_argument);
  CHECK_THROWS_AS(rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(rat("1e99999"), std::invalid_argument);
}

TEST_CASE("fixed-point formatting rounds half away from zero") {
  CHECK(format_fixed(Rational(2020, 21), 4) == "96.1905");
  CHECK(format_fixed(Rational(2, 75), 4) == "0.0267");
  CHECK(format_fixed(rat("0.9999"), 2) == "1.00");
  CHECK(format_fixed(rat("-0.00005"), 4) == "-0.0001");
  CHECK(format_fixed(rat("-0.000001"), 2) == "0.00");
  CHECK(format_fixed(Rational(7), 0) == "7");
  CHECK(format_fixed(Rational(0), 3) == "0.000");
  CHECK(format_fraction(Rational(6, 125)) == "6/125");
  CHECK(format_fraction(Rational(-1, 2)) == "-1/2");
  CHECK(format_fraction(Rational(4)) == "4");
}

TEST_CASE("fleet spec rejects bad parameters") {
  CHECK_THROWS_AS(FleetSpec(1, 0, rat("0.048"), rat("0.07"), 2), std::domain_error);
  CHECK_THROWS_AS(FleetSpec(3, 6, rat("0"), rat("0.07"), 4), std::domain_error);
  CHECK_THROWS_AS(FleetSpec(3, 6, rat("0.08"), rat("0.07"), 4), std::domain_error);
  CHECK_THROWS_AS(FleetSpec(3, 6, rat("0.048"), rat("0.07"), 1), std::domain_error);
  CHECK_THROWS_AS(FleetSpec(-1, 6, rat("0.048"), rat("0.07"), 4), std::domain_error);
}

TEST_CASE("truck ids map to types with electric trucks first") {
  FleetSpec fleet = nine_truck_fleet(4);
  CHECK(fleet.type_of(1) == TruckType::Electric);
  CHECK(fleet.type_of(3) == TruckType::Electric);
  CHECK(fleet.type_of(4) == TruckType::Fuel);
  CHECK(fleet.type_of(9) == TruckType::Fuel);
  CHECK_THROWS_AS(fleet.type_of(10), std::domain_error);
  CHECK_THROWS_AS(fleet.type_of(0), std::domain_error);
}

TEST_CASE("coalition value on reference signatures") {
  FleetSpec fleet = nine_truck_fleet(4);
  CoalitionSignature sig{1, 3};
  CHECK(coalition_value(sig, fleet) == rat("0.21"));
  CHECK(coalition_value(sig, fleet) == best_over_leaders(sig, fleet));

  CHECK(coalition_value({0, 1}, fleet) == 0);
  CHECK(coalition_value({1, 0}, fleet) == 0);

  FleetSpec grand = nine_truck_fleet(9);
  CHECK(coalition_value({3, 6}, grand) == rat("0.516"));
}

TEST_CASE("coalition value rejects out-of-bounds signatures") {
  FleetSpec fleet = nine_truck_fleet(4);
  CHECK_THROWS_WITH_AS(coalition_value({1, 4}, fleet).str(),
                       doctest::Contains("size limit"), std::domain_error);
  CHECK_THROWS_WITH_AS(coalition_value({4, 0}, fleet).str(),
                       doctest::Contains("electric"), std::domain_error);
  CHECK_THROWS_WITH_AS(coalition_value({0, 7}, fleet).str(),
                       doctest::Contains("fuel"), std::domain_error);
}

TEST_CASE("optimal leader type") {
  CHECK(optimal_leader_type({1, 3}) == TruckType::Electric);
  CHECK(optimal_leader_type({0, 4}) == TruckType::Fuel);
  CHECK(optimal_leader_type({3, 0}) == TruckType::Electric);
  CHECK_THROWS_AS(optimal_leader_type({0, 0}), std::domain_error);
}

TEST_CASE("structure value on the worked nine-truck structures") {
  CHECK(structure_value(reference_structure(4)) == rat("0.42"));

  FleetSpec fleet = nine_truck_fleet(4);
  CoalitionStructure four_platoons{
      fleet, {{{1, 2, 3}, 1}, {{4, 5}, 4}, {{6, 7}, 6}, {{8, 9}, 8}}};
  CHECK(structure_value(four_platoons) == rat("0.306"));

  FleetSpec grand_fleet = nine_truck_fleet(9);
  CoalitionStructure grand{grand_fleet, {{{1, 2, 3, 4, 5, 6, 7, 8, 9}, 1}}};
  CHECK(structure_value(grand) == rat("0.516"));
}

TEST_CASE("validate_structure reports each violated condition") {
  CHECK(validate_structure(reference_structure(4)).empty());

  FleetSpec fleet = nine_truck_fleet(4);
  SUBCASE("size bounds") {
    CoalitionStructure bad{fleet, {{{1}, 1}, {{2, 3, 4, 5, 6, 7, 8, 9}, 2}}};
    auto violations = validate_structure(bad);
    REQUIRE(violations.size() == 2);
    CHECK(violations[0].kind == Violation::Kind::SizeBelowMin);
    CHECK(violations[0].platoon_index == 0);
    CHECK(violations[1].kind == Violation::Kind::SizeAboveMax);
    CHECK(violations[1].platoon_index == 1);
  }
  SUBCASE("disjointness and coverage") {
    CoalitionStructure bad{fleet, {{{1, 2}, 1}, {{2, 3}, 2}}};
    auto violations = validate_structure(bad);
    REQUIRE(violations.size() == 2);
    CHECK(violations[0].kind == Violation::Kind::Disjointness);
    CHECK(violations[1].kind == Violation::Kind::Coverage);
  }
  SUBCASE("leader membership and unknown ids") {
    CoalitionStructure bad{fleet, {{{1, 2, 12}, 7}, {{3, 4, 5, 6, 7, 8}, 3}}};
    auto violations = validate_structure(bad);
    bool unknown = false, leader = false, size_above = false;
    for (const auto& v : violations) {
      unknown |= v.kind == Violation::Kind::UnknownTruck;
      leader |= v.kind == Violation::Kind::LeaderNotMember;
      size_above |= v.kind == Violation::Kind::SizeAboveMax;
    }
    CHECK(unknown);
    CHECK(leader);
    CHECK(size_above);
  }
  SUBCASE("structure_value surfaces violations as an error") {
    CoalitionStructure bad{fleet, {{{1, 2}, 1}, {{2, 3}, 2}}};
    CHECK_THROWS_AS(structure_value(bad), ValidationError);
    try {
      structure_value(bad);
    } catch (const ValidationError& e) {
      CHECK(e.violations().size() == 2);
    }
  }
}

TEST_CASE("format_structure prints the worked example layout") {
  CHECK(format_structure(reference_structure(4)) == "{{1,4,5,6},{2,7,8},{3,9}}");
}

TEST_CASE("adding a fuel follower raises the value by exactly eps_f") {
  std::mt19937 rng(11);
  int cases = 0;
  while (cases < 120) {
    FleetSpec fleet = random_feasible_fleet(rng, 10);
    const int cap = std::min(fleet.max_size, fleet.total());
    std::uniform_int_distribution<int> ce_dist(0, fleet.n_e);
    std::uniform_int_distribution<int> cf_dist(0, fleet.n_f);
    CoalitionSignature sig{ce_dist(rng), cf_dist(rng)};
    if (sig.size() < 1 || sig.size() + 1 > cap || sig.c_f + 1 > fleet.n_f) continue;
    CoalitionSignature bigger{sig.c_e, sig.c_f + 1};
    CHECK(coalition_value(bigger, fleet) - coalition_value(sig, fleet) == fleet.eps_f);
    ++cases;
  }
}

TEST_CASE("coalition value equals the best fixed-leader value") {
  std::mt19937 rng(12);
  int cases = 0;
  while (cases < 150) {
    FleetSpec fleet = random_feasible_fleet(rng, 10);
    const int cap = std::min(fleet.max_size, fleet.total());
    CoalitionSignature sig{std::uniform_int_distribution<int>(0, fleet.n_e)(rng),
                           std::uniform_int_distribution<int>(0, fleet.n_f)(rng)};
    if (sig.size() < 2 || sig.size() > cap) continue;
    CHECK(coalition_value(sig, fleet) == best_over_leaders(sig, fleet));
    ++cases;
  }
}

TEST_CASE("structure value decomposes by leader type counts") {
  std::mt19937 rng(13);
  int cases = 0;
  while (cases < 100) {
    FleetSpec fleet = random_feasible_fleet(rng, 9);
    auto partitions = oracle::enumerate_signature_partitions(fleet);
    if (partitions.empty()) continue;
    const auto& partition = partitions[std::uniform_int_distribution<std::size_t>(
        0, partitions.size() - 1)(rng)];
    CoalitionStructure structure = oracle::realize(partition, fleet);

    int leaders_e = 0;
    for (const Platoon& p : structure.platoons)
      if (signature_of(p.members, fleet).c_e > 0) ++leaders_e;
    const int leaders_f = static_cast<int>(structure.platoons.size()) - leaders_e;

    Rational expected = fleet.eps_e * fleet.n_e + fleet.eps_f * fleet.n_f -
                        (fleet.eps_e * leaders_e + fleet.eps_f * leaders_f);
    CHECK(structure_value(structure) == expected);
    ++cases;
  }
}

TEST_CASE("coalition value scales linearly with both rates") {
  std::mt19937 rng(14);
  int cases = 0;
  while (cases < 100) {
    FleetSpec fleet = random_feasible_fleet(rng, 10);
    const int cap = std::min(fleet.max_size, fleet.total());
    CoalitionSignature sig{std::uniform_int_distribution<int>(0, fleet.n_e)(rng),
                           std::uniform_int_distribution<int>(0, fleet.n_f)(rng)};
    if (sig.size() < 2 || sig.size() > cap) continue;
    const Rational scale(std::uniform_int_distribution<int>(1, 50)(rng), 7);
    FleetSpec scaled(fleet.n_e, fleet.n_f, fleet.eps_e * scale, fleet.eps_f * scale,
                     fleet.max_size);
    CHECK(coalition_value(sig, scaled) == coalition_value(sig, fleet) * scale);
    ++cases;
  }
}
