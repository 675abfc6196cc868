#include "oracles/world_builder.h"

#include <demosim/errors.h>
#include <demosim/model.h>

#include <gtest/gtest.h>

#include <algorithm>

using namespace demosim;
using testing_support::WorldBuilder;

namespace {

bool has_issue(const std::vector<std::string>& issues, const std::string& prefix) {
    return std::any_of(issues.begin(), issues.end(),
                       [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

} // namespace

TEST(Clock, StepsPerYearTable) {
    EXPECT_EQ(steps_per_year_for("Daily"), 365);
    EXPECT_EQ(steps_per_year_for("hourly"), 8760);
    EXPECT_EQ(steps_per_year_for("WEEKLY"), 52);
    EXPECT_EQ(steps_per_year_for("Monthly"), 12);
    EXPECT_EQ(steps_per_year_for("Yearly"), 1);
    EXPECT_FALSE(steps_per_year_for("fortnightly").has_value());
}

TEST(Clock, TotalStepsIsYearsTimesRate) {
    SimulationParams p;
    p.t0 = 2020;
    p.t_final = 2021;
    p.steps_per_year = 365;
    EXPECT_EQ(p.total_steps(), 365);
    p.t_final = 2030;
    EXPECT_EQ(p.total_steps(), 3650);
    p.steps_per_year = 12;
    EXPECT_EQ(p.total_steps(), 120);
}

TEST(Clock, CurrentYearAdvancesEveryFullYear) {
    SimTime t;
    t.t0_year = 2020;
    t.steps_per_year = 12;
    t.step_index = 11;
    EXPECT_EQ(t.current_year(), 2020);
    t.step_index = 12;
    EXPECT_EQ(t.current_year(), 2021);
}

TEST(Params, ValidationRejectsBadValues) {
    SimulationParams sim;
    sim.t_final = sim.t0;
    EXPECT_THROW(validate(sim), ConfigurationError);

    ModelParams p;
    EXPECT_NO_THROW(validate(p));
    p.start_married_ratio = 1.5;
    EXPECT_THROW(validate(p), ConfigurationError);
    p = {};
    p.male_age_scaling = 0;
    EXPECT_THROW(validate(p), ConfigurationError);
    p = {};
    p.initial_pop = 0;
    EXPECT_NO_THROW(validate(p));
}

TEST(Age, AdultThresholdIsExactInSteps) {
    WorldBuilder b(1, 365);
    const PersonId p = b.man(0);
    Person& person = b.state().person(p);
    person.age_steps = 18 * 365 - 1;
    EXPECT_FALSE(is_adult(person, 365));
    person.age_steps = 18 * 365;
    EXPECT_TRUE(is_adult(person, 365));
    EXPECT_DOUBLE_EQ(age_years(person, b.state().time), 18.0);
}

TEST(Relations, MarrySeparateKeepBothSidesInSync) {
    WorldBuilder b;
    const HouseId h = b.house();
    const PersonId m = b.man(30, h);
    const PersonId f = b.woman(28, h);
    b.couple(m, f);
    EXPECT_EQ(b.state().person(f).partner, m);
    EXPECT_THROW(marry(b.state(), m, f), IntegrityError);

    separate(b.state(), f);
    EXPECT_FALSE(b.state().person(m).partner);
    EXPECT_FALSE(b.state().person(f).partner);
    EXPECT_EQ(b.state().person(m).former_partners, std::vector<PersonId>{f});
    EXPECT_EQ(b.state().person(f).former_partners, std::vector<PersonId>{m});
}

TEST(Relations, MoveAndVacateMaintainOccupants) {
    WorldBuilder b;
    const HouseId h1 = b.house();
    const HouseId h2 = b.house();
    const PersonId p = b.man(40, h1);
    move_person(b.state(), p, h2);
    EXPECT_TRUE(b.state().house(h1).occupants.empty());
    EXPECT_EQ(b.state().house(h2).occupants, std::vector<PersonId>{p});
    vacate(b.state(), p);
    EXPECT_TRUE(b.state().house(h2).empty());
    EXPECT_FALSE(b.state().person(p).house);
}

TEST(Integrity, CleanWorldHasNoIssues) {
    WorldBuilder b;
    const HouseId h = b.house();
    const PersonId m = b.man(40, h);
    const PersonId f = b.woman(38, h);
    b.couple(m, f);
    const PersonId c = b.woman(5, h);
    b.child_of(c, m, f);
    EXPECT_TRUE(validate_world(b.state()).empty());
}

TEST(Integrity, DetectsBrokenReferences) {
    WorldBuilder b;
    const HouseId h = b.house();
    const PersonId m = b.man(40, h);
    const PersonId f = b.woman(38, h);
    b.state().person(m).partner = f; // one-sided
    EXPECT_TRUE(has_issue(validate_world(b.state()), "asymmetric partnership"));

    b.state().person(f).partner = m;
    b.state().person(f).house.reset();
    auto issues = validate_world(b.state());
    EXPECT_TRUE(has_issue(issues, "homeless"));

    WorldBuilder c;
    const HouseId h2 = c.house();
    const PersonId kid = c.man(10, h2);
    const PersonId dad = c.man(40, h2);
    c.state().person(kid).father = dad; // parent does not list the child
    EXPECT_TRUE(has_issue(validate_world(c.state()), "child missing from parent's children"));
}

TEST(Integrity, DetectsMarriedMinorAndDeadOccupant) {
    WorldBuilder b;
    const HouseId h = b.house();
    const PersonId m = b.man(16, h);
    const PersonId f = b.woman(30, h);
    b.couple(m, f);
    EXPECT_TRUE(has_issue(validate_world(b.state()), "married minor"));

    WorldBuilder c;
    const HouseId h2 = c.house();
    const PersonId p = c.man(80, h2);
    c.state().person(p).alive = false;
    EXPECT_TRUE(has_issue(validate_world(c.state()), "dead person housed"));
}

TEST(WorldState, CheckedAccessThrowsOnUnknownIds) {
    WorldBuilder b;
    EXPECT_THROW(b.state().person(PersonId{5}), IntegrityError);
    EXPECT_THROW(b.state().house(HouseId{0}), IntegrityError);
}
