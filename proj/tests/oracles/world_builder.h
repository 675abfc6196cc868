#pragma once

#include <demosim/model.h>
#include <demosim/space.h>

#include <algorithm>
#include <vector>

namespace testing_support {

using namespace demosim;

/// Hand-built worlds for unit tests: towns on a single row, houses placed
/// at fixed locations, persons added with ages in whole years.
class WorldBuilder {
public:
    explicit WorldBuilder(int towns = 1, int steps_per_year = 365) {
        state_.time.steps_per_year = steps_per_year;
        state_.time.t0_year = 2020;
        for (int i = 0; i < towns; ++i) {
            Town w;
            w.id = TownId{static_cast<std::uint32_t>(i)};
            w.row = 1;
            w.col = i + 1;
            w.density = 1.0;
            state_.towns.push_back(w);
        }
    }

    HouseId house(int town = 0, int x = 1, int y = 1) {
        House h;
        h.id = HouseId{static_cast<std::uint32_t>(state_.houses.size())};
        h.town = TownId{static_cast<std::uint32_t>(town)};
        h.local = {x, y};
        state_.town(h.town).houses.push_back(h.id);
        state_.houses.push_back(h);
        return h.id;
    }

    PersonId person(Gender g, double age_years, std::optional<HouseId> home = std::nullopt) {
        const auto steps = static_cast<std::int64_t>(age_years * state_.time.steps_per_year);
        const PersonId id = state_.add_person(g, steps).id;
        if (home) move_person(state_, id, *home);
        return id;
    }
    PersonId man(double age, std::optional<HouseId> home = std::nullopt) { return person(Gender::male, age, home); }
    PersonId woman(double age, std::optional<HouseId> home = std::nullopt) {
        return person(Gender::female, age, home);
    }

    void couple(PersonId a, PersonId b) { marry(state_, a, b); }

    void child_of(PersonId child, std::optional<PersonId> father, std::optional<PersonId> mother) {
        Person& c = state_.person(child);
        c.father = father;
        c.mother = mother;
        for (auto parent : {father, mother}) {
            if (!parent) continue;
            auto& kids = state_.person(*parent).children;
            kids.insert(std::lower_bound(kids.begin(), kids.end(), child), child);
        }
    }

    void kill(PersonId id) {
        separate(state_, id);
        vacate(state_, id);
        state_.person(id).alive = false;
    }

    WorldState& state() { return state_; }

private:
    WorldState state_;
};

} // namespace testing_support
