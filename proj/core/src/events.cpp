#include "demosim/events.h"

#include "demosim/errors.h"
#include "demosim/init.h"
#include "demosim/predicates.h"
#include "demosim/rates.h"
#include "demosim/space.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace demosim {

std::string_view to_string(Event e) {
    switch (e) {
    case Event::ageing:
        return "ageing";
    case Event::deaths:
        return "deaths";
    case Event::births:
        return "births";
    case Event::divorces:
        return "divorces";
    case Event::marriages:
        return "marriages";
    }
    return "?";
}

EventOrder::EventOrder()
    : events_{Event::ageing, Event::deaths, Event::births, Event::divorces, Event::marriages} {}

EventOrder::EventOrder(std::vector<Event> events) : events_{std::move(events)} {
    if (events_.empty() || events_.front() != Event::ageing) {
        throw ConfigurationError("event order must start with ageing");
    }
    for (std::size_t i = 0; i < events_.size(); ++i) {
        for (std::size_t j = i + 1; j < events_.size(); ++j) {
            if (events_[i] == events_[j]) {
                throw ConfigurationError("event order names " + std::string(to_string(events_[i])) + " twice");
            }
        }
    }
}

EventOrder EventOrder::parse(std::string_view text) {
    std::vector<Event> events;
    std::stringstream in{std::string(text)};
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw ConfigurationError("event order has an empty entry");
        const auto last = item.find_last_not_of(" \t");
        const std::string name = item.substr(first, last - first + 1);
        bool known = false;
        for (Event e : {Event::ageing, Event::deaths, Event::births, Event::divorces, Event::marriages}) {
            if (name == to_string(e)) {
                events.push_back(e);
                known = true;
            }
        }
        if (!known) throw ConfigurationError("unknown event '" + name + "'");
    }
    return EventOrder(std::move(events));
}

bool EventOrder::contains(Event e) const noexcept {
    return std::find(events_.begin(), events_.end(), e) != events_.end();
}

bool EventOrder::before(Event a, Event b) const noexcept {
    const auto ia = std::find(events_.begin(), events_.end(), a);
    const auto ib = std::find(events_.begin(), events_.end(), b);
    return ia != events_.end() && ib != events_.end() && ia < ib;
}

std::string EventOrder::str() const {
    std::string out;
    for (Event e : events_) {
        if (!out.empty()) out += ',';
        out += to_string(e);
    }
    return out;
}

void StepOutcome::merge(const StepOutcome& o) {
    births.insert(births.end(), o.births.begin(), o.births.end());
    deaths.insert(deaths.end(), o.deaths.begin(), o.deaths.end());
    marriages.insert(marriages.end(), o.marriages.begin(), o.marriages.end());
    divorces.insert(divorces.end(), o.divorces.begin(), o.divorces.end());
    adults_moved.insert(adults_moved.end(), o.adults_moved.begin(), o.adults_moved.end());
    houses_created.insert(houses_created.end(), o.houses_created.begin(), o.houses_created.end());
    houses_reused.insert(houses_reused.end(), o.houses_reused.begin(), o.houses_reused.end());
}

namespace {

// Moves `who` alone into an empty house of `town`.
void rehouse_alone(WorldState& state, PersonId who, TownId town, Rng& rng, StepOutcome& out) {
    bool created = false;
    const HouseId h = find_or_create_empty_house(state, town, rng, &created);
    (created ? out.houses_created : out.houses_reused).push_back(h);
    move_person(state, who, h);
}

} // namespace

StepOutcome ageing(WorldState& state, Rng& rng) {
    StepOutcome out;
    const std::int64_t adult_age = static_cast<std::int64_t>(kAdultAgeYears) * state.time.steps_per_year;
    std::vector<PersonId> turned_adult;
    for (Person& p : state.persons) {
        if (!p.alive) continue;
        ++p.age_steps;
        if (p.age_steps == adult_age) turned_adult.push_back(p.id);
    }
    for (PersonId id : turned_adult) {
        if (is_orphan(state, id) && is_oldest_sibling(state, id)) continue;
        const auto town = state.town_of(id);
        if (!town) throw IntegrityError("ageing: " + to_string(id) + " has no house");
        rehouse_alone(state, id, *town, rng, out);
        out.adults_moved.push_back(id);
    }
    return out;
}

StepOutcome deaths(WorldState& state, const ModelParams& params, Rng& rng) {
    StepOutcome out;
    const int n = state.time.steps_per_year;
    const std::size_t count = state.persons.size();
    for (std::size_t i = 0; i < count; ++i) {
        Person& p = state.persons[i];
        if (!p.alive || p.age_steps == 0) continue;
        if (!rng.bernoulli(instantaneous(death_rate_yearly(p, params, n), n))) continue;
        p.alive = false;
        vacate(state, p.id);
        separate(state, p.id);
        out.deaths.push_back(p.id);
    }
    return out;
}

bool is_reproducible(const WorldState& state, const Person& woman) {
    const std::int64_t n = state.time.steps_per_year;
    if (!woman.alive || !woman.is_female() || !woman.is_married()) return false;
    if (woman.age_steps >= kMaxFertileAgeYears * n) return false;
    for (PersonId c : woman.children) {
        const Person& child = state.person(c);
        if (child.alive && child.age_steps <= n) return false;
    }
    return true;
}

StepOutcome births(WorldState& state, const ModelData& data, Rng& rng) {
    StepOutcome out;
    const int n = state.time.steps_per_year;
    const std::size_t count = state.persons.size();
    for (std::size_t i = 0; i < count; ++i) {
        if (!is_reproducible(state, state.persons[i])) continue;
        const PersonId mother = state.persons[i].id;
        const PersonId father = *state.persons[i].partner;
        const Person& husband = state.person(father);
        if (!husband.alive || husband.partner != mother) {
            throw IntegrityError("births: " + to_string(mother) + " has no living partner");
        }
        const double rate = fertility_rate_yearly(state.persons[i], data, state.time);
        if (!rng.bernoulli(instantaneous(rate, n))) continue;

        const Gender g = rng.bernoulli(0.5) ? Gender::male : Gender::female;
        Person& baby = state.add_person(g, 0);
        const PersonId child = baby.id;
        baby.father = father;
        baby.mother = mother;
        state.person(mother).children.push_back(child);
        state.person(father).children.push_back(child);
        move_person(state, child, *state.person(mother).house);
        out.births.push_back(child);
    }
    return out;
}

StepOutcome divorces(WorldState& state, const SnapshotStore& snaps, const ModelParams& params,
                     const ModelData& data, Rng& rng) {
    StepOutcome out;
    const Snapshot& before = snaps.previous(state);
    const int n = state.time.steps_per_year;
    const std::size_t count = state.persons.size();
    for (std::size_t i = 0; i < count; ++i) {
        const Person& man = state.persons[i];
        if (!man.alive || !man.is_male() || !man.is_married()) continue;
        if (!before.contains(man.id) || !before.at(man.id).married) continue;
        const double rate = divorce_rate_yearly(man, params, data, n);
        if (!rng.bernoulli(instantaneous(rate, n))) continue;
        const PersonId id = man.id;
        const auto town = state.town_of(id);
        if (!town) throw IntegrityError("divorces: " + to_string(id) + " has no house");
        separate(state, id);
        rehouse_alone(state, id, *town, rng, out);
        out.divorces.push_back(id);
    }
    return out;
}

bool marriage_eligible(const WorldState& state, const Snapshot& before, const Person& p) {
    const std::int64_t adult_age = static_cast<std::int64_t>(kAdultAgeYears) * state.time.steps_per_year;
    if (!p.alive || p.is_married() || p.age_steps < adult_age || p.age_steps == adult_age) return false;
    return before.contains(p.id) && !before.at(p.id).married;
}

StepOutcome marriages(WorldState& state, const SnapshotStore& snaps, const ModelParams& params,
                      const ModelData& data, Rng& rng) {
    StepOutcome out;
    const Snapshot& before = snaps.previous(state);
    const int n = state.time.steps_per_year;

    std::vector<PersonId> pool;
    for (const Person& p : state.persons) {
        if (p.is_female() && marriage_eligible(state, before, p)) pool.push_back(p.id);
    }

    std::vector<double> log_weights;
    std::vector<double> weights;
    const std::size_t count = state.persons.size();
    for (std::size_t i = 0; i < count; ++i) {
        const Person& man = state.persons[i];
        if (!man.is_male() || !marriage_eligible(state, before, man)) continue;
        const double rate = marriage_rate_yearly(man, params, data, n);
        if (!rng.bernoulli(instantaneous(rate, n))) continue;
        if (pool.empty()) continue;

        const auto k = std::min(candidate_count(pool.size(), params.max_num_marr_cand, params.literal_candidate_count),
                                pool.size());
        const auto picks = sample_without_replacement(pool.size(), k, rng);
        const Town& his_town = state.town(*state.town_of(man.id));
        // Weights are built in log space and rescaled by the maximum, as
        // the children term overflows for large families.
        log_weights.clear();
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t j : picks) {
            const Person& woman = state.person(pool[j]);
            const double af = age_factor(age_years(man.age_steps, n) - age_years(woman.age_steps, n));
            double lw = -std::numeric_limits<double>::infinity();
            if (af > 0.0) {
                const auto cm = static_cast<double>(man.children.size());
                const auto cf = static_cast<double>(woman.children.size());
                const int d = manhattan(his_town, state.town(*state.town_of(woman.id)));
                lw = -4.0 * d + (cm * cf - cm - cf) + std::log(af);
            }
            log_weights.push_back(lw);
            top = std::max(top, lw);
        }
        weights.clear();
        for (double lw : log_weights) weights.push_back(std::isfinite(lw) ? std::exp(lw - top) : 0.0);
        const auto chosen = weighted_index(weights, rng);
        if (!chosen) continue;

        const std::size_t slot = picks[*chosen];
        const PersonId husband = man.id;
        const PersonId wife = pool[slot];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(slot));
        marry(state, husband, wife);

        const HouseId his = *state.person(husband).house;
        const HouseId hers = *state.person(wife).house;
        if (his != hers) {
            const bool wife_moves = state.house(his).occupants.size() >= state.house(hers).occupants.size();
            const HouseId from = wife_moves ? hers : his;
            const HouseId to = wife_moves ? his : hers;
            const std::vector<PersonId> movers = state.house(from).occupants;
            for (PersonId q : movers) move_person(state, q, to);
        }
        out.marriages.push_back(husband);
    }
    return out;
}

StepOutcome step(WorldState& state, SnapshotStore& snaps, const ModelParams& params, const ModelData& data,
                 const EventOrder& order, Rng& rng) {
    WorldState state_backup = state;
    const Rng rng_backup = rng;
    try {
        ++state.time.step_index;
        StepOutcome out = ageing(state, rng);
        for (Event e : order.events()) {
            switch (e) {
            case Event::ageing:
                break;
            case Event::deaths:
                out.merge(deaths(state, params, rng));
                break;
            case Event::births:
                out.merge(births(state, data, rng));
                break;
            case Event::divorces:
                out.merge(divorces(state, snaps, params, data, rng));
                break;
            case Event::marriages:
                out.merge(marriages(state, snaps, params, data, rng));
                break;
            }
        }
        snaps.freeze(state);
        return out;
    } catch (...) {
        state = std::move(state_backup);
        rng = rng_backup;
        throw;
    }
}

} // namespace demosim
