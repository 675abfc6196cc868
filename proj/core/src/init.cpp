#include "demosim/init.h"

#include "demosim/rates.h"

#include <algorithm>
#include <cmath>

namespace demosim {

std::vector<int> town_population_targets(int initial_pop, const DensityMap& density) {
    const double nonzero = density.nonzero_count();
    std::vector<int> out;
    for (int r = 1; r <= density.rows(); ++r) {
        for (int c = 1; c <= density.cols(); ++c) {
            const double d = density.at(r, c);
            if (!(d > 0.0)) continue;
            double v = initial_pop * d / nonzero;
            // 10000 * 0.3 / 48 must not round up past an exact integer.
            const double nearest = std::round(v);
            if (std::abs(v - nearest) < 1e-9 * std::max(1.0, v)) v = nearest;
            out.push_back(static_cast<int>(std::ceil(v)));
        }
    }
    return out;
}

void assign_genders(WorldState& state, Rng& rng) {
    for (Person& p : state.persons) {
        p.gender = rng.bernoulli(0.5) ? Gender::male : Gender::female;
    }
}

std::int64_t sample_age(Rng& rng, int steps_per_year) {
    const double g = rng.normal(0.0, 25.0 * steps_per_year);
    return static_cast<std::int64_t>(std::abs(std::floor(g)));
}

std::size_t candidate_count(std::size_t pool, int max_candidates, bool literal) {
    const auto cap = static_cast<std::size_t>(std::max(max_candidates, 0));
    if (literal) return std::max(cap, pool / 10);
    return std::min(cap, std::max<std::size_t>(1, pool / 10));
}

void init_partnerships(WorldState& state, const ModelParams& params, Rng& rng, InitReport& report) {
    const int n = state.time.steps_per_year;
    std::vector<PersonId> pool;
    for (const Person& p : state.persons) {
        if (p.alive && p.is_female() && !p.is_married() && is_adult(p, n)) pool.push_back(p.id);
    }

    std::vector<double> weights;
    for (std::size_t i = 0; i < state.persons.size(); ++i) {
        const Person& man = state.persons[i];
        if (!man.alive || !man.is_male() || man.is_married() || !is_adult(man, n)) continue;
        if (!rng.bernoulli(params.start_married_ratio)) continue;
        ++report.selected_males;
        if (pool.empty()) {
            ++report.unmatched_males;
            continue;
        }
        const auto k = std::min(candidate_count(pool.size(), params.max_num_marr_cand, params.literal_candidate_count),
                                pool.size());
        const auto picks = sample_without_replacement(pool.size(), k, rng);
        weights.clear();
        for (std::size_t j : picks) {
            const Person& woman = state.person(pool[j]);
            weights.push_back(age_factor(age_years(man.age_steps, n) - age_years(woman.age_steps, n)));
        }
        const auto chosen = weighted_index(weights, rng);
        if (!chosen) {
            ++report.unmatched_males;
            continue;
        }
        const std::size_t slot = picks[*chosen];
        marry(state, man.id, pool[slot]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(slot));
        ++report.married_couples;
    }
}

void assign_parents(WorldState& state, Rng& rng, InitReport& report) {
    const std::int64_t n = state.time.steps_per_year;
    std::vector<PersonId> fathers;
    for (const Person& p : state.persons) {
        if (p.is_male() && p.is_married()) fathers.push_back(p.id);
    }

    std::vector<PersonId> candidates;
    for (std::size_t i = 0; i < state.persons.size(); ++i) {
        Person& child = state.persons[i];
        if (is_adult(child, static_cast<int>(n))) continue;
        candidates.clear();
        for (PersonId f : fathers) {
            const Person& man = state.person(f);
            const Person& wife = state.person(*man.partner);
            const std::int64_t youngest = std::min(man.age_steps, wife.age_steps);
            // min(age) >= age(c) + 18 + 9/12 years, in quarter-steps to stay exact.
            if (4 * youngest < 4 * child.age_steps + 75 * n) continue;
            if (wife.age_steps >= kMaxFertileAgeYears * n + child.age_steps) continue;
            candidates.push_back(f);
        }
        if (candidates.empty()) {
            report.parentless_children.push_back(child.id);
            continue;
        }
        const PersonId father = candidates[rng.index(candidates.size())];
        const PersonId mother = *state.person(father).partner;
        child.father = father;
        child.mother = mother;
        // Children are visited in ascending id order, so appending keeps the lists sorted.
        state.person(father).children.push_back(child.id);
        state.person(mother).children.push_back(child.id);
        ++report.children_with_parents;
    }
}

namespace {

// Husband, wife and the husband's children.
std::vector<PersonId> family_unit(const WorldState& state, PersonId spouse) {
    const Person& s = state.person(spouse);
    const Person& husband = s.is_male() ? s : state.person(*s.partner);
    std::vector<PersonId> unit{husband.id};
    if (husband.partner) unit.push_back(*husband.partner);
    unit.insert(unit.end(), husband.children.begin(), husband.children.end());
    return unit;
}

} // namespace

void assign_housing(WorldState& state, Rng& rng, InitReport& report) {
    for (std::size_t i = 0; i < state.persons.size(); ++i) {
        const Person& p = state.persons[i];
        if (!p.alive || p.house) continue;
        std::vector<PersonId> unit;
        if (p.father) {
            unit = family_unit(state, *p.father);
        } else if (p.is_married()) {
            unit = family_unit(state, p.id);
        } else {
            unit = {p.id};
        }
        const TownId town = weighted_town(state.towns, rng);
        const HouseId house = find_or_create_empty_house(state, town, rng);
        for (PersonId member : unit) move_person(state, member, house);
    }
    report.houses = static_cast<int>(state.houses.size());
    report.town_residents.assign(state.towns.size(), 0);
    for (const Person& p : state.persons) {
        if (p.alive && p.house) ++report.town_residents[state.house(*p.house).town.index()];
    }
}

WorldState initialize(const DensityMap& density, const ModelParams& params, const SimTime& time, Rng& rng,
                      InitReport* report) {
    InitReport local;
    InitReport& rep = report ? *report : local;
    rep = InitReport{};

    WorldState state;
    state.time = time;
    state.time.step_index = 0;
    state.towns = build_towns(density);
    rep.town_targets = town_population_targets(params.initial_pop, density);

    // Persons are created town by town; the creation town only fixes the
    // population count, residence is decided by family housing below.
    for (int target : rep.town_targets) {
        for (int k = 0; k < target; ++k) state.add_person(Gender::male, 0);
    }
    rep.persons = static_cast<int>(state.persons.size());

    assign_genders(state, rng);
    for (Person& p : state.persons) p.age_steps = sample_age(rng, time.steps_per_year);
    init_partnerships(state, params, rng, rep);
    assign_parents(state, rng, rep);
    assign_housing(state, rng, rep);
    return state;
}

} // namespace demosim
