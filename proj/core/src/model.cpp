#include "demosim/model.h"

#include "demosim/errors.h"

#include <algorithm>
#include <cctype>

namespace demosim {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void insert_sorted(std::vector<PersonId>& ids, PersonId id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) {
        ids.insert(it, id);
    }
}

void erase_sorted(std::vector<PersonId>& ids, PersonId id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it != ids.end() && *it == id) {
        ids.erase(it);
    }
}

} // namespace

std::optional<int> steps_per_year_for(std::string_view delta_t) {
    const auto key = lower(delta_t);
    if (key == "hourly") return 365 * 24;
    if (key == "daily") return 365;
    if (key == "weekly") return 52;
    if (key == "monthly") return 12;
    if (key == "yearly") return 1;
    return std::nullopt;
}

void validate(const SimulationParams& params) {
    if (params.t_final <= params.t0) {
        throw ConfigurationError("t_final must be greater than t0");
    }
    if (params.steps_per_year <= 0) {
        throw ConfigurationError("steps per year must be positive");
    }
}

void validate(const ModelParams& p) {
    auto non_negative = [](double v, const char* name) {
        if (!(v >= 0.0)) throw ConfigurationError(std::string(name) + " must be >= 0");
    };
    non_negative(p.basic_divorce_rate, "basic_divorce_rate");
    non_negative(p.basic_death_rate, "basic_death_rate");
    non_negative(p.basic_male_marriage_rate, "basic_male_marriage_rate");
    non_negative(p.female_age_death_rate, "female_age_death_rate");
    non_negative(p.male_age_death_rate, "male_age_death_rate");
    if (!(p.female_age_scaling > 0.0) || !(p.male_age_scaling > 0.0)) {
        throw ConfigurationError("age scalings must be > 0");
    }
    if (!(p.start_married_ratio >= 0.0 && p.start_married_ratio <= 1.0)) {
        throw ConfigurationError("start_married_ratio must lie in [0,1]");
    }
    if (p.initial_pop < 0) {
        throw ConfigurationError("initial_pop must be >= 0");
    }
    if (p.max_num_marr_cand <= 0) {
        throw ConfigurationError("max_num_marr_cand must be > 0");
    }
}

FertilityTable::FertilityTable(int age_offset, int year_offset, int rows, int cols,
                               std::vector<double> values)
    : age_offset_{age_offset}, year_offset_{year_offset}, rows_{rows}, cols_{cols},
      values_{std::move(values)} {
    if (rows_ <= 0 || cols_ <= 0 ||
        values_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
        throw ConfigurationError("fertility table must be a non-empty rectangle");
    }
}

void validate(const ModelData& data) {
    auto check_modifiers = [](const std::vector<double>& v, const char* name) {
        if (v.size() != static_cast<std::size_t>(kDecadeCount)) {
            throw ConfigurationError(std::string(name) + " must have exactly 16 entries");
        }
        for (double x : v) {
            if (!(x >= 0.0)) throw ConfigurationError(std::string(name) + " entries must be >= 0");
        }
    };
    check_modifiers(data.divorce_modifier_by_decade, "divorce modifiers");
    check_modifiers(data.male_marriage_modifier_by_decade, "marriage modifiers");
    if (data.fertility.rows() == 0) {
        throw ConfigurationError("fertility table is empty");
    }
    for (double x : data.fertility.values()) {
        if (!(x >= 0.0 && x <= 1.0)) throw ConfigurationError("fertility entries must lie in [0,1]");
    }
}

const Person& WorldState::person(PersonId id) const {
    if (!has_person(id)) throw IntegrityError("unknown person " + to_string(id));
    return persons[id.index()];
}
Person& WorldState::person(PersonId id) {
    if (!has_person(id)) throw IntegrityError("unknown person " + to_string(id));
    return persons[id.index()];
}
const House& WorldState::house(HouseId id) const {
    if (!has_house(id)) throw IntegrityError("unknown house " + to_string(id));
    return houses[id.index()];
}
House& WorldState::house(HouseId id) {
    if (!has_house(id)) throw IntegrityError("unknown house " + to_string(id));
    return houses[id.index()];
}
const Town& WorldState::town(TownId id) const {
    if (!has_town(id)) throw IntegrityError("unknown town " + to_string(id));
    return towns[id.index()];
}
Town& WorldState::town(TownId id) {
    if (!has_town(id)) throw IntegrityError("unknown town " + to_string(id));
    return towns[id.index()];
}

Person& WorldState::add_person(Gender gender, std::int64_t age_steps) {
    Person p;
    p.id = PersonId{static_cast<std::uint32_t>(persons.size())};
    p.gender = gender;
    p.age_steps = age_steps;
    persons.push_back(std::move(p));
    return persons.back();
}

std::optional<TownId> WorldState::town_of(PersonId id) const {
    const auto& p = person(id);
    if (!p.house) return std::nullopt;
    return house(*p.house).town;
}

bool operator==(const Person& a, const Person& b) {
    return a.id == b.id && a.gender == b.gender && a.alive == b.alive && a.age_steps == b.age_steps &&
           a.partner == b.partner && a.father == b.father && a.mother == b.mother &&
           a.children == b.children && a.former_partners == b.former_partners && a.house == b.house;
}
bool operator==(const House& a, const House& b) {
    return a.id == b.id && a.town == b.town && a.local == b.local && a.occupants == b.occupants;
}
bool operator==(const Town& a, const Town& b) {
    return a.id == b.id && a.row == b.row && a.col == b.col && a.density == b.density &&
           a.houses == b.houses;
}
bool operator==(const WorldState& a, const WorldState& b) {
    return a.time.step_index == b.time.step_index && a.time.t0_year == b.time.t0_year &&
           a.time.steps_per_year == b.time.steps_per_year && a.persons == b.persons &&
           a.houses == b.houses && a.towns == b.towns;
}

double age_years(std::int64_t age_steps, int steps_per_year) {
    return static_cast<double>(age_steps) / static_cast<double>(steps_per_year);
}

double age_years(const Person& person, const SimTime& time) {
    return age_years(person.age_steps, time.steps_per_year);
}

void marry(WorldState& state, PersonId a, PersonId b) {
    auto& pa = state.person(a);
    auto& pb = state.person(b);
    if (pa.partner || pb.partner) {
        throw IntegrityError("marry: " + to_string(a) + " or " + to_string(b) + " already partnered");
    }
    pa.partner = b;
    pb.partner = a;
}

void separate(WorldState& state, PersonId a) {
    auto& pa = state.person(a);
    if (!pa.partner) return;
    const PersonId b = *pa.partner;
    auto& pb = state.person(b);
    pa.partner.reset();
    if (pb.partner == a) pb.partner.reset();
    insert_sorted(pa.former_partners, b);
    insert_sorted(pb.former_partners, a);
}

void move_person(WorldState& state, PersonId who, HouseId to) {
    auto& p = state.person(who);
    auto& target = state.house(to);
    if (p.house) {
        if (*p.house == to) return;
        erase_sorted(state.house(*p.house).occupants, who);
    }
    insert_sorted(target.occupants, who);
    p.house = to;
}

void vacate(WorldState& state, PersonId who) {
    auto& p = state.person(who);
    if (!p.house) return;
    erase_sorted(state.house(*p.house).occupants, who);
    p.house.reset();
}

std::vector<std::string> validate_world(const WorldState& s) {
    std::vector<std::string> out;
    auto issue = [&out](std::string rule, const std::string& record) {
        out.push_back(std::move(rule) + ": " + record);
    };
    const int n = s.time.steps_per_year;

    for (std::size_t i = 0; i < s.persons.size(); ++i) {
        const Person& p = s.persons[i];
        const auto tag = to_string(p.id);
        if (p.id.index() != i) {
            issue("id out of place", tag);
            continue;
        }

        if (p.partner) {
            if (!s.has_person(*p.partner)) {
                issue("dangling partner ref", tag);
            } else {
                const Person& q = s.person(*p.partner);
                if (q.partner != p.id) issue("asymmetric partnership", tag);
                if (q.gender == p.gender) issue("same-gender partnership", tag);
                if (!p.alive || !q.alive) issue("dead person partnered", tag);
                if (!is_adult(p, n)) issue("married minor", tag);
            }
        }

        for (const auto& parent : {p.father, p.mother}) {
            if (!parent) continue;
            if (!s.has_person(*parent)) {
                issue("dangling parent ref", tag);
                continue;
            }
            if (*parent == p.id) issue("self-parent", tag);
            const auto& kids = s.person(*parent).children;
            if (!std::binary_search(kids.begin(), kids.end(), p.id)) {
                issue("child missing from parent's children", tag);
            }
        }
        if (p.father && p.mother && *p.father == *p.mother) issue("father equals mother", tag);
        if (p.father && s.has_person(*p.father) && !s.person(*p.father).is_male()) {
            issue("female father", tag);
        }
        if (p.mother && s.has_person(*p.mother) && !s.person(*p.mother).is_female()) {
            issue("male mother", tag);
        }

        if (!std::is_sorted(p.children.begin(), p.children.end()) ||
            std::adjacent_find(p.children.begin(), p.children.end()) != p.children.end()) {
            issue("children not canonical", tag);
        }
        for (PersonId c : p.children) {
            if (!s.has_person(c)) {
                issue("dangling child ref", tag);
                continue;
            }
            if (c == p.id) issue("self in children", tag);
            const Person& child = s.person(c);
            if (child.father != p.id && child.mother != p.id) issue("child without back link", tag);
        }

        if (p.alive) {
            if (!p.house) {
                issue("homeless", tag);
            } else if (!s.has_house(*p.house)) {
                issue("dangling house ref", tag);
            } else {
                const auto& occ = s.house(*p.house).occupants;
                if (!std::binary_search(occ.begin(), occ.end(), p.id)) {
                    issue("occupant missing from house", tag);
                }
            }
        } else if (p.house) {
            issue("dead person housed", tag);
        }
    }

    for (std::size_t i = 0; i < s.houses.size(); ++i) {
        const House& h = s.houses[i];
        const auto tag = to_string(h.id);
        if (h.id.index() != i) {
            issue("id out of place", tag);
            continue;
        }
        if (!s.has_town(h.town)) {
            issue("dangling town ref", tag);
        } else {
            const auto& hs = s.town(h.town).houses;
            if (std::find(hs.begin(), hs.end(), h.id) == hs.end()) issue("house missing from town", tag);
        }
        if (h.local.x < 1 || h.local.x > 25 || h.local.y < 1 || h.local.y > 25) {
            issue("house location out of bounds", tag);
        }
        if (!std::is_sorted(h.occupants.begin(), h.occupants.end()) ||
            std::adjacent_find(h.occupants.begin(), h.occupants.end()) != h.occupants.end()) {
            issue("occupants not canonical", tag);
        }
        for (PersonId o : h.occupants) {
            if (!s.has_person(o)) {
                issue("dangling occupant ref", tag);
            } else if (!s.person(o).alive) {
                issue("dead occupant", tag);
            } else if (s.person(o).house != h.id) {
                issue("occupant lives elsewhere", tag);
            }
        }
    }

    for (std::size_t i = 0; i < s.towns.size(); ++i) {
        const Town& w = s.towns[i];
        const auto tag = to_string(w.id);
        if (w.id.index() != i) {
            issue("id out of place", tag);
            continue;
        }
        for (HouseId h : w.houses) {
            if (!s.has_house(h)) {
                issue("dangling house ref", tag);
            } else if (s.house(h).town != w.id) {
                issue("house registered in wrong town", tag);
            }
        }
    }
    return out;
}

} // namespace demosim
