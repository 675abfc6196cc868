#include "demosim/predicates.h"

#include "demosim/errors.h"

#include <algorithm>
#include <iterator>

namespace demosim {

SubPopulation::SubPopulation(std::initializer_list<PersonId> ids) : ids_(ids) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

SubPopulation SubPopulation::from(std::vector<PersonId> ids) {
    SubPopulation out;
    out.ids_ = std::move(ids);
    std::sort(out.ids_.begin(), out.ids_.end());
    out.ids_.erase(std::unique(out.ids_.begin(), out.ids_.end()), out.ids_.end());
    return out;
}

SubPopulation SubPopulation::everyone(const WorldState& state) {
    SubPopulation out;
    out.ids_.reserve(state.persons.size());
    for (const Person& p : state.persons) out.ids_.push_back(p.id);
    return out;
}

bool SubPopulation::contains(PersonId id) const noexcept {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

SubPopulation filter(const BooleanPredicate& pred, const SubPopulation& base, const WorldState& state,
                     const SnapshotStore& snaps) {
    std::vector<PersonId> out;
    for (PersonId id : base) {
        if (!state.has_person(id)) {
            throw IntegrityError("filter(" + pred.name + "): unresolvable " + to_string(id));
        }
        if (pred.eval(id, state, snaps)) out.push_back(id);
    }
    return SubPopulation::from(std::move(out));
}

SubPopulation combine(SetOp op, const SubPopulation& a, const SubPopulation& b) {
    std::vector<PersonId> out;
    switch (op) {
    case SetOp::unite:
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        break;
    case SetOp::intersect:
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        break;
    case SetOp::difference:
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        break;
    }
    return SubPopulation::from(std::move(out));
}

SubPopulation negate(const BooleanPredicate& pred, const SubPopulation& base, const WorldState& state,
                     const SnapshotStore& snaps) {
    return combine(SetOp::difference, base, filter(pred, base, state, snaps));
}

SubPopulation group_of_filtered(const GroupPredicate& g, const SubPopulation& base_filtered,
                                const WorldState& state) {
    std::vector<PersonId> out;
    for (PersonId q : base_filtered) {
        auto members = g.eval(q, state);
        out.insert(out.end(), members.begin(), members.end());
    }
    return SubPopulation::from(std::move(out));
}

SubPopulation filtered_group(const GroupPredicate& g, const SubPopulation& base,
                             const BooleanPredicate& pred, const WorldState& state,
                             const SnapshotStore& snaps) {
    return filter(pred, group_of_filtered(g, base, state), state, snaps);
}

SubPopulation just(const RecordPredicate& pred, const WorldState& state, const SnapshotStore& snaps) {
    const Snapshot& before = snaps.previous(state);
    std::vector<PersonId> out;
    for (const Person& p : state.persons) {
        if (!pred.eval(capture(state, p.id))) continue;
        if (before.contains(p.id) && pred.eval(before.at(p.id))) continue;
        out.push_back(p.id);
    }
    return SubPopulation::from(std::move(out));
}

AttributeValue pre(Attribute attribute, PersonId person, const WorldState& state,
                   const SnapshotStore& snaps) {
    const PersonRecord& r = snaps.previous(state).at(person);
    switch (attribute) {
    case Attribute::married:
        return r.married;
    case Attribute::alive:
        return r.alive;
    case Attribute::house:
        return r.house;
    case Attribute::town:
        return r.town;
    case Attribute::location:
        return r.location;
    }
    return false;
}

BooleanPredicate operator&&(BooleanPredicate a, BooleanPredicate b) {
    std::string name = "(" + a.name + " & " + b.name + ")";
    return {std::move(name), [a = std::move(a.eval), b = std::move(b.eval)](
                                 PersonId id, const WorldState& s, const SnapshotStore& sn) {
                return a(id, s, sn) && b(id, s, sn);
            }};
}

BooleanPredicate operator||(BooleanPredicate a, BooleanPredicate b) {
    std::string name = "(" + a.name + " | " + b.name + ")";
    return {std::move(name), [a = std::move(a.eval), b = std::move(b.eval)](
                                 PersonId id, const WorldState& s, const SnapshotStore& sn) {
                return a(id, s, sn) || b(id, s, sn);
            }};
}

BooleanPredicate operator!(BooleanPredicate a) {
    std::string name = "!" + a.name;
    return {std::move(name), [a = std::move(a.eval)](PersonId id, const WorldState& s,
                                                      const SnapshotStore& sn) { return !a(id, s, sn); }};
}

BooleanPredicate compose(BooleanPredicate outer, BooleanPredicate inner) {
    std::string name = outer.name + "(" + inner.name + ")";
    return {std::move(name), [o = std::move(outer.eval), i = std::move(inner.eval)](
                                 PersonId id, const WorldState& s, const SnapshotStore& sn) {
                return o(id, s, sn) && i(id, s, sn);
            }};
}

RecordPredicate operator!(RecordPredicate a) {
    std::string name = "!" + a.name;
    return {std::move(name), [a = std::move(a.eval)](const PersonRecord& r) { return !a(r); }};
}

BooleanPredicate current(RecordPredicate f) {
    return {f.name, [e = std::move(f.eval)](PersonId id, const WorldState& s, const SnapshotStore&) {
                return e(capture(s, id));
            }};
}

BooleanPredicate previous(RecordPredicate f) {
    return {"pre(" + f.name + ")",
            [e = std::move(f.eval)](PersonId id, const WorldState& s, const SnapshotStore& sn) {
                const Snapshot& before = sn.previous(s);
                return before.contains(id) && e(before.at(id));
            }};
}

std::vector<PersonId> siblings_of(const WorldState& state, PersonId id) {
    const Person& p = state.person(id);
    std::vector<PersonId> out;
    for (const auto& parent : {p.father, p.mother}) {
        if (!parent) continue;
        for (PersonId c : state.person(*parent).children) {
            if (c != id) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_orphan(const WorldState& state, PersonId id) {
    const Person& p = state.person(id);
    for (const auto& parent : {p.father, p.mother}) {
        if (parent && state.person(*parent).alive) return false;
    }
    return true;
}

bool is_oldest_sibling(const WorldState& state, PersonId id) {
    const Person& p = state.person(id);
    for (PersonId s : siblings_of(state, id)) {
        const Person& q = state.person(s);
        if (!q.alive) continue;
        if (q.age_steps > p.age_steps || (q.age_steps == p.age_steps && q.id < p.id)) return false;
    }
    return true;
}

namespace features {

namespace {
template <typename F>
BooleanPredicate on_person(std::string name, F f) {
    return {std::move(name), [f](PersonId id, const WorldState& s, const SnapshotStore&) {
                return f(s.person(id), s);
            }};
}
} // namespace

BooleanPredicate always(bool value) {
    return {value ? "true" : "false",
            [value](PersonId, const WorldState&, const SnapshotStore&) { return value; }};
}
BooleanPredicate male() {
    return on_person("male", [](const Person& p, const WorldState&) { return p.is_male(); });
}
BooleanPredicate female() {
    return on_person("female", [](const Person& p, const WorldState&) { return p.is_female(); });
}
BooleanPredicate alive() {
    return on_person("alive", [](const Person& p, const WorldState&) { return p.alive; });
}
BooleanPredicate married() {
    return on_person("married", [](const Person& p, const WorldState&) { return p.is_married(); });
}
BooleanPredicate single() {
    return on_person("single", [](const Person& p, const WorldState&) { return !p.is_married(); });
}
BooleanPredicate adult() {
    return on_person("adult",
                     [](const Person& p, const WorldState& s) { return is_adult(p, s.time.steps_per_year); });
}
BooleanPredicate age_at_least(int years) {
    return on_person("age>=" + std::to_string(years), [years](const Person& p, const WorldState& s) {
        return demosim::age_at_least(p, years, s.time.steps_per_year);
    });
}
BooleanPredicate has_children() {
    return on_person("hasChildren", [](const Person& p, const WorldState&) { return !p.children.empty(); });
}
BooleanPredicate has_a_sibling() {
    return on_person("hasASibling",
                     [](const Person& p, const WorldState& s) { return !siblings_of(s, p.id).empty(); });
}
BooleanPredicate orphan() {
    return on_person("orphan", [](const Person& p, const WorldState& s) { return is_orphan(s, p.id); });
}
BooleanPredicate oldest_sibling() {
    return on_person("oldestSibling",
                     [](const Person& p, const WorldState& s) { return is_oldest_sibling(s, p.id); });
}
BooleanPredicate lives_alone() {
    return on_person("livesAlone", [](const Person& p, const WorldState& s) {
        return p.alive && p.house && s.house(*p.house).occupants.size() == 1;
    });
}

} // namespace features

namespace groups {

GroupPredicate children() {
    return {"children", [](PersonId id, const WorldState& s) { return s.person(id).children; }};
}
GroupPredicate parents() {
    return {"parents", [](PersonId id, const WorldState& s) {
                std::vector<PersonId> out;
                const Person& p = s.person(id);
                if (p.father) out.push_back(*p.father);
                if (p.mother) out.push_back(*p.mother);
                std::sort(out.begin(), out.end());
                return out;
            }};
}
GroupPredicate siblings() {
    return {"siblings", [](PersonId id, const WorldState& s) { return siblings_of(s, id); }};
}
GroupPredicate father() {
    return {"father", [](PersonId id, const WorldState& s) {
                const auto& f = s.person(id).father;
                return f ? std::vector<PersonId>{*f} : std::vector<PersonId>{};
            }};
}
GroupPredicate mother() {
    return {"mother", [](PersonId id, const WorldState& s) {
                const auto& m = s.person(id).mother;
                return m ? std::vector<PersonId>{*m} : std::vector<PersonId>{};
            }};
}
GroupPredicate partner() {
    return {"partner", [](PersonId id, const WorldState& s) {
                const auto& q = s.person(id).partner;
                return q ? std::vector<PersonId>{*q} : std::vector<PersonId>{};
            }};
}

} // namespace groups

namespace records {

RecordPredicate alive() {
    return {"alive", [](const PersonRecord& r) { return r.alive; }};
}
RecordPredicate married() {
    return {"married", [](const PersonRecord& r) { return r.married; }};
}
RecordPredicate gave_birth() {
    return {"gaveBirth", [](const PersonRecord& r) { return r.gave_birth; }};
}
RecordPredicate in_town(TownId town) {
    return {"in " + to_string(town), [town](const PersonRecord& r) { return r.town == town; }};
}
RecordPredicate in_house(HouseId house) {
    return {"in " + to_string(house), [house](const PersonRecord& r) { return r.house == house; }};
}

} // namespace records

} // namespace demosim
