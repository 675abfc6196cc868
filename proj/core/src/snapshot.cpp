#include "demosim/snapshot.h"

#include "demosim/errors.h"

#include <string>

namespace demosim {

PersonRecord capture(const WorldState& state, PersonId id) {
    const Person& p = state.person(id);
    PersonRecord r;
    r.alive = p.alive;
    r.married = p.partner.has_value();
    r.partner = p.partner;
    r.house = p.house;
    if (p.house) {
        const House& h = state.house(*p.house);
        r.town = h.town;
        r.location = h.local;
    }
    r.age_steps = p.age_steps;
    r.father = p.father;
    r.mother = p.mother;
    for (PersonId c : p.children) {
        if (state.person(c).age_steps == 0) {
            r.gave_birth = p.is_female();
            break;
        }
    }
    return r;
}

const PersonRecord& Snapshot::at(PersonId id) const {
    if (!contains(id)) {
        throw MissingSnapshotError("no record of " + to_string(id) + " in snapshot of step " +
                                   std::to_string(step_index));
    }
    return records[id.index()];
}

void SnapshotStore::freeze(const WorldState& state) {
    auto snap = std::make_shared<Snapshot>();
    snap->step_index = state.time.step_index;
    snap->records.reserve(state.persons.size());
    for (const Person& p : state.persons) {
        snap->records.push_back(capture(state, p.id));
    }
    if (latest_ && latest_->step_index == snap->step_index) {
        latest_ = std::move(snap);
        return;
    }
    older_ = std::move(latest_);
    latest_ = std::move(snap);
}

const Snapshot* SnapshotStore::find(std::int64_t step) const noexcept {
    if (latest_ && latest_->step_index == step) return latest_.get();
    if (older_ && older_->step_index == step) return older_.get();
    return nullptr;
}

const Snapshot& SnapshotStore::previous(const WorldState& state) const {
    const auto step = state.time.step_index - 1;
    if (const Snapshot* s = find(step)) return *s;
    throw MissingSnapshotError("no snapshot of step " + std::to_string(step));
}

} // namespace demosim
