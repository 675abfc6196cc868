#pragma once

#include "demosim/model.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace demosim {

/// Frozen per-person attributes needed by pre/just queries and the
/// step-wise assumption checks.
struct PersonRecord {
    bool alive{false};
    bool married{false};
    std::optional<PersonId> partner;
    std::optional<HouseId> house;
    std::optional<TownId> town;
    std::optional<Location> location;
    std::int64_t age_steps{0};
    /// A child of this person was born in the step that produced the record.
    bool gave_birth{false};
    std::optional<PersonId> father;
    std::optional<PersonId> mother;

    friend bool operator==(const PersonRecord&, const PersonRecord&) = default;
};

/// Reads the live record of one person.
PersonRecord capture(const WorldState& state, PersonId id);

struct Snapshot {
    std::int64_t step_index{0};
    /// Indexed by PersonId; persons created later are absent.
    std::vector<PersonRecord> records;

    bool contains(PersonId id) const noexcept { return id.index() < records.size(); }
    const PersonRecord& at(PersonId id) const;
};

/// Two-deep history of frozen snapshots. The engine freezes one at the end
/// of every completed step; queries at step t read the snapshot of t - 1.
class SnapshotStore {
public:
    /// Captures the state as the snapshot of `state.time.step_index`. A
    /// snapshot already held for that step is replaced.
    void freeze(const WorldState& state);

    /// Snapshot of `step`, or nullptr when not held.
    const Snapshot* find(std::int64_t step) const noexcept;

    /// Snapshot of the step preceding `state.time.step_index`; throws
    /// MissingSnapshotError when absent (always at step 0).
    const Snapshot& previous(const WorldState& state) const;

    const Snapshot* latest() const noexcept { return latest_.get(); }

    void clear() noexcept {
        latest_.reset();
        older_.reset();
    }

private:
    std::shared_ptr<const Snapshot> latest_;
    std::shared_ptr<const Snapshot> older_;
};

} // namespace demosim
