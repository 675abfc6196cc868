#pragma once

#include "demosim/model.h"
#include "demosim/sampling.h"
#include "demosim/snapshot.h"

#include <string>
#include <string_view>
#include <vector>

namespace demosim {

enum class Event { ageing, deaths, births, divorces, marriages };

std::string_view to_string(Event e);

/// Events applied in one step, ageing always first.
class EventOrder {
public:
    /// ageing, deaths, births, divorces, marriages.
    EventOrder();
    /// Throws ConfigurationError unless the list starts with ageing and
    /// names each event at most once.
    explicit EventOrder(std::vector<Event> events);

    /// Comma-separated event names, e.g. "ageing,deaths,births".
    static EventOrder parse(std::string_view text);

    const std::vector<Event>& events() const noexcept { return events_; }
    bool contains(Event e) const noexcept;
    /// True if `a` and `b` are both present and `a` comes first.
    bool before(Event a, Event b) const noexcept;
    std::string str() const;

    friend bool operator==(const EventOrder&, const EventOrder&) = default;

private:
    std::vector<Event> events_;
};

struct StepOutcome {
    std::vector<PersonId> births;
    std::vector<PersonId> deaths;
    /// Husbands of the couples formed / dissolved this step.
    std::vector<PersonId> marriages;
    std::vector<PersonId> divorces;
    std::vector<PersonId> adults_moved;
    std::vector<HouseId> houses_created;
    /// Empty houses picked for a mover instead of building a new one.
    std::vector<HouseId> houses_reused;

    void merge(const StepOutcome& other);
};

StepOutcome ageing(WorldState& state, Rng& rng);
StepOutcome deaths(WorldState& state, const ModelParams& params, Rng& rng);
StepOutcome births(WorldState& state, const ModelData& data, Rng& rng);
StepOutcome divorces(WorldState& state, const SnapshotStore& snaps, const ModelParams& params,
                     const ModelData& data, Rng& rng);
StepOutcome marriages(WorldState& state, const SnapshotStore& snaps, const ModelParams& params,
                      const ModelData& data, Rng& rng);

/// Married, alive, younger than 45 and without an alive child aged one
/// year or less.
bool is_reproducible(const WorldState& state, const Person& woman);

/// Single adult not aged exactly 18 who was already single at the previous
/// step.
bool marriage_eligible(const WorldState& state, const Snapshot& before, const Person& p);

/// Advances the clock one step and applies the events in `order`, then
/// freezes the snapshot of the new step. On any exception the state, the
/// rng and the snapshot store are left as they were.
StepOutcome step(WorldState& state, SnapshotStore& snaps, const ModelParams& params, const ModelData& data,
                 const EventOrder& order, Rng& rng);

} // namespace demosim
