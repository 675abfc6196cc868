#pragma once

#include "demosim/model.h"
#include "demosim/sampling.h"
#include "demosim/space.h"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace demosim {

struct InitReport {
    /// Persons created per town, indexed by TownId.
    std::vector<int> town_targets;
    /// Residents per town after family housing, indexed by TownId.
    std::vector<int> town_residents;
    int persons{0};
    int married_couples{0};
    int selected_males{0};
    int unmatched_males{0};
    int children_with_parents{0};
    std::vector<PersonId> parentless_children;
    int houses{0};
};

/// ceil(initial_pop * density / nonzero_count) per town, indexed by TownId.
std::vector<int> town_population_targets(int initial_pop, const DensityMap& density);

/// Independent fair coin per person, ascending id.
void assign_genders(WorldState& state, Rng& rng);

/// |floor(g)| with g ~ Normal(0, 25 * steps_per_year).
std::int64_t sample_age(Rng& rng, int steps_per_year);

/// Size of the random candidate set drawn from a pool of `pool` eligible
/// women. The default caps at `max_candidates`; literal mode uses
/// max(max_candidates, pool / 10), which grows with the pool instead.
std::size_t candidate_count(std::size_t pool, int max_candidates, bool literal);

void init_partnerships(WorldState& state, const ModelParams& params, Rng& rng, InitReport& report);
void assign_parents(WorldState& state, Rng& rng, InitReport& report);
void assign_housing(WorldState& state, Rng& rng, InitReport& report);

/// Builds the initial world at step 0: persons per town target, genders,
/// ages, partnerships, parents, housing, in that order on one stream.
WorldState initialize(const DensityMap& density, const ModelParams& params, const SimTime& time, Rng& rng,
                      InitReport* report = nullptr);

} // namespace demosim
