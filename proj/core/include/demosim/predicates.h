#pragma once

#include "demosim/model.h"
#include "demosim/snapshot.h"

#include <functional>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace demosim {

/// A featured sub-population: a set of person ids kept in ascending order.
class SubPopulation {
public:
    SubPopulation() = default;
    SubPopulation(std::initializer_list<PersonId> ids);

    /// Sorts and de-duplicates.
    static SubPopulation from(std::vector<PersonId> ids);
    /// Every person record in the state, dead or alive (P).
    static SubPopulation everyone(const WorldState& state);

    bool contains(PersonId id) const noexcept;
    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    const std::vector<PersonId>& ids() const noexcept { return ids_; }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }

    friend bool operator==(const SubPopulation&, const SubPopulation&) = default;

private:
    std::vector<PersonId> ids_;
};

/// f(p) in {true,false}. May consult the previous snapshot (pre-phrased
/// features); must be deterministic.
struct BooleanPredicate {
    std::string name;
    std::function<bool(PersonId, const WorldState&, const SnapshotStore&)> eval;
};

/// g(p) subset of P. Individual predicates (father, partner) return at most
/// one id.
struct GroupPredicate {
    std::string name;
    std::function<std::vector<PersonId>(PersonId, const WorldState&)> eval;
};

/// Feature over a frozen attribute record; the unit of the temporal operators.
struct RecordPredicate {
    std::string name;
    std::function<bool(const PersonRecord&)> eval;
};

enum class SetOp { unite, intersect, difference };

/// P_f = { p in base : f(p) }. Throws IntegrityError on unresolvable ids.
SubPopulation filter(const BooleanPredicate& pred, const SubPopulation& base, const WorldState& state,
                     const SnapshotStore& snaps);

SubPopulation combine(SetOp op, const SubPopulation& a, const SubPopulation& b);

/// P_{not f} = base - P_f.
SubPopulation negate(const BooleanPredicate& pred, const SubPopulation& base, const WorldState& state,
                     const SnapshotStore& snaps);

/// g(P_f): union of g(q) over q in an already-filtered base.
SubPopulation group_of_filtered(const GroupPredicate& g, const SubPopulation& base_filtered,
                                const WorldState& state);

/// g(P)_f: members of g(base) that satisfy f.
SubPopulation filtered_group(const GroupPredicate& g, const SubPopulation& base,
                             const BooleanPredicate& pred, const WorldState& state,
                             const SnapshotStore& snaps);

/// P_just(f) = P_f(now) - P_f(previous step). "Now" is the live state, so
/// the operator is usable mid-step as well as after the freeze. Persons
/// absent from the previous snapshot count as not satisfying f there.
/// Throws MissingSnapshotError at step 0.
SubPopulation just(const RecordPredicate& pred, const WorldState& state, const SnapshotStore& snaps);

enum class Attribute { married, alive, house, town, location };

using AttributeValue =
    std::variant<bool, std::optional<HouseId>, std::optional<TownId>, std::optional<Location>>;

/// Value of an attribute in the previous step. Throws MissingSnapshotError
/// at step 0 or for a person created during the current step.
AttributeValue pre(Attribute attribute, PersonId person, const WorldState& state,
                   const SnapshotStore& snaps);

// Predicate combinators. `compose(f1, f2)` is P_{f1(f2)}: f2 evaluated only
// on members of P_{f1}, which for pure predicates equals f1 and f2.
BooleanPredicate operator&&(BooleanPredicate a, BooleanPredicate b);
BooleanPredicate operator||(BooleanPredicate a, BooleanPredicate b);
BooleanPredicate operator!(BooleanPredicate a);
BooleanPredicate compose(BooleanPredicate outer, BooleanPredicate inner);
RecordPredicate operator!(RecordPredicate a);

/// Lifts a record feature onto the live state (f) or onto the previous
/// snapshot (pre(f)).
BooleanPredicate current(RecordPredicate f);
BooleanPredicate previous(RecordPredicate f);

namespace features {

BooleanPredicate always(bool value);
BooleanPredicate male();
BooleanPredicate female();
BooleanPredicate alive();
BooleanPredicate married();
BooleanPredicate single();
BooleanPredicate adult();
BooleanPredicate age_at_least(int years);
BooleanPredicate has_children();
/// At least one sibling (shared father or mother), dead or alive.
BooleanPredicate has_a_sibling();
/// No alive parent.
BooleanPredicate orphan();
/// No alive sibling is older (ties broken by the smaller id).
BooleanPredicate oldest_sibling();
BooleanPredicate lives_alone();

} // namespace features

namespace groups {

GroupPredicate children();
GroupPredicate parents();
GroupPredicate siblings();
GroupPredicate father();
GroupPredicate mother();
GroupPredicate partner();

} // namespace groups

namespace records {

RecordPredicate alive();
RecordPredicate married();
RecordPredicate gave_birth();
RecordPredicate in_town(TownId town);
RecordPredicate in_house(HouseId house);

} // namespace records

// Plain helpers shared with events and verification.
std::vector<PersonId> siblings_of(const WorldState& state, PersonId id);
bool is_orphan(const WorldState& state, PersonId id);
bool is_oldest_sibling(const WorldState& state, PersonId id);

} // namespace demosim
