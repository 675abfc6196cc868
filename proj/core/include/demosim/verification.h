#pragma once

#include "demosim/events.h"
#include "demosim/model.h"
#include "demosim/snapshot.h"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace demosim {

enum class Scope { initial, every_step, retrospective, offline };

std::string_view to_string(Scope s);

struct Violation {
    std::string label;
    std::int64_t step{0};
    /// Offending records as "p12", "h3", "w0".
    std::vector<std::string> ids;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Id sets of the static and dynamic space, kept between steps.
struct SpaceDigest {
    struct TownEntry {
        TownId id;
        int row{0};
        int col{0};
        double density{0.0};
        friend bool operator==(const TownEntry&, const TownEntry&) = default;
    };
    std::int64_t step{0};
    std::vector<TownEntry> towns;
    /// Town and location of every house, indexed by HouseId.
    std::vector<TownId> house_towns;
    std::vector<Location> house_locations;
};

SpaceDigest make_space_digest(const WorldState& state);

struct CheckInput {
    const WorldState& state;
    const SnapshotStore* snaps{nullptr};
    const StepOutcome* outcome{nullptr};
    const SpaceDigest* before{nullptr};
};

using CheckFn = std::function<void(const CheckInput&, std::vector<Violation>&)>;

struct Assumption {
    std::string label;
    /// a0 (initial model), a_s (space), a_p (population) or a (general).
    std::string family;
    Scope scope{Scope::every_step};
    /// Needs the previous snapshot (pre/just phrasing).
    bool needs_history{false};
    /// Nothing to check; registered so the table stays complete.
    bool vacuous{false};
    CheckFn check;
};

/// Every assumption of the model, one entry per label.
const std::vector<Assumption>& assumption_registry();
const Assumption* find_assumption(std::string_view label);

/// Initial-scope assumptions plus the history-free step checks.
std::vector<Violation> check_initial(const WorldState& state);

/// Every-step assumptions against the live state and the previous
/// snapshot. `outcome` enables the checks that need this step's moves.
std::vector<Violation> check_step(const WorldState& state, const SnapshotStore& snaps,
                                  const StepOutcome* outcome = nullptr);

/// Houses never disappear and towns never change between two digests.
std::vector<Violation> check_retrospective(const SpaceDigest& before, const WorldState& state);

/// Statistical assumptions (gender ratio, house locations, town weights).
/// A violation means a deviation beyond `z_limit` standard errors.
std::vector<Violation> check_offline(const WorldState& state, double z_limit = 6.0);

/// True if the co-occupancy of `a` and `b` is allowed: partners (current or
/// former), parent and child, siblings, step-parent and step-child,
/// step-siblings, or linked through an orphan's sibling.
bool housing_kin(const WorldState& state, PersonId a, PersonId b);

enum class VerificationMode { warn, fail };

std::string_view to_string(VerificationMode m);

/// Raised in fail mode by Verifier when a check reports violations.
class AssumptionFailure : public std::runtime_error {
public:
    explicit AssumptionFailure(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Runs the registry over a run and accumulates violations.
class Verifier {
public:
    explicit Verifier(VerificationMode mode = VerificationMode::fail) : mode_{mode} {}

    void on_initial(const WorldState& state);
    /// Call after each step, once its snapshot has been frozen.
    void on_step(const WorldState& state, const SnapshotStore& snaps, const StepOutcome& outcome);

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    VerificationMode mode() const noexcept { return mode_; }

private:
    void absorb(std::vector<Violation> found);

    VerificationMode mode_;
    SpaceDigest digest_;
    std::vector<Violation> violations_;
};

} // namespace demosim
