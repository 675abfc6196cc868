#include "demosim/verification.h"

#include "demosim/errors.h"
#include "demosim/predicates.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace demosim {

std::string_view to_string(Scope s) {
    switch (s) {
    case Scope::initial:
        return "initial";
    case Scope::every_step:
        return "every_step";
    case Scope::retrospective:
        return "retrospective";
    case Scope::offline:
        return "offline";
    }
    return "?";
}

std::string_view to_string(VerificationMode m) { return m == VerificationMode::warn ? "warn" : "fail"; }

SpaceDigest make_space_digest(const WorldState& state) {
    SpaceDigest d;
    d.step = state.time.step_index;
    for (const Town& w : state.towns) d.towns.push_back({w.id, w.row, w.col, w.density});
    d.house_towns.reserve(state.houses.size());
    d.house_locations.reserve(state.houses.size());
    for (const House& h : state.houses) {
        d.house_towns.push_back(h.town);
        d.house_locations.push_back(h.local);
    }
    return d;
}

namespace {

using Out = std::vector<Violation>;

void report(const CheckInput& in, Out& out, const char* label, std::vector<std::string> ids, std::string detail) {
    out.push_back({label, in.state.time.step_index, std::move(ids), std::move(detail)});
}

bool has_parent(const Person& p, PersonId q) { return p.father == q || p.mother == q; }

bool partners_now_or_before(const Person& a, PersonId b) {
    return a.partner == b || std::binary_search(a.former_partners.begin(), a.former_partners.end(), b);
}

bool share_parent(const Person& a, const Person& b) {
    for (const auto& pa : {a.father, a.mother}) {
        if (pa && (b.father == pa || b.mother == pa)) return true;
    }
    return false;
}

// b is a current or former partner of one of a's parents.
bool step_parent_of(const WorldState& s, const Person& child, PersonId b) {
    for (const auto& parent : {child.father, child.mother}) {
        if (parent && partners_now_or_before(s.person(*parent), b)) return true;
    }
    return false;
}

bool step_siblings(const WorldState& s, const Person& a, const Person& b) {
    for (const auto& pa : {a.father, a.mother}) {
        if (!pa) continue;
        const Person& parent = s.person(*pa);
        for (const auto& pb : {b.father, b.mother}) {
            if (pb && partners_now_or_before(parent, *pb)) return true;
        }
    }
    return false;
}

bool direct_kin(const WorldState& s, PersonId x, PersonId y) {
    if (x == y) return true;
    const Person& a = s.person(x);
    const Person& b = s.person(y);
    return partners_now_or_before(a, y) || has_parent(a, y) || has_parent(b, x) || share_parent(a, b) ||
           step_parent_of(s, a, y) || step_parent_of(s, b, x) || step_siblings(s, a, b);
}

// The person together with, for an orphan, their siblings: an orphan lives
// as family with the household of an oldest sibling.
std::vector<PersonId> stand_ins(const WorldState& s, PersonId id) {
    std::vector<PersonId> out{id};
    if (is_orphan(s, id)) {
        for (PersonId sib : siblings_of(s, id)) out.push_back(sib);
    }
    return out;
}

// ---- initial model ----

void adults_no_parents(const CheckInput& in, Out& out) {
    const int n = in.state.time.steps_per_year;
    for (const Person& p : in.state.persons) {
        if (is_adult(p, n) && (p.father || p.mother)) {
            report(in, out, "adults-no-parents", {to_string(p.id)}, "adult has a parent link");
        }
    }
}

void parents_alive(const CheckInput& in, Out& out) {
    const int n = in.state.time.steps_per_year;
    for (const Person& p : in.state.persons) {
        if (!p.alive || is_adult(p, n)) continue;
        for (const auto& parent : {p.father, p.mother}) {
            if (parent && !in.state.person(*parent).alive) {
                report(in, out, "parents-alive", {to_string(p.id), to_string(*parent)}, "child has a dead parent");
            }
        }
    }
}

void family_together(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    const int n = s.time.steps_per_year;
    for (const Person& p : s.persons) {
        if (!p.alive) continue;
        if (p.partner && p.is_male() && s.person(*p.partner).house != p.house) {
            report(in, out, "family-together", {to_string(p.id), to_string(*p.partner)}, "couple lives apart");
        }
        if (is_adult(p, n)) continue;
        for (const auto& parent : {p.father, p.mother}) {
            if (parent && s.person(*parent).alive && s.person(*parent).house != p.house) {
                report(in, out, "family-together", {to_string(p.id), to_string(*parent)},
                       "child lives apart from a parent");
            }
        }
    }
}

// ---- space ----

void static_towns(const CheckInput& in, Out& out) {
    if (!in.before) return;
    const SpaceDigest now = make_space_digest(in.state);
    if (now.towns != in.before->towns) {
        report(in, out, "static-towns", {}, "town set changed since step " + std::to_string(in.before->step));
    }
}

void house_persistence(const CheckInput& in, Out& out) {
    if (!in.before) return;
    const auto& s = in.state;
    for (std::size_t i = 0; i < in.before->house_towns.size(); ++i) {
        const HouseId h{static_cast<std::uint32_t>(i)};
        if (!s.has_house(h)) {
            report(in, out, "house-persistence", {to_string(h)}, "house disappeared");
            continue;
        }
        const House& house = s.house(h);
        if (house.town != in.before->house_towns[i] || !(house.local == in.before->house_locations[i])) {
            report(in, out, "house-persistence", {to_string(h)}, "house changed town or location");
        }
    }
}

void dynamic_space(const CheckInput& in, Out& out) {
    if (!in.before) return;
    if (in.state.houses.size() < in.before->house_towns.size()) {
        report(in, out, "dynamic-space", {},
               "house count fell from " + std::to_string(in.before->house_towns.size()) + " to " +
                   std::to_string(in.state.houses.size()));
    }
    for (std::size_t i = in.before->house_towns.size(); i < in.state.houses.size(); ++i) {
        if (!in.state.has_town(in.state.houses[i].town)) {
            report(in, out, "dynamic-space", {to_string(in.state.houses[i].id)}, "new house outside the towns");
        }
    }
}

void dynamic_houses_per_town(const CheckInput& in, Out& out) {
    if (!in.before) return;
    const auto& s = in.state;
    std::vector<std::vector<HouseId>> expected(s.towns.size());
    for (const House& h : s.houses) {
        if (s.has_town(h.town)) expected[h.town.index()].push_back(h.id);
    }
    std::vector<std::size_t> before_count(s.towns.size(), 0);
    for (TownId w : in.before->house_towns) {
        if (w.index() < before_count.size()) ++before_count[w.index()];
    }
    for (const Town& w : s.towns) {
        auto listed = w.houses;
        std::sort(listed.begin(), listed.end());
        if (listed != expected[w.id.index()]) {
            report(in, out, "dynamic-houses-per-town", {to_string(w.id)}, "town house list out of sync");
        }
        if (listed.size() < before_count[w.id.index()]) {
            report(in, out, "dynamic-houses-per-town", {to_string(w.id)}, "town lost houses");
        }
    }
}

void house_xy_bounds(const CheckInput& in, Out& out) {
    for (const House& h : in.state.houses) {
        if (h.local.x < 1 || h.local.x > 25 || h.local.y < 1 || h.local.y > 25) {
            report(in, out, "house-xy-bounds", {to_string(h.id)},
                   "location (" + std::to_string(h.local.x) + "," + std::to_string(h.local.y) + ")");
        }
    }
}

std::vector<bool> occupied_before(const WorldState& s, const Snapshot& before) {
    std::vector<bool> occupied(s.houses.size(), false);
    for (const PersonRecord& r : before.records) {
        if (r.alive && r.house && r.house->index() < occupied.size()) occupied[r.house->index()] = true;
    }
    return occupied;
}

// A house is only built when the town had no empty house at that moment.
void empty_house_selection(const CheckInput& in, Out& out) {
    if (!in.outcome || in.outcome->houses_created.empty()) return;
    const auto& s = in.state;
    const Snapshot& before = in.snaps->previous(s);
    const auto occupied = occupied_before(s, before);
    std::set<HouseId> created(in.outcome->houses_created.begin(), in.outcome->houses_created.end());
    std::set<HouseId> touched(in.outcome->houses_reused.begin(), in.outcome->houses_reused.end());
    std::set<TownId> towns;
    for (HouseId h : created) towns.insert(s.house(h).town);
    for (TownId w : towns) {
        for (HouseId h : s.town(w).houses) {
            if (created.count(h) || touched.count(h)) continue;
            if (!occupied[h.index()] && s.house(h).empty()) {
                report(in, out, "empty-house-selection", {to_string(h), to_string(w)},
                       "house built although this one stayed empty");
            }
        }
    }
}

// ---- population ----

void marriage_age(const CheckInput& in, Out& out) {
    const int n = in.state.time.steps_per_year;
    for (const Person& p : in.state.persons) {
        if (p.partner && !is_adult(p, n)) {
            report(in, out, "marriage-age", {to_string(p.id)}, "married minor");
        }
    }
}

void married_gives_birth(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    const Snapshot& before = in.snaps->previous(s);
    const std::int64_t fertile_limit = static_cast<std::int64_t>(kMaxFertileAgeYears) * s.time.steps_per_year;
    for (std::size_t i = before.records.size(); i < s.persons.size(); ++i) {
        const Person& c = s.persons[i];
        if (!c.mother) {
            report(in, out, "married-gives-birth", {to_string(c.id)}, "neonate without mother");
            continue;
        }
        const Person& m = s.person(*c.mother);
        const bool was_married_to_father =
            before.contains(m.id) && c.father && before.at(m.id).partner == c.father;
        const bool is_married_to_father = c.father && m.partner == c.father;
        if (!m.is_female() || m.age_steps >= fertile_limit || !(was_married_to_father || is_married_to_father)) {
            report(in, out, "married-gives-birth", {to_string(c.id), to_string(m.id)},
                   "mother not a married woman under 45");
        }
    }
}

void no_adoption(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    const Snapshot& before = in.snaps->previous(s);
    const std::size_t count = std::min(before.records.size(), s.persons.size());
    for (std::size_t i = 0; i < count; ++i) {
        const Person& p = s.persons[i];
        const PersonRecord& r = before.records[i];
        if (p.father != r.father || p.mother != r.mother) {
            report(in, out, "no-adoption", {to_string(p.id)}, "parent links changed");
        }
    }
}

// ---- general ----

void homeless(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    for (const Person& p : s.persons) {
        if (!p.alive) continue;
        if (!p.house || !s.has_house(*p.house) ||
            !std::binary_search(s.house(*p.house).occupants.begin(), s.house(*p.house).occupants.end(), p.id)) {
            report(in, out, "homeless", {to_string(p.id)}, "alive without a house");
        }
    }
}

void housing_kinship(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    for (const House& h : s.houses) {
        const auto& occ = h.occupants;
        for (std::size_t i = 0; i < occ.size(); ++i) {
            for (std::size_t j = i + 1; j < occ.size(); ++j) {
                if (!housing_kin(s, occ[i], occ[j])) {
                    report(in, out, "housing-kinship", {to_string(occ[i]), to_string(occ[j]), to_string(h.id)},
                           "unrelated co-occupants");
                }
            }
        }
    }
}

void adult_moves_out(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    const Snapshot& before = in.snaps->previous(s);
    const std::int64_t adult_age = static_cast<std::int64_t>(kAdultAgeYears) * s.time.steps_per_year;
    for (const Person& p : s.persons) {
        if (!p.alive || p.age_steps != adult_age) continue;
        if (is_orphan(s, p.id) && is_oldest_sibling(s, p.id)) continue;
        const bool alone = p.house && s.house(*p.house).occupants.size() == 1;
        const bool same_town = before.contains(p.id) && before.at(p.id).town == s.town_of(p.id);
        if (!alone || !same_town) {
            report(in, out, "adult-moves-out", {to_string(p.id)},
                   !alone ? "new adult does not live alone" : "new adult changed town");
        }
    }
}

void dead_no_house(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    for (const Person& p : s.persons) {
        if (!p.alive && p.house) report(in, out, "dead-no-house", {to_string(p.id)}, "dead person has a house");
    }
    for (const House& h : s.houses) {
        for (PersonId q : h.occupants) {
            if (s.has_person(q) && !s.person(q).alive) {
                report(in, out, "dead-no-house", {to_string(q), to_string(h.id)}, "dead person among occupants");
            }
        }
    }
}

void divorce_male_moves(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    const Snapshot& before = in.snaps->previous(s);
    const std::size_t count = std::min(before.records.size(), s.persons.size());
    for (std::size_t i = 0; i < count; ++i) {
        const Person& m = s.persons[i];
        const PersonRecord& r = before.records[i];
        if (!m.alive || !m.is_male() || m.partner || !r.married || !r.partner) continue;
        if (!s.person(*r.partner).alive) continue; // widowed, not divorced
        const bool alone = m.house && s.house(*m.house).occupants.size() == 1;
        const bool moved = m.house != r.house;
        const bool same_town = s.town_of(m.id) == r.town;
        if (!alone || !moved || !same_town) {
            report(in, out, "divorce-male-moves", {to_string(m.id), to_string(*r.partner)},
                   !moved ? "divorced male stayed" : !alone ? "divorced male not alone" : "divorced male changed town");
        }
    }
}

void marriage_housing(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    const Snapshot& before = in.snaps->previous(s);
    for (const Person& m : s.persons) {
        if (!m.is_male() || !m.partner) continue;
        const Person& f = s.person(*m.partner);
        if (!before.contains(m.id) || !before.contains(f.id) || before.at(m.id).married) continue;
        const auto& pre_m = before.at(m.id).house;
        const auto& pre_f = before.at(f.id).house;
        if (m.house != f.house || !(m.house == pre_m || m.house == pre_f)) {
            report(in, out, "marriage-housing", {to_string(m.id), to_string(f.id)},
                   m.house != f.house ? "newly-weds live apart" : "newly-weds in a third house");
        }
    }
}

void neonate_house(const CheckInput& in, Out& out) {
    const auto& s = in.state;
    const Snapshot& before = in.snaps->previous(s);
    for (std::size_t i = before.records.size(); i < s.persons.size(); ++i) {
        const Person& c = s.persons[i];
        if (!c.alive || !c.mother) continue;
        const Person& m = s.person(*c.mother);
        if (m.alive && m.house != c.house) {
            report(in, out, "neonate-house", {to_string(c.id), to_string(m.id)}, "neonate not in mother's house");
        }
    }
}

void integrity(const CheckInput& in, Out& out) {
    for (std::string& issue : validate_world(in.state)) {
        const auto colon = issue.rfind(": ");
        std::vector<std::string> ids;
        if (colon != std::string::npos) ids.push_back(issue.substr(colon + 2));
        report(in, out, "integrity", std::move(ids), std::move(issue));
    }
}

// ---- statistical ----

double chi_square_z(const std::vector<double>& observed, const std::vector<double>& expected) {
    double chi2 = 0.0;
    int df = -1;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) continue;
        chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
        ++df;
    }
    if (df <= 0) return 0.0;
    return (chi2 - df) / std::sqrt(2.0 * df);
}

void vacuous(const CheckInput&, Out&) {}

std::vector<Assumption> build_registry() {
    using S = Scope;
    auto a = [](std::string label, std::string family, S scope, bool history, CheckFn fn) {
        return Assumption{std::move(label), std::move(family), scope, history, false, std::move(fn)};
    };
    auto v = [](std::string label, std::string family, S scope) {
        return Assumption{std::move(label), std::move(family), scope, false, true, vacuous};
    };
    auto offline = [](std::string label, std::string family) {
        // Evaluated by check_offline; nothing to do per step.
        return Assumption{std::move(label), std::move(family), S::offline, false, false, vacuous};
    };
    return {
        a("adults-no-parents", "a0", S::initial, false, adults_no_parents),
        a("parents-alive", "a0", S::initial, false, parents_alive),
        v("siblings-age-free", "a0", S::initial),
        a("family-together", "a0", S::initial, false, family_together),
        a("static-towns", "a_s", S::retrospective, false, static_towns),
        a("house-persistence", "a_s", S::retrospective, false, house_persistence),
        a("dynamic-space", "a_s", S::retrospective, false, dynamic_space),
        a("dynamic-houses-per-town", "a_s", S::retrospective, false, dynamic_houses_per_town),
        a("house-xy-bounds", "a_s", S::every_step, false, house_xy_bounds),
        offline("uniform-house-locations", "a_s"),
        a("empty-house-selection", "a_s", S::every_step, true, empty_house_selection),
        offline("weighted-town-selection", "a_s"),
        offline("gender-ratio", "a_p"),
        a("marriage-age", "a_p", S::every_step, false, marriage_age),
        a("married-gives-birth", "a_p", S::every_step, true, married_gives_birth),
        a("no-adoption", "a_p", S::every_step, true, no_adoption),
        a("homeless", "a", S::every_step, false, homeless),
        v("arbitrary-occupants", "a", S::every_step),
        a("housing-kinship", "a", S::every_step, false, housing_kinship),
        a("adult-moves-out", "a", S::every_step, true, adult_moves_out),
        a("dead-no-house", "a", S::every_step, false, dead_no_house),
        a("divorce-male-moves", "a", S::every_step, true, divorce_male_moves),
        a("marriage-housing", "a", S::every_step, true, marriage_housing),
        a("neonate-house", "a", S::every_step, true, neonate_house),
        a("integrity", "a", S::every_step, false, integrity),
    };
}

} // namespace

bool housing_kin(const WorldState& state, PersonId a, PersonId b) {
    if (direct_kin(state, a, b)) return true;
    const auto as = stand_ins(state, a);
    const auto bs = stand_ins(state, b);
    for (PersonId x : as) {
        for (PersonId y : bs) {
            if ((x != a || y != b) && direct_kin(state, x, y)) return true;
        }
    }
    return false;
}

const std::vector<Assumption>& assumption_registry() {
    static const std::vector<Assumption> registry = build_registry();
    return registry;
}

const Assumption* find_assumption(std::string_view label) {
    for (const Assumption& a : assumption_registry()) {
        if (a.label == label) return &a;
    }
    return nullptr;
}

std::vector<Violation> check_initial(const WorldState& state) {
    Out out;
    const CheckInput in{state};
    for (const Assumption& a : assumption_registry()) {
        if (a.scope == Scope::initial || (a.scope == Scope::every_step && !a.needs_history)) a.check(in, out);
    }
    return out;
}

std::vector<Violation> check_step(const WorldState& state, const SnapshotStore& snaps, const StepOutcome* outcome) {
    Out out;
    const CheckInput in{state, &snaps, outcome};
    for (const Assumption& a : assumption_registry()) {
        if (a.scope == Scope::every_step) a.check(in, out);
    }
    return out;
}

std::vector<Violation> check_retrospective(const SpaceDigest& before, const WorldState& state) {
    Out out;
    const CheckInput in{state, nullptr, nullptr, &before};
    for (const Assumption& a : assumption_registry()) {
        if (a.scope == Scope::retrospective) a.check(in, out);
    }
    return out;
}

std::vector<Violation> check_offline(const WorldState& state, double z_limit) {
    Out out;
    const CheckInput in{state};

    const auto n = static_cast<double>(state.persons.size());
    if (n > 0) {
        double males = 0;
        for (const Person& p : state.persons) males += p.is_male() ? 1 : 0;
        const double z = (males - 0.5 * n) / std::sqrt(0.25 * n);
        if (std::abs(z) > z_limit) {
            report(in, out, "gender-ratio", {}, "male fraction " + std::to_string(males / n) + ", z=" + std::to_string(z));
        }
    }

    if (state.houses.size() >= 250) {
        std::vector<double> xs(25, 0.0);
        std::vector<double> ys(25, 0.0);
        for (const House& h : state.houses) {
            if (h.local.x >= 1 && h.local.x <= 25) xs[h.local.x - 1] += 1;
            if (h.local.y >= 1 && h.local.y <= 25) ys[h.local.y - 1] += 1;
        }
        const std::vector<double> expected(25, static_cast<double>(state.houses.size()) / 25.0);
        for (const auto* axis : {&xs, &ys}) {
            const double z = chi_square_z(*axis, expected);
            if (z > z_limit) {
                report(in, out, "uniform-house-locations", {}, "lattice coordinates not uniform, z=" + std::to_string(z));
            }
        }
    }

    // Only houses placed by density-weighted draws are informative, which
    // are those of the initial world.
    if (state.time.step_index == 0 && !state.towns.empty()) {
        std::vector<double> observed(state.towns.size(), 0.0);
        double total_density = 0.0;
        for (const Town& w : state.towns) total_density += w.density;
        double placed = 0.0;
        for (const House& h : state.houses) {
            observed[h.town.index()] += 1;
            placed += 1;
        }
        std::vector<double> expected;
        for (const Town& w : state.towns) expected.push_back(placed * w.density / total_density);
        if (placed >= 10.0 * static_cast<double>(state.towns.size())) {
            const double z = chi_square_z(observed, expected);
            if (z > z_limit) {
                report(in, out, "weighted-town-selection", {}, "house towns do not follow density, z=" + std::to_string(z));
            }
        }
    }
    return out;
}

AssumptionFailure::AssumptionFailure(std::vector<Violation> violations)
    : std::runtime_error([&violations] {
          std::string msg = "assumption violated";
          if (!violations.empty()) {
              const Violation& v = violations.front();
              msg += ": " + v.label + " at step " + std::to_string(v.step) + " (" + v.detail + ")";
              if (violations.size() > 1) msg += " and " + std::to_string(violations.size() - 1) + " more";
          }
          return msg;
      }()),
      violations_{std::move(violations)} {}

void Verifier::absorb(std::vector<Violation> found) {
    if (found.empty()) return;
    violations_.insert(violations_.end(), found.begin(), found.end());
    if (mode_ == VerificationMode::fail) throw AssumptionFailure(std::move(found));
}

void Verifier::on_initial(const WorldState& state) {
    digest_ = make_space_digest(state);
    absorb(check_initial(state));
}

void Verifier::on_step(const WorldState& state, const SnapshotStore& snaps, const StepOutcome& outcome) {
    auto found = check_step(state, snaps, &outcome);
    auto retro = check_retrospective(digest_, state);
    found.insert(found.end(), retro.begin(), retro.end());
    digest_ = make_space_digest(state);
    absorb(std::move(found));
}

} // namespace demosim
