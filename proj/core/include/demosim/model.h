#pragma once

#include "demosim/ids.h"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace demosim {

inline constexpr int kAdultAgeYears = 18;
inline constexpr int kMaxFertileAgeYears = 45;
inline constexpr int kDecadeCount = 16;

/// Steps per year for the named clock rates (Hourly, Daily, Weekly, Monthly,
/// Yearly). Case-insensitive; nullopt for anything else.
std::optional<int> steps_per_year_for(std::string_view delta_t);

struct SimTime {
    std::int64_t step_index{0};
    int t0_year{2020};
    int steps_per_year{365};

    int current_year() const noexcept {
        return t0_year + static_cast<int>(step_index / steps_per_year);
    }
};

struct SimulationParams {
    int t0{2020};
    int t_final{2030};
    std::string delta_t{"Daily"};
    int steps_per_year{365};
    /// nullopt means "random": resolved from entropy when the run starts.
    std::optional<std::uint64_t> seed;
    /// Implementation-dependent extras. Only "seed" is interpreted.
    std::map<std::string, std::string> meta;

    std::int64_t total_steps() const noexcept {
        return static_cast<std::int64_t>(t_final - t0) * steps_per_year;
    }
};

/// Throws ConfigurationError if t_final <= t0 or steps_per_year <= 0.
void validate(const SimulationParams& params);

struct ModelParams {
    double basic_divorce_rate{0.06};
    double basic_death_rate{0.0001};
    double basic_male_marriage_rate{0.7};
    double female_age_death_rate{0.00019};
    double female_age_scaling{15.5};
    int initial_pop{10000};
    double male_age_death_rate{0.00021};
    double male_age_scaling{14.0};
    int max_num_marr_cand{100};
    double start_married_ratio{0.8};
    /// Candidate count max(cap, pool/10) instead of the capped default.
    /// See candidate_count in init.h.
    bool literal_candidate_count{false};
};

/// Throws ConfigurationError on negative rates, non-positive scalings,
/// a married ratio outside [0,1] or non-positive candidate counts.
void validate(const ModelParams& params);

/// Per-year fertility rates. Row r holds women aged (age_offset + r) whole
/// years, column c holds calendar year (year_offset + c).
class FertilityTable {
public:
    FertilityTable() = default;
    FertilityTable(int age_offset, int year_offset, int rows, int cols, std::vector<double> values);

    int age_offset() const noexcept { return age_offset_; }
    int year_offset() const noexcept { return year_offset_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    double at(int row, int col) const { return values_.at(static_cast<std::size_t>(row) * cols_ + col); }
    const std::vector<double>& values() const noexcept { return values_; }

    friend bool operator==(const FertilityTable&, const FertilityTable&) = default;

private:
    int age_offset_{0};
    int year_offset_{0};
    int rows_{0};
    int cols_{0};
    std::vector<double> values_;
};

struct ModelData {
    FertilityTable fertility;
    std::vector<double> divorce_modifier_by_decade;
    std::vector<double> male_marriage_modifier_by_decade;
};

/// Throws ConfigurationError unless both modifier vectors hold exactly 16
/// non-negative entries and every fertility entry lies in [0,1].
void validate(const ModelData& data);

enum class Gender : std::uint8_t { male, female };

inline std::string_view to_string(Gender g) { return g == Gender::male ? "male" : "female"; }

struct Location {
    int x{1};
    int y{1};
    friend bool operator==(const Location&, const Location&) = default;
};

struct Person {
    PersonId id;
    Gender gender{Gender::male};
    bool alive{true};
    std::int64_t age_steps{0};
    std::optional<PersonId> partner;
    std::optional<PersonId> father;
    std::optional<PersonId> mother;
    /// Ascending id order (children are created in order).
    std::vector<PersonId> children;
    /// Partners of dissolved marriages (divorce or widowhood), ascending.
    std::vector<PersonId> former_partners;
    std::optional<HouseId> house;

    bool is_male() const noexcept { return gender == Gender::male; }
    bool is_female() const noexcept { return gender == Gender::female; }
    bool is_married() const noexcept { return partner.has_value(); }
};

struct House {
    HouseId id;
    TownId town;
    Location local;
    /// Alive residents, ascending id.
    std::vector<PersonId> occupants;

    bool empty() const noexcept { return occupants.empty(); }
};

struct Town {
    TownId id;
    int row{1}; ///< 1-based grid row (north to south)
    int col{1}; ///< 1-based grid column (west to east)
    double density{0.0};
    std::vector<HouseId> houses;
};

struct WorldState {
    std::vector<Person> persons;
    std::vector<House> houses;
    std::vector<Town> towns;
    SimTime time;

    bool has_person(PersonId id) const noexcept { return id.index() < persons.size(); }
    bool has_house(HouseId id) const noexcept { return id.index() < houses.size(); }
    bool has_town(TownId id) const noexcept { return id.index() < towns.size(); }

    /// Checked lookups; throw IntegrityError on unknown ids.
    const Person& person(PersonId id) const;
    Person& person(PersonId id);
    const House& house(HouseId id) const;
    House& house(HouseId id);
    const Town& town(TownId id) const;
    Town& town(TownId id);

    /// Appends a person with the next dense id and returns it.
    Person& add_person(Gender gender, std::int64_t age_steps);

    /// Town of an alive person's house, nullopt for the houseless.
    std::optional<TownId> town_of(PersonId id) const;

    friend bool operator==(const WorldState&, const WorldState&);
};

bool operator==(const Person&, const Person&);
bool operator==(const House&, const House&);
bool operator==(const Town&, const Town&);

/// Age in (fractional) years.
double age_years(const Person& person, const SimTime& time);
double age_years(std::int64_t age_steps, int steps_per_year);

/// Exact integer threshold check: age_steps >= years * steps_per_year.
inline bool age_at_least(const Person& p, int years, int steps_per_year) {
    return p.age_steps >= static_cast<std::int64_t>(years) * steps_per_year;
}
inline bool is_adult(const Person& p, int steps_per_year) {
    return age_at_least(p, kAdultAgeYears, steps_per_year);
}

/// Links two persons as partners and records nothing else.
void marry(WorldState& state, PersonId a, PersonId b);

/// Dissolves a partnership on both sides and remembers the former partner.
void separate(WorldState& state, PersonId a);

/// Moves an alive person into `to`, keeping occupant sets consistent.
void move_person(WorldState& state, PersonId who, HouseId to);

/// Removes a person from their house (used at death).
void vacate(WorldState& state, PersonId who);

/// Referential-integrity sweep. Empty iff every WorldState invariant holds;
/// each entry reads "<rule>: <record>".
std::vector<std::string> validate_world(const WorldState& state);

} // namespace demosim
