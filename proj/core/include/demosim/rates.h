#pragma once

#include "demosim/model.h"

#include <filesystem>
#include <istream>

namespace demosim {

/// Per-step Bernoulli probability for an event with yearly probability
/// `p_yearly`: -ln(1 - p) / steps_per_year, clamped to [0,1].
/// Throws std::domain_error unless 0 <= p_yearly < 1 and steps_per_year > 0.
double instantaneous(double p_yearly, int steps_per_year);

/// basicDeathRate + exp(age / scaling) * ageDeathRate for the person's
/// gender, clamped to stay strictly below 1.
double death_rate_yearly(const Person& person, const ModelParams& params, int steps_per_year);

/// ceil(age / 10) clamped to [1, 16].
int decade_index(double age_years);

double divorce_rate_yearly(const Person& man, const ModelParams& params, const ModelData& data,
                           int steps_per_year);

double marriage_rate_yearly(const Person& man, const ModelParams& params, const ModelData& data,
                            int steps_per_year);

/// Table lookup by whole years of age and the current calendar year. Years
/// outside the table use the nearest column; an age outside the table
/// throws std::domain_error.
double fertility_rate_yearly(const Person& woman, const ModelData& data, const SimTime& time);

/// Partner-age preference; `diff` = age(man) - age(woman) in years.
/// Never negative.
double age_factor(double diff);
/// e^{-4 d} for the Manhattan distance d between the partners' towns.
double geo_factor(int distance);
/// Preference by the number of children each partner already has.
double children_factor(std::size_t man_children, std::size_t woman_children);

/// Header "age_offset=<int> year_offset=<int>" then one comma-separated row
/// per age. Throws DataError with the 1-based row/column of the fault.
FertilityTable read_fertility_table(std::istream& in);
FertilityTable load_fertility_table(const std::filesystem::path& path);

} // namespace demosim
