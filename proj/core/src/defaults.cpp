#include "demosim/defaults.h"

#include <cmath>

namespace demosim {

DensityMap default_density_map() {
    return DensityMap({
        {0.0, 0.1, 0.2, 0.1, 0.0, 0.0, 0.0, 0.0},
        {0.1, 0.1, 0.2, 0.2, 0.3, 0.0, 0.0, 0.0},
        {0.0, 0.2, 0.2, 0.3, 0.0, 0.0, 0.0, 0.0},
        {0.0, 0.2, 1.0, 0.5, 0.0, 0.0, 0.0, 0.0},
        {0.4, 0.0, 0.2, 0.2, 0.4, 0.0, 0.0, 0.0},
        {0.6, 0.0, 0.0, 0.3, 0.8, 0.2, 0.0, 0.0},
        {0.0, 0.0, 0.0, 0.6, 0.8, 0.4, 0.0, 0.0},
        {0.0, 0.0, 0.2, 1.0, 0.8, 0.6, 0.1, 0.0},
        {0.0, 0.0, 0.1, 0.2, 1.0, 0.6, 0.3, 0.4},
        {0.0, 0.0, 0.5, 0.7, 0.5, 1.0, 1.0, 0.0},
        {0.0, 0.0, 0.2, 0.4, 0.6, 1.0, 1.0, 0.0},
        {0.0, 0.2, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0},
    });
}

std::vector<double> default_divorce_modifiers() {
    return {0, 1.0, 0.9, 0.5, 0.4, 0.2, 0.1, 0.03, 0.01, 0.001, 0.001, 0.001, 0, 0, 0, 0};
}

std::vector<double> default_marriage_modifiers() {
    return {0, 0.16, 0.5, 1.0, 0.8, 0.7, 0.66, 0.5, 0.4, 0.2, 0.1, 0.05, 0.01, 0, 0, 0};
}

FertilityTable default_fertility_table() {
    constexpr int first_age = 17;
    constexpr int last_age = 51;
    constexpr int first_year = 1951;
    constexpr int years = 100;
    constexpr int rows = last_age - first_age + 1;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(rows) * years);
    for (int age = first_age; age <= last_age; ++age) {
        const double z = (age - 30.0) / 6.0;
        const double rate = 0.12 * std::exp(-0.5 * z * z);
        values.insert(values.end(), years, rate);
    }
    return FertilityTable(first_age, first_year, rows, years, std::move(values));
}

ModelData default_model_data() {
    return {default_fertility_table(), default_divorce_modifiers(), default_marriage_modifiers()};
}

} // namespace demosim
