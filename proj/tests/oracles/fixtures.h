#pragma once

// Reference values transcribed independently of the library sources, so a
// typo in core/src/defaults.cpp cannot hide itself.

#include <array>
#include <cmath>
#include <cstdint>

namespace oracle {

// Density matrix in tenths; integers keep the town-target arithmetic exact.
inline constexpr std::array<std::array<int, 8>, 12> kDensityTenths{{
    {0, 1, 2, 1, 0, 0, 0, 0},
    {1, 1, 2, 2, 3, 0, 0, 0},
    {0, 2, 2, 3, 0, 0, 0, 0},
    {0, 2, 10, 5, 0, 0, 0, 0},
    {4, 0, 2, 2, 4, 0, 0, 0},
    {6, 0, 0, 3, 8, 2, 0, 0},
    {0, 0, 0, 6, 8, 4, 0, 0},
    {0, 0, 2, 10, 8, 6, 1, 0},
    {0, 0, 1, 2, 10, 6, 3, 4},
    {0, 0, 5, 7, 5, 10, 10, 0},
    {0, 0, 2, 4, 6, 10, 10, 0},
    {0, 2, 3, 0, 0, 0, 0, 0},
}};

inline constexpr std::array<double, 16> kDivorceModifiers{0,     1.0,   0.9,   0.5, 0.4, 0.2, 0.1, 0.03,
                                                          0.01,  0.001, 0.001, 0.001, 0,  0,   0,   0};
inline constexpr std::array<double, 16> kMarriageModifiers{0,   0.16, 0.5,  1.0,  0.8, 0.7, 0.66, 0.5,
                                                           0.4, 0.2,  0.1,  0.05, 0.01, 0, 0,   0};

inline constexpr double kBasicDeathRate = 0.0001;
inline constexpr double kMaleAgeDeathRate = 0.00021;
inline constexpr double kMaleAgeScaling = 14.0;
inline constexpr double kFemaleAgeDeathRate = 0.00019;
inline constexpr double kFemaleAgeScaling = 15.5;

// ceil(pop * d / nnz) with d = tenths / 10, in integers.
inline std::int64_t town_target(std::int64_t pop, int tenths, int nonzero) {
    const std::int64_t num = pop * tenths;
    const std::int64_t den = 10LL * nonzero;
    return (num + den - 1) / den;
}

inline int nonzero_cells() {
    int n = 0;
    for (const auto& row : kDensityTenths) {
        for (int v : row) n += v > 0 ? 1 : 0;
    }
    return n;
}

// Yearly death probability, evaluated in long double.
inline long double death_rate(bool male, long double age_years) {
    const long double scale = male ? kMaleAgeScaling : kFemaleAgeScaling;
    const long double k = male ? kMaleAgeDeathRate : kFemaleAgeDeathRate;
    return kBasicDeathRate + std::exp(age_years / scale) * k;
}

} // namespace oracle
