#pragma once

#include "demosim/model.h"
#include "demosim/space.h"

namespace demosim {

/// Population density of the 12x8 British grid.
DensityMap default_density_map();

std::vector<double> default_divorce_modifiers();
std::vector<double> default_marriage_modifiers();

/// Smooth single-peak age profile (ages 17..51, years 1951..2050) standing
/// in for national fertility data. Constant across years.
FertilityTable default_fertility_table();

ModelData default_model_data();

} // namespace demosim
