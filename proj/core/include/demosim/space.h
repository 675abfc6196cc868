#pragma once

#include "demosim/model.h"
#include "demosim/sampling.h"

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace demosim {

/// Relative population density over the town grid, row-major. Row 1 is the
/// northernmost, column 1 the westernmost.
class DensityMap {
public:
    static constexpr int kRows = 12;
    static constexpr int kCols = 8;

    DensityMap() = default;
    /// Throws ConfigurationError on a ragged/empty matrix, entries outside
    /// [0,1] or an all-zero map.
    explicit DensityMap(std::vector<std::vector<double>> rows);

    int rows() const noexcept { return static_cast<int>(cells_.size()); }
    int cols() const noexcept { return cells_.empty() ? 0 : static_cast<int>(cells_.front().size()); }
    /// 1-based access.
    double at(int row, int col) const { return cells_.at(row - 1).at(col - 1); }
    int nonzero_count() const noexcept;

    friend bool operator==(const DensityMap&, const DensityMap&) = default;

private:
    std::vector<std::vector<double>> cells_;
};

/// Reads 12 lines of 8 whitespace-separated decimals. Blank lines and lines
/// starting with '#' are skipped. Throws DataError (with row/col) on a wrong
/// shape or unparsable value.
DensityMap read_density_map(std::istream& in);
DensityMap load_density_map(const std::filesystem::path& path);

/// One town per strictly positive cell, ids assigned in row-major order.
std::vector<Town> build_towns(const DensityMap& density);

int manhattan(const Town& a, const Town& b) noexcept;

/// Registers a new empty house at a uniform lattice point of the town.
HouseId create_house(WorldState& state, TownId town, Rng& rng);

/// A uniformly chosen empty house of the town, or a newly created one when
/// the town has none. `created` is set when a house had to be built.
HouseId find_or_create_empty_house(WorldState& state, TownId town, Rng& rng, bool* created = nullptr);

/// Town drawn with probability density / total density.
TownId weighted_town(std::span<const Town> towns, Rng& rng);

} // namespace demosim
