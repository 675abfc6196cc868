#include "demosim/space.h"

#include "demosim/errors.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace demosim {

DensityMap::DensityMap(std::vector<std::vector<double>> rows) : cells_{std::move(rows)} {
    if (cells_.empty() || cells_.front().empty()) {
        throw ConfigurationError("density map is empty");
    }
    double total = 0.0;
    for (const auto& row : cells_) {
        if (row.size() != cells_.front().size()) throw ConfigurationError("density map is ragged");
        for (double v : row) {
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigurationError("density entries must lie in [0,1]");
            total += v;
        }
    }
    if (!(total > 0.0)) throw ConfigurationError("density map has no inhabited cell");
}

int DensityMap::nonzero_count() const noexcept {
    int n = 0;
    for (const auto& row : cells_) {
        for (double v : row) n += v > 0.0 ? 1 : 0;
    }
    return n;
}

DensityMap read_density_map(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const int row = static_cast<int>(rows.size()) + 1;
        if (row > DensityMap::kRows) {
            throw DataError("density map has more than 12 rows", row, 0);
        }
        std::istringstream fields(line);
        std::vector<double> values;
        std::string token;
        while (fields >> token) {
            const int col = static_cast<int>(values.size()) + 1;
            char* end = nullptr;
            const double v = std::strtod(token.c_str(), &end);
            if (end == token.c_str() || *end != '\0') {
                throw DataError("density map: bad number '" + token + "'", row, col);
            }
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DataError("density map: value outside [0,1]", row, col);
            }
            values.push_back(v);
        }
        if (values.size() != static_cast<std::size_t>(DensityMap::kCols)) {
            throw DataError("density map: expected 8 columns, got " + std::to_string(values.size()), row,
                            static_cast<int>(values.size()));
        }
        rows.push_back(std::move(values));
    }
    if (rows.size() != static_cast<std::size_t>(DensityMap::kRows)) {
        throw DataError("density map: expected 12 rows, got " + std::to_string(rows.size()),
                        static_cast<int>(rows.size()), 0);
    }
    try {
        return DensityMap(std::move(rows));
    } catch (const ConfigurationError& e) {
        throw DataError(std::string("density map: ") + e.what());
    }
}

DensityMap load_density_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open density map " + path.string());
    return read_density_map(in);
}

std::vector<Town> build_towns(const DensityMap& density) {
    std::vector<Town> towns;
    for (int r = 1; r <= density.rows(); ++r) {
        for (int c = 1; c <= density.cols(); ++c) {
            const double d = density.at(r, c);
            if (!(d > 0.0)) continue;
            Town w;
            w.id = TownId{static_cast<std::uint32_t>(towns.size())};
            w.row = r;
            w.col = c;
            w.density = d;
            towns.push_back(std::move(w));
        }
    }
    if (towns.empty()) throw ConfigurationError("density map has no inhabited cell");
    return towns;
}

int manhattan(const Town& a, const Town& b) noexcept {
    return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

HouseId create_house(WorldState& state, TownId town, Rng& rng) {
    Town& w = state.town(town);
    House h;
    h.id = HouseId{static_cast<std::uint32_t>(state.houses.size())};
    h.town = town;
    h.local.x = rng.uniform_int(1, 25);
    h.local.y = rng.uniform_int(1, 25);
    w.houses.push_back(h.id);
    state.houses.push_back(std::move(h));
    return state.houses.back().id;
}

HouseId find_or_create_empty_house(WorldState& state, TownId town, Rng& rng, bool* created) {
    std::vector<HouseId> empty;
    for (HouseId h : state.town(town).houses) {
        if (state.house(h).empty()) empty.push_back(h);
    }
    if (created) *created = empty.empty();
    if (empty.empty()) return create_house(state, town, rng);
    return empty[rng.index(empty.size())];
}

TownId weighted_town(std::span<const Town> towns, Rng& rng) {
    if (towns.empty()) throw ConfigurationError("weighted_town: no towns");
    std::vector<double> weights;
    weights.reserve(towns.size());
    for (const Town& w : towns) weights.push_back(w.density);
    const auto i = weighted_index(weights, rng);
    if (!i) throw ConfigurationError("weighted_town: all densities are zero");
    return towns[*i].id;
}

} // namespace demosim
