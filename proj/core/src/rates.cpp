#include "demosim/rates.h"

#include "demosim/errors.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace demosim {

double instantaneous(double p_yearly, int steps_per_year) {
    if (!(p_yearly >= 0.0)) {
        throw std::domain_error("instantaneous: negative yearly probability");
    }
    if (!(p_yearly < 1.0)) {
        throw std::domain_error("instantaneous: yearly probability must be < 1");
    }
    if (steps_per_year <= 0) {
        throw std::domain_error("instantaneous: steps per year must be positive");
    }
    const double p = -std::log1p(-p_yearly) / static_cast<double>(steps_per_year);
    return std::clamp(p, 0.0, 1.0);
}

double death_rate_yearly(const Person& person, const ModelParams& params, int steps_per_year) {
    const double age = age_years(person.age_steps, steps_per_year);
    const double age_term = person.is_male()
                                ? std::exp(age / params.male_age_scaling) * params.male_age_death_rate
                                : std::exp(age / params.female_age_scaling) * params.female_age_death_rate;
    return std::min(params.basic_death_rate + age_term, std::nextafter(1.0, 0.0));
}

int decade_index(double age_years) {
    const double decade = std::ceil(age_years / 10.0);
    if (!(decade >= 1.0)) return 1;
    if (decade >= kDecadeCount) return kDecadeCount;
    return static_cast<int>(decade);
}

double divorce_rate_yearly(const Person& man, const ModelParams& params, const ModelData& data,
                           int steps_per_year) {
    const int k = decade_index(age_years(man.age_steps, steps_per_year));
    return params.basic_divorce_rate * data.divorce_modifier_by_decade.at(k - 1);
}

double marriage_rate_yearly(const Person& man, const ModelParams& params, const ModelData& data,
                            int steps_per_year) {
    const int k = decade_index(age_years(man.age_steps, steps_per_year));
    return params.basic_male_marriage_rate * data.male_marriage_modifier_by_decade.at(k - 1);
}

double fertility_rate_yearly(const Person& woman, const ModelData& data, const SimTime& time) {
    const FertilityTable& table = data.fertility;
    const auto whole_years = static_cast<int>(woman.age_steps / time.steps_per_year);
    const int row = whole_years - table.age_offset();
    if (row < 0 || row >= table.rows()) {
        throw std::domain_error("fertility: no row for age " + std::to_string(whole_years));
    }
    const int col = std::clamp(time.current_year() - table.year_offset(), 0, table.cols() - 1);
    return table.at(row, col);
}

double age_factor(double diff) {
    double f = 1.0;
    if (diff >= 5.0) {
        f = 1.0 / (diff - 4.0);
    } else if (diff <= -2.0) {
        f = -1.0 / (diff + 1.0);
    }
    return std::max(f, 0.0);
}

double geo_factor(int distance) { return std::exp(-4.0 * distance); }

double children_factor(std::size_t man_children, std::size_t woman_children) {
    const auto cm = static_cast<double>(man_children);
    const auto cf = static_cast<double>(woman_children);
    return std::exp(cm * cf - cm - cf);
}

namespace {

int parse_header_int(const std::string& header, const std::string& key) {
    const auto pos = header.find(key + "=");
    if (pos == std::string::npos) {
        throw DataError("fertility header: missing " + key, 1, 0);
    }
    const char* start = header.c_str() + pos + key.size() + 1;
    char* end = nullptr;
    const long v = std::strtol(start, &end, 10);
    if (end == start) throw DataError("fertility header: bad " + key, 1, 0);
    return static_cast<int>(v);
}

} // namespace

FertilityTable read_fertility_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("fertility file is empty", 1, 0);
    const int age_offset = parse_header_int(line, "age_offset");
    const int year_offset = parse_header_int(line, "year_offset");

    std::vector<double> values;
    int rows = 0;
    int cols = -1;
    int file_row = 1;
    while (std::getline(in, line)) {
        ++file_row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const int data_row = rows + 1;
        std::stringstream fields(line);
        std::string cell;
        int col = 0;
        while (std::getline(fields, cell, ',')) {
            ++col;
            const auto first = cell.find_first_not_of(" \t\r");
            const auto last = cell.find_last_not_of(" \t\r");
            const std::string token =
                first == std::string::npos ? std::string{} : cell.substr(first, last - first + 1);
            char* end = nullptr;
            const double v = std::strtod(token.c_str(), &end);
            if (token.empty() || *end != '\0') {
                throw DataError("fertility: bad number '" + token + "' at row " + std::to_string(data_row) +
                                    ", column " + std::to_string(col),
                                data_row, col);
            }
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DataError("fertility: value outside [0,1] at row " + std::to_string(data_row) +
                                    ", column " + std::to_string(col),
                                data_row, col);
            }
            values.push_back(v);
        }
        if (cols < 0) {
            cols = col;
        } else if (col != cols) {
            throw DataError("fertility: row " + std::to_string(data_row) + " has " + std::to_string(col) +
                                " columns, expected " + std::to_string(cols),
                            data_row, col);
        }
        ++rows;
    }
    if (rows == 0 || cols <= 0) throw DataError("fertility file has no data rows", 2, 0);
    return FertilityTable(age_offset, year_offset, rows, cols, std::move(values));
}

FertilityTable load_fertility_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open fertility file " + path.string());
    return read_fertility_table(in);
}

} // namespace demosim
