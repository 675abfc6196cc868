#include "demosim_cli/config.h"

#include <demosim/defaults.h>
#include <demosim/rates.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace demosim::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest text that reads back to the same value.
    for (int prec = 1; prec <= 17; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

double to_double(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0') throw ConfigRangeError(key + ": not a number: '" + text + "'");
    return v;
}

long long to_int(const std::string& key, const std::string& text, bool wide = false) {
    long long v = 0;
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, v);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ConfigRangeError(key + ": not an integer: '" + text + "'");
    }
    if (!wide && (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())) {
        throw ConfigRangeError(key + ": out of range: " + text);
    }
    return v;
}

std::vector<double> to_vector(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.size() != static_cast<std::size_t>(kDecadeCount)) {
        throw ConfigRangeError(key + ": expected 16 comma-separated values, got " + std::to_string(out.size()));
    }
    for (double v : out) {
        if (!(v >= 0.0)) throw ConfigRangeError(key + ": values must be >= 0");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigRangeError(key + ": expected true or false");
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (double x : v) {
        if (!out.empty()) out += ", ";
        out += fmt_double(x);
    }
    return out;
}

} // namespace

void check_ranges(const RunConfig& c) {
    try {
        validate(c.sim);
        validate(c.params);
        validate(c.data);
    } catch (const ConfigurationError& e) {
        throw ConfigRangeError(e.what());
    }
    const auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
    if (!(c.params.basic_divorce_rate * max_of(c.data.divorce_modifier_by_decade) < 1.0)) {
        throw ConfigRangeError("basic_divorce_rate times the largest divorce modifier must be < 1");
    }
    if (!(c.params.basic_male_marriage_rate * max_of(c.data.male_marriage_modifier_by_decade) < 1.0)) {
        throw ConfigRangeError("basic_male_marriage_rate times the largest marriage modifier must be < 1");
    }
    for (double v : c.data.fertility.values()) {
        if (!(v < 1.0)) throw ConfigRangeError("fertility rates must be < 1");
    }
}

CliConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    CliConfig out;
    out.run = default_run_config();
    RunConfig& rc = out.run;
    bool steps_given = false;
    std::optional<int> steps_value;

    const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters{
        {"t0", [&](auto& k, auto& v) { rc.sim.t0 = static_cast<int>(to_int(k, v)); }},
        {"t_final", [&](auto& k, auto& v) { rc.sim.t_final = static_cast<int>(to_int(k, v)); }},
        {"delta_t", [&](auto&, auto& v) { rc.sim.delta_t = v; }},
        {"steps_per_year",
         [&](auto& k, auto& v) {
             steps_given = true;
             steps_value = static_cast<int>(to_int(k, v));
         }},
        {"seed",
         [&](auto& k, auto& v) {
             if (v == "random") {
                 rc.sim.seed.reset();
             } else {
                 const long long s = to_int(k, v, true);
                 if (s < 0) throw ConfigRangeError("seed must be >= 0");
                 rc.sim.seed = static_cast<std::uint64_t>(s);
             }
             rc.sim.meta["seed"] = v;
         }},
        {"initial_pop", [&](auto& k, auto& v) { rc.params.initial_pop = static_cast<int>(to_int(k, v)); }},
        {"basic_divorce_rate", [&](auto& k, auto& v) { rc.params.basic_divorce_rate = to_double(k, v); }},
        {"basic_death_rate", [&](auto& k, auto& v) { rc.params.basic_death_rate = to_double(k, v); }},
        {"basic_male_marriage_rate",
         [&](auto& k, auto& v) { rc.params.basic_male_marriage_rate = to_double(k, v); }},
        {"female_age_death_rate", [&](auto& k, auto& v) { rc.params.female_age_death_rate = to_double(k, v); }},
        {"female_age_scaling", [&](auto& k, auto& v) { rc.params.female_age_scaling = to_double(k, v); }},
        {"male_age_death_rate", [&](auto& k, auto& v) { rc.params.male_age_death_rate = to_double(k, v); }},
        {"male_age_scaling", [&](auto& k, auto& v) { rc.params.male_age_scaling = to_double(k, v); }},
        {"max_num_marr_cand",
         [&](auto& k, auto& v) { rc.params.max_num_marr_cand = static_cast<int>(to_int(k, v)); }},
        {"start_married_ratio", [&](auto& k, auto& v) { rc.params.start_married_ratio = to_double(k, v); }},
        {"literal_candidate_count", [&](auto& k, auto& v) { rc.params.literal_candidate_count = to_bool(k, v); }},
        {"fertility_path", [&](auto&, auto& v) { out.fertility_path = v; }},
        {"density_path", [&](auto&, auto& v) { out.density_path = v; }},
        {"divorce_modifiers", [&](auto& k, auto& v) { rc.data.divorce_modifier_by_decade = to_vector(k, v); }},
        {"marriage_modifiers",
         [&](auto& k, auto& v) { rc.data.male_marriage_modifier_by_decade = to_vector(k, v); }},
        {"event_order",
         [&](auto&, auto& v) {
             try {
                 rc.order = EventOrder::parse(v);
             } catch (const ConfigurationError& e) {
                 throw ConfigRangeError(std::string("event_order: ") + e.what());
             }
         }},
        {"verification_mode",
         [&](auto&, auto& v) {
             if (v == "warn") {
                 rc.verification = VerificationMode::warn;
             } else if (v == "fail") {
                 rc.verification = VerificationMode::fail;
             } else {
                 throw ConfigRangeError("verification_mode must be warn or fail");
             }
         }},
        {"out_dir", [&](auto&, auto& v) { rc.out_dir = v; }},
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigSyntaxError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigSyntaxError("line " + std::to_string(line_no) + ": empty key", line_no);
        if (value.empty()) {
            throw ConfigSyntaxError("line " + std::to_string(line_no) + ": empty value for " + key, line_no);
        }
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw UnknownKeyError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        it->second(key, value);
    }

    const auto known = steps_per_year_for(rc.sim.delta_t);
    if (steps_given) {
        if (*steps_value <= 0) throw ConfigRangeError("steps_per_year must be > 0");
        if (known && *known != *steps_value) {
            throw ConfigRangeError("steps_per_year " + std::to_string(*steps_value) + " contradicts delta_t " +
                                   rc.sim.delta_t);
        }
        rc.sim.steps_per_year = *steps_value;
    } else if (known) {
        rc.sim.steps_per_year = *known;
    } else {
        throw ConfigRangeError("unknown delta_t '" + rc.sim.delta_t + "' (give steps_per_year)");
    }

    auto resolve = [&base_dir](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    if (!out.fertility_path.empty()) rc.data.fertility = load_fertility_table(resolve(out.fertility_path));
    if (!out.density_path.empty()) rc.density = load_density_map(resolve(out.density_path));

    check_ranges(rc);
    return out;
}

CliConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file " + path.string());
    return parse_config(in, path.parent_path());
}

std::string render_config(const CliConfig& c) {
    const RunConfig& r = c.run;
    std::ostringstream out;
    out << "t0 = " << r.sim.t0 << '\n'
        << "t_final = " << r.sim.t_final << '\n'
        << "delta_t = " << r.sim.delta_t << '\n'
        << "steps_per_year = " << r.sim.steps_per_year << '\n'
        << "seed = " << (r.sim.seed ? std::to_string(*r.sim.seed) : std::string("random")) << '\n'
        << "initial_pop = " << r.params.initial_pop << '\n'
        << "basic_divorce_rate = " << fmt_double(r.params.basic_divorce_rate) << '\n'
        << "basic_death_rate = " << fmt_double(r.params.basic_death_rate) << '\n'
        << "basic_male_marriage_rate = " << fmt_double(r.params.basic_male_marriage_rate) << '\n'
        << "female_age_death_rate = " << fmt_double(r.params.female_age_death_rate) << '\n'
        << "female_age_scaling = " << fmt_double(r.params.female_age_scaling) << '\n'
        << "male_age_death_rate = " << fmt_double(r.params.male_age_death_rate) << '\n'
        << "male_age_scaling = " << fmt_double(r.params.male_age_scaling) << '\n'
        << "max_num_marr_cand = " << r.params.max_num_marr_cand << '\n'
        << "start_married_ratio = " << fmt_double(r.params.start_married_ratio) << '\n'
        << "literal_candidate_count = " << (r.params.literal_candidate_count ? "true" : "false") << '\n';
    if (!c.fertility_path.empty()) out << "fertility_path = " << c.fertility_path << '\n';
    if (!c.density_path.empty()) out << "density_path = " << c.density_path << '\n';
    out << "divorce_modifiers = " << join(r.data.divorce_modifier_by_decade) << '\n'
        << "marriage_modifiers = " << join(r.data.male_marriage_modifier_by_decade) << '\n'
        << "event_order = " << r.order.str() << '\n'
        << "verification_mode = " << to_string(r.verification) << '\n'
        << "out_dir = " << r.out_dir.string() << '\n';
    return out.str();
}

} // namespace demosim::cli
