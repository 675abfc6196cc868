#include "demosim_cli/report.h"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace demosim::cli {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::ios_base::failure("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::ios_base::failure("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string timeseries_csv(const RunResult& result) {
    std::ostringstream out;
    result.series.write_csv(out);
    return out.str();
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string violations_csv(const RunResult& result) {
    std::ostringstream out;
    out << "step,label,ids,detail\n";
    for (const Violation& v : result.violations) {
        std::string ids;
        for (const auto& id : v.ids) {
            if (!ids.empty()) ids += ';';
            ids += id;
        }
        out << v.step << ',' << csv_field(v.label) << ',' << csv_field(ids) << ',' << csv_field(v.detail) << '\n';
    }
    return out.str();
}

std::string hex_digest(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string summary_json(const CliConfig& config, const RunResult& result, const std::string& generated_at) {
    using nlohmann::ordered_json;
    CliConfig echo = config;
    echo.run.sim.seed = result.seed;

    ordered_json j;
    j["status"] = result.aborted ? "assumption_failure" : "ok";
    j["seed"] = result.seed;
    j["final_digest"] = hex_digest(result.final_digest);
    j["steps"] = result.series.rows.empty() ? 0 : result.series.rows.back().step;
    ordered_json cfg = ordered_json::object();
    std::istringstream lines(render_config(echo));
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = cfg;

    const auto& t = result.totals;
    j["totals"] = {{"births", t.births},         {"deaths", t.deaths},
                   {"marriages", t.marriages},   {"divorces", t.divorces},
                   {"adults_moved", t.adults_moved}, {"houses_created", t.houses_created}};
    if (!result.series.rows.empty()) {
        const auto& last = result.series.rows.back();
        j["final"] = {{"alive", last.alive}, {"houses", last.houses}, {"empty_houses", last.empty_houses}};
    }

    const InitReport& r = result.init;
    ordered_json parentless = ordered_json::array();
    for (PersonId id : r.parentless_children) parentless.push_back(to_string(id));
    j["init"] = {{"persons", r.persons},
                 {"town_targets", r.town_targets},
                 {"town_residents", r.town_residents},
                 {"married_couples", r.married_couples},
                 {"selected_males", r.selected_males},
                 {"unmatched_males", r.unmatched_males},
                 {"children_with_parents", r.children_with_parents},
                 {"parentless_children", parentless},
                 {"houses", r.houses}};

    j["violations"] = result.violations.size();
    if (result.aborted) j["abort_reason"] = result.abort_reason;
    j["generated_at"] = generated_at;
    return j.dump(2) + "\n";
}

void write_artifacts(const std::filesystem::path& dir, const CliConfig& config, const RunResult& result) {
    std::filesystem::create_directories(dir);
    write_atomic(dir / "timeseries.csv", timeseries_csv(result));
    write_atomic(dir / "violations.csv", violations_csv(result));
    write_atomic(dir / "summary.json", summary_json(config, result, utc_timestamp()));
}

} // namespace demosim::cli
