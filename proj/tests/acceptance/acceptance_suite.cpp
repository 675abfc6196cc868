// Acceptance criteria A1..A10. Prints one PASS/FAIL line per criterion.
//
// Exit status is non-zero when a criterion fails that is not listed in
// kDocumentedFailures. Listed criteria still print FAIL; the list only
// records that the failure is understood (see README, "Known failures").

#include "oracles/fixtures.h"
#include "oracles/world_builder.h"

#include <demosim/defaults.h>
#include <demosim/engine.h>
#include <demosim/errors.h>
#include <demosim/events.h>
#include <demosim/init.h>
#include <demosim/predicates.h>
#include <demosim/rates.h>
#include <demosim_cli/app.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace demosim;
namespace fs = std::filesystem;

namespace {

// A1: the literal identity does not hold for -ln(1-p)/N (see README).
// A5: the model itself produces unrelated co-occupants on some seeds.
const std::set<int> kDocumentedFailures{1, 5};

struct Outcome {
    int id;
    bool pass;
    std::string title;
    std::string detail;
};

std::vector<Outcome> g_results;

void record(int id, bool pass, const std::string& title, const std::string& detail) {
    g_results.push_back({id, pass, title, detail});
    std::printf("A%-2d %s  %s\n      %s\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- A1

void a1_instantaneous_round_trip() {
    const auto t0 = Clock::now();
    const std::vector<double> ps{0.01, 0.05, 0.2};
    const std::vector<int> ns{12, 52, 365};

    double worst_literal = 0.0;
    double worst_exp = 0.0;
    double worst_z = 0.0;
    bool mc_ok = true;
    std::string mc_notes;
    Rng rng(20240601);
    const int chains = 100000;
    for (double p : ps) {
        for (int n : ns) {
            const double q = instantaneous(p, n);
            const double literal = 1.0 - std::pow(1.0 - q, n);
            worst_literal = std::max(worst_literal, std::abs(literal - p) / p);
            worst_exp = std::max(worst_exp, std::abs(-std::expm1(-n * q) - p) / p);

            int hits = 0;
            for (int c = 0; c < chains; ++c) {
                for (int s = 0; s < n; ++s) {
                    if (rng.bernoulli(q)) {
                        ++hits;
                        break;
                    }
                }
            }
            const double observed = static_cast<double>(hits) / chains;
            const double sigma = std::sqrt(p * (1.0 - p) / chains);
            const double z = (observed - p) / sigma;
            worst_z = std::max(worst_z, std::abs(z));
            if (std::abs(z) > 3.0) {
                mc_ok = false;
                mc_notes += fmt(" [p=%g N=%d obs=%.5f z=%.2f]", p, n, observed, z);
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool literal_ok = worst_literal <= 1e-12;
    record(1, literal_ok && mc_ok && secs < 10.0, "instantaneous probability round trip",
           fmt("identity 1-(1-q)^N=p: worst rel err %.3e (limit 1e-12) %s; "
               "1-exp(-Nq)=p: worst rel err %.1e; Monte Carlo 1e5 chains: worst |z| %.2f (limit 3)%s; %.1fs",
               worst_literal, literal_ok ? "ok" : "NOT MET", worst_exp, worst_z, mc_notes.c_str(), secs));
}

// ---------------------------------------------------------------- A2

void a2_death_rates() {
    const ModelParams params;
    Person m;
    m.gender = Gender::male;
    m.age_steps = 70 * 365;
    Person f = m;
    f.gender = Gender::female;
    const double male = death_rate_yearly(m, params, 365);
    const double female = death_rate_yearly(f, params, 365);
    const double male_oracle = static_cast<double>(oracle::death_rate(true, 70));
    const double female_oracle = static_cast<double>(oracle::death_rate(false, 70));
    const bool ok = std::abs(male - 0.031267) <= 1e-6 && std::abs(female - 0.017481) <= 1e-6 &&
                    std::abs(male - male_oracle) <= 1e-12 && std::abs(female - female_oracle) <= 1e-12;
    record(2, ok, "death rates at age 70",
           fmt("male %.7f (want 0.031267), female %.7f (want 0.017481), tolerance 1e-6", male, female));
}

// ---------------------------------------------------------------- A3

void a3_initial_towns() {
    ModelParams params;
    params.initial_pop = 10000;
    SimTime t;
    Rng rng(3);
    InitReport rep;
    const WorldState s = initialize(default_density_map(), params, t, rng, &rep);
    std::vector<int> expected;
    for (const auto& row : oracle::kDensityTenths) {
        for (int v : row) {
            if (v > 0) expected.push_back(static_cast<int>(oracle::town_target(10000, v, 48)));
        }
    }
    const int total = std::accumulate(expected.begin(), expected.end(), 0);
    int mismatches = 0;
    for (std::size_t i = 0; i < expected.size() && i < rep.town_targets.size(); ++i) {
        mismatches += expected[i] != rep.town_targets[i];
    }
    const bool ok = s.towns.size() == 48 && rep.town_targets.size() == expected.size() && mismatches == 0 &&
                    rep.persons == total && static_cast<int>(s.persons.size()) == total;
    record(3, ok, "initial per-town counts",
           fmt("towns %zu (want 48), per-town mismatches %d, persons %d (want %d)", s.towns.size(), mismatches,
               rep.persons, total));
}

// ---------------------------------------------------------------- A4

void a4_initial_statistics() {
    const auto t0 = Clock::now();
    const int n = 1000000;
    WorldState s;
    s.time.steps_per_year = 365;
    s.persons.reserve(n);
    for (int i = 0; i < n; ++i) s.add_person(Gender::male, 0);
    Rng rng(4);
    assign_genders(s, rng);
    for (Person& p : s.persons) p.age_steps = sample_age(rng, 365);
    double males = 0;
    double years = 0;
    for (const Person& p : s.persons) {
        males += p.is_male();
        years += age_years(p, s.time);
    }
    const double frac = males / n;
    const double mean = years / n;
    const double secs = seconds_since(t0);
    const bool ok = std::abs(frac - 0.5) <= 0.0015 && std::abs(mean - 19.95) <= 0.1 && secs < 60.0;
    record(4, ok, "initial gender and age statistics (1e6 persons)",
           fmt("male fraction %.5f (0.5 +- 0.0015), mean age %.4f (19.95 +- 0.1), %.1fs", frac, mean, secs));
}

// ---------------------------------------------------------------- A5 / A9

RunConfig full_run_config(std::uint64_t seed) {
    RunConfig c = default_run_config();
    c.params.initial_pop = 1000;
    c.sim.t0 = 2020;
    c.sim.t_final = 2030;
    c.sim.delta_t = "Daily";
    c.sim.steps_per_year = 365;
    c.sim.seed = seed;
    c.verification = VerificationMode::fail;
    return c;
}

RunResult g_reference_run;

void a5_full_run() {
    const auto t0 = Clock::now();
    g_reference_run = run(full_run_config(1));
    const double secs = seconds_since(t0);

    // The criterion names no seed; a single lucky seed proves little, so a
    // fixed block of seeds is evaluated and every one must be clean.
    std::vector<RunResult> results{g_reference_run};
    auto rest = run_batch(full_run_config(0), 19, 2);
    results.insert(results.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));

    int clean = 0;
    std::string failures;
    std::map<std::string, int> labels;
    for (const RunResult& r : results) {
        if (r.violations.empty() && !r.aborted) {
            ++clean;
            continue;
        }
        std::map<std::string, int> own;
        for (const Violation& v : r.violations) ++own[v.label];
        for (const auto& [label, count] : own) labels[label] += count;
        const std::int64_t at = r.violations.empty() ? -1 : r.violations.front().step;
        failures += fmt(" seed %llu@step %lld;", static_cast<unsigned long long>(r.seed), static_cast<long long>(at));
    }
    std::string label_text;
    for (const auto& [label, count] : labels) label_text += fmt(" %s=%d", label.c_str(), count);

    const bool ok = clean == static_cast<int>(results.size()) && secs < 120.0;
    record(5, ok, "full-run invariant suite (pop 1000, daily, 2020-2030, fail mode)",
           fmt("seeds 1..20: %d clean, %d aborted;%s violations by label:%s; seed-1 run %.1fs, %zu steps", clean,
               static_cast<int>(results.size()) - clean, failures.c_str(), label_text.empty() ? " none" : label_text.c_str(),
               secs, g_reference_run.series.rows.empty() ? std::size_t{0} : g_reference_run.series.rows.size() - 1));
}

void a9_conservation() {
    const auto& rows = g_reference_run.series.rows;
    int bad_balance = 0;
    int bad_houses = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        bad_balance += rows[i].alive - rows[i - 1].alive != rows[i].births - rows[i].deaths;
        bad_houses += rows[i].houses < rows[i - 1].houses;
    }
    const std::size_t steps = rows.empty() ? 0 : rows.size() - 1;
    const bool complete = steps == 3650;
    record(9, bad_balance == 0 && bad_houses == 0 && complete, "conservation over the seed-1 full run",
           fmt("%zu steps checked%s, balance mismatches %d, house-count decreases %d", steps,
               complete ? "" : " (run incomplete)", bad_balance, bad_houses));
}

// ---------------------------------------------------------------- A6

// Attribute values read straight off a WorldState, without snapshots.
struct Direct {
    static bool alive(const WorldState& s, const Person& p) { return p.alive; }
    static bool married(const WorldState&, const Person& p) { return p.partner.has_value(); }
    static std::optional<TownId> town(const WorldState& s, const Person& p) {
        if (!p.house) return std::nullopt;
        return s.houses[p.house->index()].town;
    }
    static std::optional<Location> location(const WorldState& s, const Person& p) {
        if (!p.house) return std::nullopt;
        return s.houses[p.house->index()].local;
    }
    static bool gave_birth(const WorldState& s, const Person& p) {
        if (!p.is_female()) return false;
        return std::any_of(p.children.begin(), p.children.end(),
                           [&](PersonId c) { return s.persons[c.index()].age_steps == 0; });
    }
};

struct Feature {
    RecordPredicate record;
    std::function<bool(const WorldState&, const Person&)> direct;
};

std::vector<Feature> features_for(const WorldState& s) {
    std::vector<Feature> out{
        {records::alive(), Direct::alive},
        {records::married(), Direct::married},
        {records::gave_birth(), Direct::gave_birth},
        {!records::married(), [](const WorldState& w, const Person& p) { return !Direct::married(w, p); }},
    };
    for (const Town& w : s.towns) {
        const TownId id = w.id;
        out.push_back({records::in_town(id), [id](const WorldState& st, const Person& p) { return Direct::town(st, p) == id; }});
    }
    for (const House& h : s.houses) {
        const HouseId id = h.id;
        out.push_back({records::in_house(id), [id](const WorldState&, const Person& p) { return p.house == id; }});
    }
    return out;
}

testing_support::WorldBuilder random_population(Rng& rng) {
    testing_support::WorldBuilder b(1 + static_cast<int>(rng.index(4)), 12);
    std::vector<HouseId> houses;
    const int house_count = 2 + static_cast<int>(rng.index(8));
    for (int i = 0; i < house_count; ++i) {
        houses.push_back(b.house(static_cast<int>(rng.index(b.state().towns.size())), rng.uniform_int(1, 25),
                                 rng.uniform_int(1, 25)));
    }
    const int persons = 2 + static_cast<int>(rng.index(29));
    std::vector<PersonId> singles_m, singles_f;
    for (int i = 0; i < persons; ++i) {
        const Gender g = rng.bernoulli(0.5) ? Gender::male : Gender::female;
        const PersonId id = b.person(g, rng.uniform_int(0, 70 * 12) / 12.0, houses[rng.index(houses.size())]);
        if (is_adult(b.state().person(id), 12)) (g == Gender::male ? singles_m : singles_f).push_back(id);
    }
    while (!singles_m.empty() && !singles_f.empty() && rng.bernoulli(0.6)) {
        const PersonId m = singles_m.back();
        const PersonId f = singles_f.back();
        singles_m.pop_back();
        singles_f.pop_back();
        b.couple(m, f);
        move_person(b.state(), f, *b.state().person(m).house);
    }
    return b;
}

void a6_temporal_operators() {
    ModelParams params;
    params.basic_death_rate = 0.05;
    params.basic_divorce_rate = 0.3;
    params.basic_male_marriage_rate = 0.9;
    ModelData data = default_model_data();
    data.male_marriage_modifier_by_decade.assign(16, 1.0);
    data.divorce_modifier_by_decade.assign(16, 1.0);
    data.fertility = FertilityTable(17, 2000, 35, 1, std::vector<double>(35, 0.6));

    Rng rng(6);
    long cases = 0;
    long mismatches = 0;
    long events = 0;
    int max_persons = 0;
    const std::vector<Attribute> attributes{Attribute::married, Attribute::alive, Attribute::house, Attribute::town,
                                            Attribute::location};
    for (int pop = 0; pop < 500; ++pop) {
        auto builder = random_population(rng);
        WorldState& s = builder.state();
        SnapshotStore snaps;
        snaps.freeze(s);
        const int steps = 1 + static_cast<int>(rng.index(20));
        for (int t = 0; t < steps && s.persons.size() < 50; ++t) {
            const WorldState prev = s; // deep copy: the oracle never touches the snapshot store
            const StepOutcome out = step(s, snaps, params, data, EventOrder{}, rng);
            events += static_cast<long>(out.births.size() + out.deaths.size() + out.marriages.size() +
                                        out.divorces.size() + out.adults_moved.size());
            max_persons = std::max(max_persons, static_cast<int>(s.persons.size()));

            for (const Feature& f : features_for(s)) {
                std::vector<PersonId> want;
                for (const Person& p : s.persons) {
                    const bool now = f.direct(s, p);
                    const bool before = p.id.index() < prev.persons.size() && f.direct(prev, prev.persons[p.id.index()]);
                    if (now && !before) want.push_back(p.id);
                }
                ++cases;
                if (just(f.record, s, snaps).ids() != want) ++mismatches;
            }

            for (const Person& p : s.persons) {
                for (Attribute a : attributes) {
                    ++cases;
                    const bool existed = p.id.index() < prev.persons.size();
                    try {
                        const AttributeValue got = pre(a, p.id, s, snaps);
                        if (!existed) {
                            ++mismatches;
                            continue;
                        }
                        const Person& q = prev.persons[p.id.index()];
                        AttributeValue want;
                        switch (a) {
                        case Attribute::married:
                            want = Direct::married(prev, q);
                            break;
                        case Attribute::alive:
                            want = Direct::alive(prev, q);
                            break;
                        case Attribute::house:
                            want = q.house;
                            break;
                        case Attribute::town:
                            want = Direct::town(prev, q);
                            break;
                        case Attribute::location:
                            want = Direct::location(prev, q);
                            break;
                        }
                        if (!(got == want)) ++mismatches;
                    } catch (const MissingSnapshotError&) {
                        if (existed) ++mismatches;
                    }
                }
            }
        }
    }
    record(6, mismatches == 0 && cases > 0, "just/pre against brute-force previous-state oracle",
           fmt("500 populations (<= 50 persons, max seen %d), %ld comparisons, %ld mismatches, %ld events exercised",
               max_persons, cases, mismatches, events));
}

// ---------------------------------------------------------------- A7

void a7_marriage_weights() {
    struct Case {
        const char* name;
        double got;
        double want;
    };
    // Reference values computed independently to 17 significant digits.
    const std::vector<Case> cases{
        {"geoFactor(1)", geo_factor(1), 0.018315638888734179},
        {"childrenFactor(1,1)", children_factor(1, 1), 0.36787944117144233},
        {"childrenFactor(2,3)", children_factor(2, 3), 2.7182818284590452},
        {"ageFactor(10)", age_factor(10.0), 1.0 / 6.0},
        {"ageFactor(-3)", age_factor(-3.0), 0.5},
    };
    bool ok = true;
    std::string text;
    for (const Case& c : cases) {
        const double rel = std::abs(c.got - c.want) / std::abs(c.want);
        ok = ok && rel <= 1e-12;
        text += fmt("%s=%.17g (rel %.1e) ", c.name, c.got, rel);
    }
    record(7, ok, "marriage weight values", text);
}

// ---------------------------------------------------------------- A8

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string without_timestamp(const std::string& json) {
    std::istringstream in(json);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        if (line.find("\"generated_at\"") != std::string::npos) continue;
        out += line + '\n';
    }
    return out;
}

std::string field(const std::string& json, const std::string& key) {
    const auto k = json.find("\"" + key + "\"");
    if (k == std::string::npos) return {};
    const auto start = json.find('"', json.find(':', k) + 1);
    return json.substr(start + 1, json.find('"', start + 1) - start - 1);
}

void a8_determinism() {
    const fs::path root = fs::temp_directory_path() / "demosim_acceptance_a8";
    fs::remove_all(root);
    fs::create_directories(root);
    {
        std::ofstream(root / "run.cfg") << "initial_pop = 1000\nt_final = 2022\nseed = 42\nverification_mode = warn\n";
    }
    auto cli_run = [&](const std::string& dir, const std::string& seed) {
        std::ostringstream out, err;
        std::vector<std::string> args{"demosim", "run", "-c", (root / "run.cfg").string(), "-o", (root / dir).string()};
        if (!seed.empty()) {
            args.push_back("-s");
            args.push_back(seed);
        }
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    };
    // Same output directory for both runs: out_dir is echoed in the summary.
    const int c1 = cli_run("run", "");
    fs::rename(root / "run", root / "a");
    const int c2 = cli_run("run", "");
    fs::rename(root / "run", root / "b");
    const int c3 = cli_run("c", "43");

    const bool ts_same = slurp(root / "a" / "timeseries.csv") == slurp(root / "b" / "timeseries.csv") &&
                         !slurp(root / "a" / "timeseries.csv").empty();
    const std::string ja = slurp(root / "a" / "summary.json");
    const std::string jb = slurp(root / "b" / "summary.json");
    const std::string jc = slurp(root / "c" / "summary.json");
    const bool json_same = without_timestamp(ja) == without_timestamp(jb) && !ja.empty();
    const std::string da = field(ja, "final_digest");
    const std::string db = field(jb, "final_digest");
    const std::string dc = field(jc, "final_digest");
    const bool digest_same = !da.empty() && da == db;
    const bool seeds_differ = da != dc;
    fs::remove_all(root);

    record(8, c1 == 0 && c2 == 0 && c3 == 0 && ts_same && json_same && digest_same, "determinism",
           fmt("exit codes %d/%d/%d; timeseries.csv identical: %s; summary.json identical except generated_at: %s; "
               "digest %s vs %s; seed 43 digest %s (%s)",
               c1, c2, c3, ts_same ? "yes" : "no", json_same ? "yes" : "no", da.c_str(), db.c_str(), dc.c_str(),
               seeds_differ ? "differs" : "COLLISION, flagged"));
}

// ---------------------------------------------------------------- A10

void a10_deaths_at_scale() {
    const auto t0 = Clock::now();
    const int n = 10000;
    WorldState s;
    s.time.steps_per_year = 365;
    s.towns = build_towns(default_density_map());
    Rng rng(10);
    for (int i = 0; i < n; ++i) {
        const PersonId id = s.add_person(Gender::male, 70 * 365).id;
        move_person(s, id, create_house(s, s.towns[i % s.towns.size()].id, rng));
    }
    SnapshotStore snaps;
    snaps.freeze(s);
    const EventOrder order = EventOrder::parse("ageing,deaths");
    const ModelParams params;
    const ModelData data = default_model_data();
    long deaths = 0;
    for (int t = 0; t < 365; ++t) deaths += static_cast<long>(step(s, snaps, params, data, order, rng).deaths.size());

    const double q = instantaneous(0.031267, 365);
    const double p_year = 1.0 - std::pow(1.0 - q, 365);
    const double mean = n * p_year;
    const double sigma = std::sqrt(n * p_year * (1.0 - p_year));
    const double z = (deaths - mean) / sigma;
    const double secs = seconds_since(t0);
    record(10, std::abs(z) <= 3.0 && secs < 30.0, "deaths among 1e4 males aged 70 over one daily year",
           fmt("observed %ld, expected %.1f +- %.1f (z=%.2f, limit 3), %.1fs", deaths, mean, sigma, z, secs));
}

} // namespace

int main() {
    const auto t0 = Clock::now();
    a1_instantaneous_round_trip();
    a2_death_rates();
    a3_initial_towns();
    a4_initial_statistics();
    a5_full_run();
    a6_temporal_operators();
    a7_marriage_weights();
    a8_determinism();
    a9_conservation();
    a10_deaths_at_scale();

    std::sort(g_results.begin(), g_results.end(), [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
    int passed = 0;
    std::string documented, unexpected;
    for (const Outcome& o : g_results) {
        if (o.pass) {
            ++passed;
        } else if (kDocumentedFailures.count(o.id)) {
            documented += fmt(" A%d", o.id);
        } else {
            unexpected += fmt(" A%d", o.id);
        }
    }
    std::printf("\nsummary: %d/%zu PASS; documented failures:%s; unexpected failures:%s; %.1fs\n", passed,
                g_results.size(), documented.empty() ? " none" : documented.c_str(),
                unexpected.empty() ? " none" : unexpected.c_str(), seconds_since(t0));
    return unexpected.empty() ? 0 : 1;
}
