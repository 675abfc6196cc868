#include "demosim/engine.h"

#include "demosim/defaults.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <random>
#include <thread>

namespace demosim {

RunConfig default_run_config() {
    RunConfig c;
    c.data = default_model_data();
    c.density = default_density_map();
    return c;
}

const char* TimeSeries::header() {
    return "step,year,alive,males,females,births,deaths,marriages,divorces,mean_age,houses,empty_houses,"
           "violations";
}

void TimeSeries::write_csv(std::ostream& out) const {
    out << header() << '\n';
    char mean[64];
    for (const TimeSeriesRow& r : rows) {
        std::snprintf(mean, sizeof mean, "%.6f", r.mean_age);
        out << r.step << ',' << r.year << ',' << r.alive << ',' << r.males << ',' << r.females << ',' << r.births
            << ',' << r.deaths << ',' << r.marriages << ',' << r.divorces << ',' << mean << ',' << r.houses << ','
            << r.empty_houses << ',' << r.violations << '\n';
    }
}

namespace {

class Fnv1a {
public:
    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001b3ULL;
        }
    }
    template <typename T>
    void value(T v) {
        bytes(&v, sizeof v);
    }
    void opt(const std::optional<PersonId>& id) { value<std::uint64_t>(id ? id->value + 1ULL : 0ULL); }
    std::uint64_t result() const noexcept { return h_; }

private:
    std::uint64_t h_{0xcbf29ce484222325ULL};
};

} // namespace

std::uint64_t digest(const WorldState& s) {
    // Persons, houses and towns are stored by dense id, so visiting them in
    // id order gives a canonical serialization independent of history.
    Fnv1a h;
    h.value<std::int64_t>(s.time.step_index);
    h.value<std::int32_t>(s.time.t0_year);
    h.value<std::int32_t>(s.time.steps_per_year);
    h.value<std::uint64_t>(s.persons.size());
    for (const Person& p : s.persons) {
        h.value<std::uint32_t>(p.id.value);
        h.value<std::uint8_t>(static_cast<std::uint8_t>(p.gender));
        h.value<std::uint8_t>(p.alive ? 1 : 0);
        h.value<std::int64_t>(p.age_steps);
        h.opt(p.partner);
        h.opt(p.father);
        h.opt(p.mother);
        h.value<std::uint64_t>(p.children.size());
        for (PersonId c : p.children) h.value<std::uint32_t>(c.value);
        h.value<std::uint64_t>(p.former_partners.size());
        for (PersonId c : p.former_partners) h.value<std::uint32_t>(c.value);
        h.value<std::uint64_t>(p.house ? p.house->value + 1ULL : 0ULL);
    }
    h.value<std::uint64_t>(s.houses.size());
    for (const House& house : s.houses) {
        h.value<std::uint32_t>(house.id.value);
        h.value<std::uint32_t>(house.town.value);
        h.value<std::int32_t>(house.local.x);
        h.value<std::int32_t>(house.local.y);
        h.value<std::uint64_t>(house.occupants.size());
        for (PersonId q : house.occupants) h.value<std::uint32_t>(q.value);
    }
    h.value<std::uint64_t>(s.towns.size());
    for (const Town& w : s.towns) {
        h.value<std::uint32_t>(w.id.value);
        h.value<std::int32_t>(w.row);
        h.value<std::int32_t>(w.col);
        h.value<double>(w.density);
        h.value<std::uint64_t>(w.houses.size());
        for (HouseId x : w.houses) h.value<std::uint32_t>(x.value);
    }
    return h.result();
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

namespace {

TimeSeriesRow observe(const WorldState& s, const StepOutcome* outcome, int violations) {
    TimeSeriesRow r;
    r.step = s.time.step_index;
    r.year = s.time.current_year();
    double age_sum = 0.0;
    for (const Person& p : s.persons) {
        if (!p.alive) continue;
        ++r.alive;
        (p.is_male() ? r.males : r.females) += 1;
        age_sum += age_years(p, s.time);
    }
    r.mean_age = r.alive > 0 ? age_sum / r.alive : 0.0;
    r.houses = static_cast<int>(s.houses.size());
    for (const House& h : s.houses) r.empty_houses += h.empty() ? 1 : 0;
    if (outcome) {
        r.births = static_cast<int>(outcome->births.size());
        r.deaths = static_cast<int>(outcome->deaths.size());
        r.marriages = static_cast<int>(outcome->marriages.size());
        r.divorces = static_cast<int>(outcome->divorces.size());
    }
    r.violations = violations;
    return r;
}

} // namespace

RunResult run(const RunConfig& config) {
    validate(config.sim);
    validate(config.params);
    validate(config.data);

    RunResult result;
    result.seed = config.sim.seed ? *config.sim.seed : entropy_seed();
    Rng rng(result.seed);

    SimTime time;
    time.t0_year = config.sim.t0;
    time.steps_per_year = config.sim.steps_per_year;
    WorldState state = initialize(config.density, config.params, time, rng, &result.init);
    SnapshotStore snaps;
    snaps.freeze(state);

    Verifier verifier(config.verification);
    auto finish = [&] {
        result.violations = verifier.violations();
        result.final_digest = digest(state);
        result.final_state = std::move(state);
        return std::move(result);
    };

    std::size_t seen = 0;
    try {
        verifier.on_initial(state);
    } catch (const AssumptionFailure& e) {
        result.series.rows.push_back(observe(state, nullptr, static_cast<int>(verifier.violations().size())));
        result.aborted = true;
        result.abort_reason = e.what();
        return finish();
    }
    seen = verifier.violations().size();
    result.series.rows.push_back(observe(state, nullptr, static_cast<int>(seen)));

    const std::int64_t total = config.sim.total_steps();
    for (std::int64_t t = 0; t < total; ++t) {
        const StepOutcome outcome = step(state, snaps, config.params, config.data, config.order, rng);
        result.totals.births += static_cast<std::int64_t>(outcome.births.size());
        result.totals.deaths += static_cast<std::int64_t>(outcome.deaths.size());
        result.totals.marriages += static_cast<std::int64_t>(outcome.marriages.size());
        result.totals.divorces += static_cast<std::int64_t>(outcome.divorces.size());
        result.totals.adults_moved += static_cast<std::int64_t>(outcome.adults_moved.size());
        result.totals.houses_created += static_cast<std::int64_t>(outcome.houses_created.size());
        bool failed = false;
        try {
            verifier.on_step(state, snaps, outcome);
        } catch (const AssumptionFailure& e) {
            failed = true;
            result.aborted = true;
            result.abort_reason = e.what();
        }
        const auto now = verifier.violations().size();
        result.series.rows.push_back(observe(state, &outcome, static_cast<int>(now - seen)));
        seen = now;
        if (failed) break;
    }
    return finish();
}

std::vector<RunResult> run_batch(const RunConfig& config, int replicates, std::uint64_t base_seed,
                                 unsigned threads) {
    const auto n = static_cast<std::size_t>(std::max(replicates, 0));
    std::vector<RunResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            RunConfig c = config;
            c.sim.seed = base_seed + i;
            try {
                results[i] = run(c);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

} // namespace demosim
