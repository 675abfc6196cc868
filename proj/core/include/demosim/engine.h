#pragma once

#include "demosim/events.h"
#include "demosim/init.h"
#include "demosim/model.h"
#include "demosim/space.h"
#include "demosim/verification.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace demosim {

struct RunConfig {
    SimulationParams sim;
    ModelParams params;
    ModelData data;
    DensityMap density;
    EventOrder order;
    VerificationMode verification{VerificationMode::fail};
    std::filesystem::path out_dir{"out"};
};

/// Default parameters with the embedded data sets.
RunConfig default_run_config();

struct TimeSeriesRow {
    std::int64_t step{0};
    int year{0};
    int alive{0};
    int males{0};
    int females{0};
    int births{0};
    int deaths{0};
    int marriages{0};
    int divorces{0};
    double mean_age{0.0};
    int houses{0};
    int empty_houses{0};
    int violations{0};

    friend bool operator==(const TimeSeriesRow&, const TimeSeriesRow&) = default;
};

struct TimeSeries {
    std::vector<TimeSeriesRow> rows;

    static const char* header();
    /// Fixed header, one line per row, mean age with 6 decimals.
    void write_csv(std::ostream& out) const;
};

/// Order-independent 64-bit content hash (FNV-1a over a canonical
/// serialization of persons, houses, towns and the clock).
std::uint64_t digest(const WorldState& state);

struct RunTotals {
    std::int64_t births{0};
    std::int64_t deaths{0};
    std::int64_t marriages{0};
    std::int64_t divorces{0};
    std::int64_t adults_moved{0};
    std::int64_t houses_created{0};
};

struct RunResult {
    std::uint64_t seed{0};
    TimeSeries series;
    std::uint64_t final_digest{0};
    std::vector<Violation> violations;
    InitReport init;
    RunTotals totals;
    WorldState final_state;
    /// Set when a fail-mode assumption check stopped the run early.
    bool aborted{false};
    std::string abort_reason;
};

/// Draws a seed from std::random_device.
std::uint64_t entropy_seed();

/// Executes init, the initial checks and every step to t_final. In fail
/// mode an assumption violation ends the run with `aborted` set; the
/// partial result is still returned.
RunResult run(const RunConfig& config);

/// Independent replicates with seeds base_seed + i, run on up to `threads`
/// worker threads (0 = hardware concurrency). Results are in replicate
/// order.
std::vector<RunResult> run_batch(const RunConfig& config, int replicates, std::uint64_t base_seed,
                                 unsigned threads = 0);

} // namespace demosim
