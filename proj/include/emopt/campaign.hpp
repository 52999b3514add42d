#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emopt/emo.hpp"
#include "emopt/opposition.hpp"
#include "emopt/stats.hpp"

namespace emopt::campaign {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kConfigError = 2,
    kIoError = 3,
    kPartialCampaign = 4,
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PartialCampaignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CampaignConfig {
    std::vector<std::string> functions{"f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9"};
    std::vector<std::string> algorithms{"emo", "obemo"};
    std::size_t runs = 35;
    std::uint64_t base_seed = 20120101;
    EmoParams emo;
    /// When unset, 2000 for the low-dimensional set and 1000 for the
    /// 30-dimensional set.
    std::optional<std::size_t> max_iterations;
    OppositionConfig opposition;
    std::filesystem::path output_dir = "results";
    bool write_csv = true;
    bool write_json = true;
    /// 0 means EMOPT_THREADS or the hardware concurrency.
    std::size_t threads = 0;

    /// Resolves ids to canonical form and checks every field. Throws
    /// ConfigError.
    void validate();
};

/// Reads a JSON config file; missing keys keep their defaults, unknown keys
/// are rejected. Throws ConfigError or IoError.
CampaignConfig load_config(const std::filesystem::path& path);
CampaignConfig parse_config(std::string_view json_text);
std::string config_to_json(const CampaignConfig& config);

/// 64-bit FNV-1a over "<base_seed>/<function>/<algorithm>/<run>", finalized
/// with the SplitMix64 mixer.
std::uint64_t cell_seed(std::uint64_t base_seed, std::string_view function_id,
                        std::string_view algorithm_id, std::size_t run);

/// MAXITER default for a function id.
std::size_t default_max_iterations(std::string_view function_id);

/// Runs a single (function, algorithm, seed) cell.
RunRecord run_single(const CampaignConfig& config, std::string_view function_id,
                     std::string_view algorithm_id, std::uint64_t seed);

struct StoredRun {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    RunRecord record;
};

struct Cell {
    std::string function_id;
    std::string algorithm_id;
    std::vector<StoredRun> runs;
    stats::AggregateResult aggregate;
};

struct PairComparison {
    std::string function_id;
    std::string pair;  // e.g. "obemo_vs_emo"
    stats::WilcoxonResult best;
    stats::WilcoxonResult iterations;
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<Cell> cells;  // function order, then algorithm order
    std::vector<PairComparison> comparisons;
    std::vector<std::string> warnings;

    bool complete() const;
};

/// Thread count from config, then EMOPT_THREADS, then the hardware.
std::size_t resolve_threads(const CampaignConfig& config);

/// Executes every (function, algorithm, run) cell; cells may run on several
/// threads, results are collected in canonical order.
CampaignReport run_campaign(const CampaignConfig& config);

/// Recomputes aggregates and pairwise tests from the stored runs.
void summarize(CampaignReport& report);

/// Writes comparison.csv, wilcoxon.csv, trace_<f>_<a>.csv and, when enabled,
/// report.json. Throws PartialCampaignError when a cell is missing runs and
/// IoError when the directory cannot be written.
void emit_tables(const CampaignReport& report, const std::filesystem::path& dir);

/// Full per-run records (including traces) for later re-emission.
void save_records(const CampaignReport& report, const std::filesystem::path& dir);
CampaignReport load_records(const std::filesystem::path& dir);

std::string csv_escape(std::string_view field);
std::string format_number(double v);

}  // namespace emopt::campaign
