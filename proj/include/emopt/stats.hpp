#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "emopt/emo.hpp"

namespace emopt::stats {

struct AggregateResult {
    std::string function_id;
    std::string algorithm_id;
    std::size_t runs = 0;
    double averaged_best = 0.0;
    double averaged_iterations = 0.0;
    double averaged_evaluations = 0.0;
    std::vector<double> best_values;
    std::vector<std::size_t> iteration_counts;
    /// Trace of the run with the lowest final best (first such run on ties).
    std::vector<double> best_trace;
};

struct WilcoxonResult {
    /// Mann-Whitney U of the first sample.
    double statistic = 0.0;
    double p_value = 1.0;
    bool significant_at_5pct = false;
};

AggregateResult aggregate(const std::vector<RunRecord>& records, std::string function_id,
                          std::string algorithm_id);

/// Two-sided two-sample rank-sum test with mid-ranks for ties. Uses the exact
/// permutation distribution when either sample has fewer than 10 values and
/// the tie- and continuity-corrected normal approximation otherwise.
/// Both samples need at least 5 values.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// Exact conditional permutation test (ties handled through mid-ranks).
WilcoxonResult wilcoxon_rank_sum_exact(std::span<const double> a, std::span<const double> b);

/// Normal approximation with tie and continuity correction.
WilcoxonResult wilcoxon_rank_sum_normal(std::span<const double> a, std::span<const double> b);

/// Best-value test first, iteration-count test second.
std::pair<WilcoxonResult, WilcoxonResult> compare_algorithms(const AggregateResult& a,
                                                             const AggregateResult& b);

}  // namespace emopt::stats
