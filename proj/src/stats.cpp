#include "emopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace emopt::stats {

namespace {

constexpr std::size_t kMinSample = 5;
constexpr std::size_t kNormalFrom = 10;

struct Ranking {
    std::vector<double> ranks;  // mid-ranks, first |a| entries belong to a
    double tie_term = 0.0;      // sum over tie groups of t^3 - t
};

Ranking rank_pooled(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size() + b.size();
    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    for (double v : pooled) {
        if (std::isnan(v)) throw std::invalid_argument("wilcoxon: NaN in sample");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

    Ranking r;
    r.ranks.resize(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r.ranks[order[k]] = mid;
        const double t = static_cast<double>(j - i + 1);
        r.tie_term += t * t * t - t;
        i = j + 1;
    }
    return r;
}

void check_sizes(std::span<const double> a, std::span<const double> b) {
    if (a.size() < kMinSample || b.size() < kMinSample)
        throw std::invalid_argument("wilcoxon: each sample needs at least 5 values");
}

double rank_sum_a(const Ranking& r, std::size_t na) {
    return std::accumulate(r.ranks.begin(), r.ranks.begin() + static_cast<std::ptrdiff_t>(na), 0.0);
}

WilcoxonResult finish(double u, double p) {
    WilcoxonResult res;
    res.statistic = u;
    res.p_value = std::clamp(p, 0.0, 1.0);
    res.significant_at_5pct = res.p_value < 0.05;
    return res;
}

}  // namespace

WilcoxonResult wilcoxon_rank_sum_exact(std::span<const double> a, std::span<const double> b) {
    check_sizes(a, b);
    const Ranking r = rank_pooled(a, b);
    const std::size_t na = a.size(), n = r.ranks.size();

    // Mid-ranks are multiples of 1/2, so doubled ranks are integers and the
    // permutation distribution of the rank sum can be counted exactly.
    std::vector<std::size_t> doubled(n);
    for (std::size_t i = 0; i < n; ++i) doubled[i] = static_cast<std::size_t>(std::lround(2.0 * r.ranks[i]));
    const std::size_t max_sum = std::accumulate(doubled.begin(), doubled.end(), std::size_t{0});

    // ways[k][s]: subsets of size k whose doubled rank sum is s.
    std::vector<std::vector<long double>> ways(na + 1, std::vector<long double>(max_sum + 1, 0.0L));
    ways[0][0] = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t v = doubled[i];
        for (std::size_t k = std::min(na, i + 1); k >= 1; --k) {
            auto& dst = ways[k];
            const auto& src = ways[k - 1];
            for (std::size_t s = max_sum; s >= v; --s) {
                dst[s] += src[s - v];
                if (s == v) break;
            }
        }
    }

    const long double expected = static_cast<long double>(na) * static_cast<long double>(n + 1);
    std::size_t observed = 0;
    for (std::size_t i = 0; i < na; ++i) observed += doubled[i];
    const long double distance = std::fabs(static_cast<long double>(observed) - expected);

    long double total = 0.0L, extreme = 0.0L;
    for (std::size_t s = 0; s <= max_sum; ++s) {
        const long double w = ways[na][s];
        if (w == 0.0L) continue;
        total += w;
        // Doubled sums are integers, so a small slack is exact.
        if (std::fabs(static_cast<long double>(s) - expected) >= distance - 1e-9L) extreme += w;
    }
    const double u = rank_sum_a(r, na) - 0.5 * static_cast<double>(na * (na + 1));
    return finish(u, static_cast<double>(extreme / total));
}

WilcoxonResult wilcoxon_rank_sum_normal(std::span<const double> a, std::span<const double> b) {
    check_sizes(a, b);
    const Ranking r = rank_pooled(a, b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double n = na + nb;

    const double u = rank_sum_a(r, a.size()) - 0.5 * na * (na + 1.0);
    const double mean = 0.5 * na * nb;
    const double variance = na * nb / 12.0 * ((n + 1.0) - r.tie_term / (n * (n - 1.0)));
    if (!(variance > 0.0)) return finish(u, 1.0);

    const double z = std::max(0.0, std::fabs(u - mean) - 0.5) / std::sqrt(variance);
    return finish(u, std::erfc(z / std::sqrt(2.0)));
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    check_sizes(a, b);
    if (a.size() < kNormalFrom || b.size() < kNormalFrom) return wilcoxon_rank_sum_exact(a, b);
    return wilcoxon_rank_sum_normal(a, b);
}

AggregateResult aggregate(const std::vector<RunRecord>& records, std::string function_id,
                          std::string algorithm_id) {
    if (records.empty()) throw std::invalid_argument("aggregate: no run records");
    AggregateResult out;
    out.function_id = std::move(function_id);
    out.algorithm_id = std::move(algorithm_id);
    out.runs = records.size();

    double best_sum = 0.0, iter_sum = 0.0, eval_sum = 0.0;
    std::size_t best_run = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RunRecord& r = records[i];
        out.best_values.push_back(r.best.fitness);
        out.iteration_counts.push_back(r.iterations);
        best_sum += r.best.fitness;
        iter_sum += static_cast<double>(r.iterations);
        eval_sum += static_cast<double>(r.evaluations);
        if (r.best.fitness < records[best_run].best.fitness) best_run = i;
    }
    const double runs = static_cast<double>(records.size());
    out.averaged_best = best_sum / runs;
    out.averaged_iterations = iter_sum / runs;
    out.averaged_evaluations = eval_sum / runs;
    out.best_trace = records[best_run].best_trace;
    return out;
}

std::pair<WilcoxonResult, WilcoxonResult> compare_algorithms(const AggregateResult& a,
                                                             const AggregateResult& b) {
    if (a.function_id != b.function_id)
        throw std::invalid_argument("compare_algorithms: function ids differ (" + a.function_id +
                                    " vs " + b.function_id + ")");
    if (a.runs != b.runs) throw std::invalid_argument("compare_algorithms: run counts differ");
    auto as_double = [](const std::vector<std::size_t>& v) {
        return std::vector<double>(v.begin(), v.end());
    };
    const auto ia = as_double(a.iteration_counts);
    const auto ib = as_double(b.iteration_counts);
    return {wilcoxon_rank_sum(a.best_values, b.best_values), wilcoxon_rank_sum(ia, ib)};
}

}  // namespace emopt::stats
