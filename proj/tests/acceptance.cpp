// Acceptance gate: runs the seven end-to-end criteria and prints one
// PASS/FAIL line per criterion. Exit status is non-zero when any fails.
//
//   acceptance            all criteria
//   acceptance 1 5 7      a subset

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "emopt/benchmarks.hpp"
#include "emopt/campaign.hpp"
#include "emopt/kernels.hpp"
#include "emopt/opposition.hpp"
#include "emopt/stats.hpp"

using namespace emopt;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and thresholds.
struct AccuracyTarget {
    const char* id;
    double minimum;
    double tolerance;
};
constexpr AccuracyTarget kAccuracy[] = {
    {"f1", 0.397887, 5e-3},
    {"f3", 3.0, 5e-2},
    {"f6", -10.1532, 0.15},
    {"f9", -186.73, 0.5},
};
constexpr double kIterationRatioLow = 0.8;
constexpr std::size_t kRequiredOfNine = 7;
constexpr double kSignificance = 0.05;
constexpr double kHighDimBest = 1e-3;
constexpr double kIterationRatioHigh = 0.6;
constexpr std::uint64_t kOracleBudget = 2'000'000;
constexpr double kOracleTolerance = 1e-3;
constexpr std::size_t kRuns = 35;

const std::vector<std::string> kLowDim{"f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9"};
const std::vector<std::string> kHighDim{"f10", "f11", "f12", "f13", "f14"};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

campaign::CampaignReport campaign_for(const std::vector<std::string>& functions) {
    campaign::CampaignConfig c;
    c.functions = functions;
    c.runs = kRuns;
    return campaign::run_campaign(c);
}

const campaign::CampaignReport& low_dim_report() {
    static const auto report = campaign_for(kLowDim);
    return report;
}

const stats::AggregateResult& cell(const campaign::CampaignReport& r, const std::string& f,
                                   const std::string& a) {
    for (const auto& c : r.cells)
        if (c.function_id == f && c.algorithm_id == a) return c.aggregate;
    throw std::runtime_error("missing cell " + f + "/" + a);
}

const campaign::PairComparison& comparison(const campaign::CampaignReport& r, const std::string& f) {
    for (const auto& p : r.comparisons)
        if (p.function_id == f) return p;
    throw std::runtime_error("missing comparison for " + f);
}

Outcome criterion_accuracy() {
    const auto& r = low_dim_report();
    Outcome o{true, ""};
    for (const auto& t : kAccuracy) {
        const double avg = cell(r, t.id, "obemo").averaged_best;
        const double gap = std::fabs(avg - t.minimum);
        o.pass = o.pass && gap < t.tolerance;
        o.detail += fmt("%s avg %.6g (|gap| %.3g < %g) ", t.id, avg, gap, t.tolerance);
    }
    return o;
}

Outcome criterion_acceleration() {
    const auto& r = low_dim_report();
    std::size_t fast = 0, significant = 0;
    std::string detail;
    for (const auto& f : kLowDim) {
        const double ratio =
            cell(r, f, "obemo").averaged_iterations / cell(r, f, "emo").averaged_iterations;
        const double p = comparison(r, f).iterations.p_value;
        fast += ratio <= kIterationRatioLow;
        significant += p < kSignificance;
        detail += fmt("%s %.2f/p=%.2g ", f.c_str(), ratio, p);
    }
    return {fast >= kRequiredOfNine && significant >= kRequiredOfNine,
            fmt("ratio<=%.1f on %zu/9, p<%.2f on %zu/9 (need %zu): ", kIterationRatioLow, fast,
                kSignificance, significant, kRequiredOfNine) +
                detail};
}

Outcome criterion_no_degradation() {
    const auto& r = low_dim_report();
    std::size_t same = 0;
    std::string detail;
    for (const auto& f : kLowDim) {
        const double p = comparison(r, f).best.p_value;
        same += p > kSignificance;
        detail += fmt("%s p=%.2g ", f.c_str(), p);
    }
    return {same >= kRequiredOfNine,
            fmt("best-value p>%.2f on %zu/9 (need %zu): ", kSignificance, same, kRequiredOfNine) +
                detail};
}

Outcome criterion_high_dim() {
    const auto r = campaign_for(kHighDim);
    Outcome o{true, ""};
    for (const auto& f : kHighDim) {
        const auto& ob = cell(r, f, "obemo");
        const auto& em = cell(r, f, "emo");
        const double ratio = ob.averaged_iterations / em.averaged_iterations;
        const double p = comparison(r, f).iterations.p_value;
        const bool ok = ob.averaged_best <= kHighDimBest && ratio <= kIterationRatioHigh &&
                        p < kSignificance;
        o.pass = o.pass && ok;
        o.detail += fmt("%s best %.2e ratio %.2f p=%.2g%s ", f.c_str(), ob.averaged_best, ratio,
                        p, ok ? "" : " (miss)");
    }
    return o;
}

Outcome criterion_oracle() {
    const auto report = bench::verify_minima(bench::registry(), kOracleBudget);
    Outcome o{report.ok(), ""};
    const std::set<std::string> must_match{"f1", "f3", "f4", "f6", "f7", "f8", "f9", "f10"};
    for (const auto& r : report.results) {
        const bool canonical = std::fabs(r.oracle_minimum - r.canonical_minimum) <= kOracleTolerance;
        const bool published = std::fabs(r.oracle_minimum - r.reference_minimum) <= kOracleTolerance;
        if (!canonical) o.pass = false;
        if (must_match.count(r.id) && !published) o.pass = false;
        if (r.id == "f5" && !(r.discrepancy_documented && !published)) o.pass = false;
        if (!canonical || r.discrepancy_documented || (must_match.count(r.id) && !published))
            o.detail += fmt("%s oracle %.6f canonical %.6f published %.6g%s ", r.id.c_str(),
                            r.oracle_minimum, r.canonical_minimum, r.reference_minimum,
                            r.discrepancy_documented ? " (documented)" : "");
    }
    o.detail = fmt("%zu functions, budget %llu: ", report.results.size(),
                   static_cast<unsigned long long>(kOracleBudget)) + o.detail;
    return o;
}

// Compact re-run of the invariant suites; each returns the number of
// violations.
std::size_t involution_and_closure() {
    std::size_t bad = 0;
    RngStream rng(1);
    for (const auto& e : bench::registry()) {
        const auto& s = e.space;
        for (int t = 0; t < 10000; ++t) {
            Vector x(s.dims());
            for (std::size_t d = 0; d < s.dims(); ++d)
                x[d] = std::min(s.lower(d) + rng.uniform() * s.width(d), s.upper(d));
            const Vector o = opposite_point(s, x);
            const Vector back = opposite_point(s, o);
            if (!s.contains(o)) ++bad;
            for (std::size_t d = 0; d < s.dims(); ++d)
                if (std::fabs(back[d] - x[d]) > 4.0 * std::ldexp(s.width(d), -52)) ++bad;
        }
    }
    return bad;
}

std::size_t charges_forces_move() {
    std::size_t bad = 0;
    RngStream rng(2);
    EmoParams params;
    for (int t = 0; t < 1000; ++t) {
        const auto& e = bench::registry()[t % 14];
        auto obj = e.objective();
        Population pop = initialize(e.space, 2 + t % 49, rng, obj);
        compute_charges(pop, e.dims());
        for (const auto& p : pop.members) {
            if (!(p.charge > 0.0 && p.charge <= 1.0)) ++bad;
            if ((p.charge == 1.0) != (p.fitness == pop.best().fitness)) ++bad;
        }
        const auto forces = compute_forces(pop);
        for (const auto& f : forces) {
            const double n = std::sqrt(kernels::squared_norm(f.normalized));
            if (!(n == 0.0 || std::fabs(n - 1.0) < 1e-12)) ++bad;
        }
        const std::size_t best = pop.best_index;
        const Vector before = pop.members[best].position;
        move(pop, forces, params, rng, obj);
        if (pop.members[best].position != before) ++bad;
        for (const auto& p : pop.members)
            if (!e.space.contains(p.position)) ++bad;
    }
    return bad;
}

std::size_t monotone_elitist_degenerate() {
    std::size_t bad = 0;
    EmoParams params;
    params.max_iterations = 40;
    OppositionConfig off;
    off.use_opposed_init = off.use_generation_jump = false;
    auto monotone = [&](const RunRecord& r) {
        double prev = r.initial_best;
        for (double v : r.best_trace) {
            if (v > prev) ++bad;
            prev = v;
        }
    };
    for (std::size_t i = 0; i < bench::registry().size(); ++i) {
        const auto& e = bench::registry()[i];
        auto o1 = e.objective(), o2 = e.objective(), o3 = e.objective();
        RngStream r1(i), r2(i), r3(i);
        const auto emo = run_emo(o1, params, r1);
        const auto same = run_obemo(o2, params, off, r2);
        const auto obemo = run_obemo(o3, params, OppositionConfig{}, r3);
        monotone(emo);
        monotone(obemo);
        if (emo.best_trace != same.best_trace || emo.best.position != same.best.position ||
            emo.evaluations != same.evaluations)
            ++bad;

        RngStream rng(100 + i);
        const Population pop = initialize(e.space, 20, rng, o1);
        const Population opp = opposed_population(e.space, pop, o1);
        const Population kept = obl_select(pop, opp, pop.size());
        if (kept.best().fitness != std::min(pop.best().fitness, opp.best().fitness)) ++bad;
    }
    return bad;
}

double brute_force_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size();
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        double less = 0, equal = 0;
        for (double v : pooled) {
            less += v < pooled[i];
            equal += v == pooled[i];
        }
        rank[i] = less + (equal + 1.0) / 2.0;
    }
    const double expected = static_cast<double>(a.size()) * (static_cast<double>(n) + 1.0) / 2.0;
    double observed = 0;
    for (std::size_t i = 0; i < a.size(); ++i) observed += rank[i];
    std::size_t total = 0, extreme = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != a.size()) continue;
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) s += rank[i];
        ++total;
        extreme += std::fabs(s - expected) >= std::fabs(observed - expected) - 1e-9;
    }
    return static_cast<double>(extreme) / static_cast<double>(total);
}

std::size_t wilcoxon_enumeration() {
    std::size_t bad = 0;
    RngStream rng(3);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> a(5 + t % 4), b(5 + (t / 4) % 4);
        for (auto& v : a) v = std::floor(rng.uniform() * 8.0);
        for (auto& v : b) v = std::floor(rng.uniform() * 8.0 + t % 3);
        if (std::fabs(stats::wilcoxon_rank_sum(a, b).p_value - brute_force_p(a, b)) > 1e-12) ++bad;
    }
    return bad;
}

Outcome criterion_properties() {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t a = involution_and_closure();
    const std::size_t b = charges_forces_move();
    const std::size_t c = monotone_elitist_degenerate();
    const std::size_t d = wilcoxon_enumeration();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    constexpr double kBudgetSeconds = 10.0;
    return {a + b + c + d == 0 && secs < kBudgetSeconds,
            fmt("violations: opposition %zu, charge/force/move %zu, trace/elitism/degeneration "
                "%zu, wilcoxon %zu; %.1fs (< %.0fs)",
                a, b, c, d, secs, kBudgetSeconds)};
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".csv") continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        out[e.path().filename().string()] = s.str();
    }
    return out;
}

Outcome criterion_determinism() {
    campaign::CampaignConfig c;
    c.functions = {"f1", "f4", "f6", "f9"};
    c.runs = 8;
    c.max_iterations = 60;
    const fs::path root = fs::temp_directory_path() / "emopt_acceptance_determinism";
    fs::remove_all(root);

    std::vector<std::map<std::string, std::string>> outputs;
    for (std::size_t threads : {1, 4, 4}) {
        c.threads = threads;
        const fs::path dir = root / std::to_string(outputs.size());
        const auto report = campaign::run_campaign(c);
        campaign::emit_tables(report, dir);
        campaign::save_records(report, dir);
        outputs.push_back(read_dir(dir));
    }
    fs::remove_all(root);
    const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
    return {same && !outputs[0].empty(),
            fmt("%zu CSV files compared across runs with 1, 4 and 4 threads", outputs[0].size())};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"accuracy on the original set", criterion_accuracy},
        {"acceleration on the original set", criterion_acceleration},
        {"no accuracy degradation", criterion_no_degradation},
        {"multidimensional set", criterion_high_dim},
        {"benchmark oracle suite", criterion_oracle},
        {"property suites", criterion_properties},
        {"determinism", criterion_determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    std::printf("kernels: %s\n", std::string(kernels::active().name).c_str());
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(number)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d (%s): %s [%.1fs] %s\n", number, criteria[i].first,
                    o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
