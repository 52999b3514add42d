// emopt: run EMO/OBEMO benchmark campaigns and emit comparison tables.

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emopt/benchmarks.hpp"
#include "emopt/campaign.hpp"
#include "emopt/kernels.hpp"

namespace {

using namespace emopt;
using campaign::ExitCode;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void print_summary(const campaign::CampaignReport& report) {
    std::printf("%-6s %-7s %22s %12s %14s\n", "func", "algo", "averaged_best", "avg_iters",
                "avg_evals");
    for (const auto& c : report.cells) {
        std::printf("%-6s %-7s %22.10g %12.2f %14.1f\n", c.function_id.c_str(),
                    c.algorithm_id.c_str(), c.aggregate.averaged_best,
                    c.aggregate.averaged_iterations, c.aggregate.averaged_evaluations);
    }
    if (!report.comparisons.empty()) {
        std::printf("\n%-6s %-14s %12s %12s\n", "func", "pair", "p(best)", "p(iters)");
        for (const auto& p : report.comparisons) {
            std::printf("%-6s %-14s %12.4g %12.4g\n", p.function_id.c_str(), p.pair.c_str(),
                        p.best.p_value, p.iterations.p_value);
        }
    }
    for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const campaign::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return ExitCode::kConfigError;
    } catch (const campaign::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return ExitCode::kIoError;
    } catch (const campaign::PartialCampaignError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return ExitCode::kPartialCampaign;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electromagnetism-like optimization with opposition-based learning"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute an experiment campaign");
    std::string config_path, functions, algorithms, out_dir, formats;
    std::size_t runs = 0, max_iters = 0, threads = 0;
    std::uint64_t seed = 0;
    run->add_option("-c,--config", config_path, "JSON campaign config")->check(CLI::ExistingFile);
    run->add_option("--functions", functions, "comma-separated ids or names, e.g. f1,f6");
    run->add_option("--algorithms", algorithms, "comma-separated subset of emo,obemo");
    auto* runs_opt = run->add_option("--runs", runs, "runs per (function, algorithm) cell");
    auto* seed_opt = run->add_option("--seed", seed, "base seed");
    auto* iters_opt = run->add_option("--max-iters", max_iters, "iteration cap for every function");
    auto* threads_opt = run->add_option("--threads", threads, "parallel cells (overrides EMOPT_THREADS)");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--formats", formats, "comma-separated subset of csv,json");

    // verify
    auto* verify = app.add_subcommand("verify", "check every benchmark minimum with an independent oracle");
    std::uint64_t budget = 2'000'000;
    verify->add_option("--budget", budget, "oracle evaluations per function (>= 10000)");

    // table
    auto* table = app.add_subcommand("table", "re-emit tables from stored run records");
    std::string from_dir, table_out;
    table->add_option("--from", from_dir, "directory holding records.json")->required();
    table->add_option("--out", table_out, "output directory (defaults to --from)");

    // list
    auto* list = app.add_subcommand("list", "show the benchmark registry");

    CLI11_PARSE(app, argc, argv);

    if (*run) {
        return guarded([&] {
            campaign::CampaignConfig config =
                config_path.empty() ? campaign::CampaignConfig{} : campaign::load_config(config_path);
            if (!functions.empty()) config.functions = split_list(functions);
            if (!algorithms.empty()) config.algorithms = split_list(algorithms);
            if (*runs_opt) config.runs = runs;
            if (*seed_opt) config.base_seed = seed;
            if (*iters_opt) config.max_iterations = max_iters;
            if (*threads_opt) config.threads = threads;
            if (!out_dir.empty()) config.output_dir = out_dir;
            if (!formats.empty()) {
                config.write_csv = config.write_json = false;
                for (const auto& f : split_list(formats)) {
                    if (f == "csv")
                        config.write_csv = true;
                    else if (f == "json")
                        config.write_json = true;
                    else
                        throw campaign::ConfigError("unknown output format: " + f);
                }
            }
            config.validate();
            std::fprintf(stderr, "kernels: %s, threads: %zu\n",
                         std::string(kernels::active().name).c_str(),
                         campaign::resolve_threads(config));
            const auto report = campaign::run_campaign(config);
            campaign::save_records(report, config.output_dir);
            campaign::emit_tables(report, config.output_dir);
            print_summary(report);
            return static_cast<int>(ExitCode::kOk);
        });
    }

    if (*verify) {
        if (budget < 10000) {
            std::fprintf(stderr, "configuration error: --budget must be at least 10000\n");
            return ExitCode::kConfigError;
        }
        const auto report = bench::verify_minima(bench::registry(), budget);
        std::printf("%-4s %-16s %18s %18s %12s  %s\n", "id", "name", "oracle", "canonical",
                    "published", "status");
        for (std::size_t i = 0; i < report.results.size(); ++i) {
            const auto& r = report.results[i];
            const auto& e = bench::registry()[i];
            std::string status = r.flagged ? "FLAGGED" : "ok";
            if (!r.flagged && !r.matches_reference && r.discrepancy_documented)
                status = "ok (documented discrepancy: " + *e.documented_discrepancy + ")";
            std::printf("%-4s %-16s %18.10f %18.10f %12.6g  %s\n", r.id.c_str(), e.name.c_str(),
                        r.oracle_minimum, r.canonical_minimum, r.reference_minimum, status.c_str());
        }
        std::printf("%s\n", report.ok() ? "all functions verified" : "verification FAILED");
        return report.ok() ? ExitCode::kOk : ExitCode::kVerifyFailed;
    }

    if (*table) {
        return guarded([&] {
            auto report = campaign::load_records(from_dir);
            campaign::emit_tables(report, table_out.empty() ? from_dir : table_out);
            print_summary(report);
            return static_cast<int>(ExitCode::kOk);
        });
    }

    if (*list) {
        std::printf("%-4s %-16s %-26s %4s %14s\n", "id", "name", "title", "dim", "minimum");
        for (const auto& e : bench::registry()) {
            std::printf("%-4s %-16s %-26s %4zu %14.6f\n", e.id.c_str(), e.name.c_str(),
                        e.title.c_str(), e.dims(), e.canonical_minimum);
        }
        return ExitCode::kOk;
    }
    return ExitCode::kOk;
}
